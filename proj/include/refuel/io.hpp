#ifndef REFUEL_IO_HPP
#define REFUEL_IO_HPP

#include "refuel/core.hpp"
#include "refuel/dominance.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace refuel {

// Instance files:
//   { "meta": { "n": int, "sigma": real, "seed": int },
//     "jobs": [ { "id": int, "p": int, "w": real }, ... ] }
// Doubles are written in shortest round-trip form.

inline nlohmann::ordered_json instance_to_json(const Instance& inst) {
    nlohmann::ordered_json doc;
    doc["meta"]["n"] = inst.size();
    doc["meta"]["sigma"] = inst.meta().sigma;
    doc["meta"]["seed"] = inst.meta().seed;
    auto& jobs = doc["jobs"] = nlohmann::ordered_json::array();
    for (const Job& j : inst.jobs()) jobs.push_back({{"id", j.id}, {"p", j.p}, {"w", j.w}});
    return doc;
}

inline Instance instance_from_json(const nlohmann::json& doc) {
    try {
        InstanceMeta meta;
        if (doc.contains("meta")) {
            const auto& m = doc.at("meta");
            meta.sigma = m.value("sigma", 0.0);
            meta.seed = m.value("seed", std::uint64_t{0});
        }
        std::vector<Job> jobs;
        for (const auto& j : doc.at("jobs")) {
            const auto& p = j.at("p");
            if (!p.is_number_integer()) throw invalid_instance("processing time must be an integer");
            jobs.push_back({j.at("id").get<JobId>(), p.get<Time>(), j.at("w").get<double>()});
        }
        Instance inst(std::move(jobs), meta);
        if (doc.contains("meta") && doc["meta"].contains("n") && doc["meta"]["n"].get<std::size_t>() != inst.size())
            throw invalid_instance("meta.n does not match the number of jobs");
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_instance(std::string("malformed instance: ") + e.what());
    }
}

inline std::string instance_to_string(const Instance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

inline Instance instance_from_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_instance(std::string("malformed instance: ") + e.what());
    }
    return instance_from_json(doc);
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write " + path.string());
    out << text;
    if (!out.flush()) throw io_error("write failed for " + path.string());
}

inline Instance load_instance(const std::filesystem::path& path) {
    const std::string text = read_text(path);
    try {
        return instance_from_string(text);
    } catch (const invalid_instance& e) {
        throw invalid_instance(path.string() + ": " + e.what());
    }
}

inline void save_instance(const std::filesystem::path& path, const Instance& inst) {
    write_text(path, instance_to_string(inst));
}

inline nlohmann::ordered_json violations_to_json(const PotentialCheck& check) {
    nlohmann::ordered_json doc;
    doc["valid"] = check.valid;
    auto& list = doc["violations"] = nlohmann::ordered_json::array();
    for (const Violation& v : check.violations)
        list.push_back({{"earlier", v.earlier}, {"later", v.later}, {"reason", std::string(to_string(v.reason))}});
    return doc;
}

/// Splits one line of comma-separated text. Fields never contain commas.
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace refuel

#endif
