#ifndef REFUEL_GEN_HPP
#define REFUEL_GEN_HPP

#include "refuel/core.hpp"
#include "refuel/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace refuel {

/// Random instances with p uniform on {1..100} and w = 2^x p, x ~ N(0, sigma^2).
struct GenSpec {
    std::size_t n = 10;
    double sigma = 0.1;
    std::uint64_t seed = 0;
    std::size_t count = 1;
};

inline void validate(const GenSpec& spec) {
    if (spec.n < 1) throw error("generator: n must be >= 1");
    if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) throw error("generator: sigma must be >= 0");
    if (spec.count < 1) throw error("generator: count must be >= 1");
}

inline constexpr Time min_processing_time = 1;
inline constexpr Time max_processing_time = 100;

/// Engine for instance `index` of a seed: mt19937_64 keyed through seed_seq
/// by the four 32-bit halves of (seed, index). Draws per job, in id order:
/// p from uniform_int_distribution, then x from normal_distribution (skipped
/// when sigma = 0). Distributions are the standard library's, so streams are
/// reproducible per standard-library implementation.
inline std::mt19937_64 instance_engine(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

inline Instance generate_instance(const GenSpec& spec, std::uint64_t index) {
    validate(spec);
    std::mt19937_64 rng = instance_engine(spec.seed, index);
    std::uniform_int_distribution<Time> processing(min_processing_time, max_processing_time);
    std::optional<std::normal_distribution<double>> exponent;
    if (spec.sigma > 0.0) exponent.emplace(0.0, spec.sigma);

    std::vector<Job> jobs;
    jobs.reserve(spec.n);
    for (std::size_t k = 0; k < spec.n; ++k) {
        const Time p = processing(rng);
        const double x = exponent ? (*exponent)(rng) : 0.0;
        jobs.push_back({static_cast<JobId>(k), p, std::exp2(x) * static_cast<double>(p)});
    }
    return Instance(std::move(jobs), {spec.sigma, spec.seed});
}

enum class DatasetKind { s1, s2, s3, custom };

inline std::string_view to_string(DatasetKind k) noexcept {
    switch (k) {
        case DatasetKind::s1: return "S1";
        case DatasetKind::s2: return "S2";
        case DatasetKind::s3: return "S3";
        case DatasetKind::custom: return "custom";
    }
    return "custom";
}

inline std::optional<DatasetKind> parse_dataset_kind(std::string_view s) {
    if (s == "S1" || s == "s1") return DatasetKind::s1;
    if (s == "S2" || s == "s2") return DatasetKind::s2;
    if (s == "S3" || s == "s3") return DatasetKind::s3;
    if (s == "custom") return DatasetKind::custom;
    return std::nullopt;
}

struct ManifestEntry {
    std::size_t n = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    std::filesystem::path path;
};

using Manifest = std::vector<ManifestEntry>;

/// One planned instance of a dataset (before files exist).
struct PlannedInstance {
    std::size_t n = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
};

/// 0.100, 0.101, ..., 1.000
inline std::vector<double> fine_sigma_grid() {
    std::vector<double> out;
    for (int k = 100; k <= 1000; ++k) out.push_back(k / 1000.0);
    return out;
}

inline std::size_t scaled(std::size_t x, double scale) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(static_cast<double>(x) * scale - 1e-9)));
}

/// Configurations of the published datasets with job counts and instances
/// per configuration multiplied by `scale` (rounded up, at least 1):
///   S1: n in {10, 20, ..., 140}, sigma = 0.1, 50 instances each
///   S2: n in {100, 500, 1000, 2000, 3000}, sigma on the fine grid, 1 each
///   S3: n = 500, sigma on the fine grid, 5 each
/// `custom` takes the explicit spec list as is, each with its own seed.
/// Indices run over the whole dataset.
inline std::vector<PlannedInstance> plan_dataset(DatasetKind kind, double scale, std::uint64_t seed,
                                                 const std::vector<GenSpec>& custom = {}) {
    if (!(scale > 0.0)) throw error("dataset: scale must be positive");
    std::vector<PlannedInstance> plan;
    auto add = [&](std::size_t n, double sigma, std::size_t count, std::uint64_t s = 0) {
        for (std::size_t c = 0; c < count; ++c) plan.push_back({n, sigma, s, plan.size()});
    };
    switch (kind) {
        case DatasetKind::s1:
            for (std::size_t n = 10; n <= 140; n += 10) add(scaled(n, scale), 0.1, scaled(50, scale), seed);
            break;
        case DatasetKind::s2:
            for (std::size_t n : {100, 500, 1000, 2000, 3000})
                for (double s : fine_sigma_grid()) add(scaled(n, scale), s, scaled(1, scale), seed);
            break;
        case DatasetKind::s3:
            for (double s : fine_sigma_grid()) add(scaled(500, scale), s, scaled(5, scale), seed);
            break;
        case DatasetKind::custom:
            for (const GenSpec& g : custom) {
                validate(g);
                add(g.n, g.sigma, g.count, g.seed);
            }
            break;
    }
    return plan;
}

inline std::string format_fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

inline std::string instance_file_name(std::string_view prefix, const PlannedInstance& p) {
    char idx[32];
    std::snprintf(idx, sizeof idx, "%06llu", static_cast<unsigned long long>(p.index));
    return std::string(prefix) + "_n" + std::to_string(p.n) + "_s" + format_fixed(p.sigma, 3) + "_" + idx + ".json";
}

inline std::string manifest_to_csv(const Manifest& m) {
    std::string out = "n,sigma,seed,index,path\n";
    for (const auto& e : m)
        out += std::to_string(e.n) + "," + format_double(e.sigma) + "," + std::to_string(e.seed) + "," +
               std::to_string(e.index) + "," + e.path.generic_string() + "\n";
    return out;
}

/// Reads a manifest; relative paths resolve against the manifest's directory.
inline Manifest load_manifest(const std::filesystem::path& file) {
    std::istringstream in(read_text(file));
    std::string line;
    if (!std::getline(in, line) || line.rfind("n,sigma,seed,index,path", 0) != 0)
        throw io_error(file.string() + ": missing manifest header");
    Manifest m;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5) throw io_error(file.string() + ": bad manifest row: " + line);
        ManifestEntry e;
        try {
            e.n = std::stoull(f[0]);
            e.sigma = std::stod(f[1]);
            e.seed = std::stoull(f[2]);
            e.index = std::stoull(f[3]);
        } catch (const std::exception&) {
            throw io_error(file.string() + ": bad manifest row: " + line);
        }
        e.path = f[4];
        if (e.path.is_relative()) e.path = file.parent_path() / e.path;
        m.push_back(std::move(e));
    }
    return m;
}

/// Writes every planned instance into `out_dir` plus `manifest.csv` listing
/// them with paths relative to `out_dir`.
inline Manifest generate_dataset(DatasetKind kind, double scale, std::uint64_t seed, const std::filesystem::path& out_dir,
                                 const std::vector<GenSpec>& custom = {}) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create " + out_dir.string() + ": " + ec.message());

    Manifest rel;
    for (const PlannedInstance& p : plan_dataset(kind, scale, seed, custom)) {
        const Instance inst = generate_instance({p.n, p.sigma, p.seed, 1}, p.index);
        const std::string name = instance_file_name(to_string(kind), p);
        save_instance(out_dir / name, inst);
        rel.push_back({p.n, p.sigma, p.seed, p.index, name});
    }
    write_text(out_dir / "manifest.csv", manifest_to_csv(rel));

    Manifest abs = rel;
    for (auto& e : abs) e.path = out_dir / e.path;
    return abs;
}

}  // namespace refuel

#endif
