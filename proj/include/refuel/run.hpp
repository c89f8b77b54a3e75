#ifndef REFUEL_RUN_HPP
#define REFUEL_RUN_HPP

#include "refuel/baselines.hpp"
#include "refuel/core.hpp"
#include "refuel/solver.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace refuel {

enum class Algo { fast, astar, brute, greedy };

inline constexpr std::string_view to_string(Algo a) noexcept {
    switch (a) {
        case Algo::fast: return "fast";
        case Algo::astar: return "astar";
        case Algo::brute: return "brute";
        case Algo::greedy: return "greedy";
    }
    return "fast";
}

inline std::optional<Algo> parse_algo(std::string_view s) {
    if (s == "fast") return Algo::fast;
    if (s == "astar") return Algo::astar;
    if (s == "brute") return Algo::brute;
    if (s == "greedy") return Algo::greedy;
    return std::nullopt;
}

inline std::optional<NumericMode> parse_mode(std::string_view s) {
    if (s == "fast") return NumericMode::fast;
    if (s == "exact") return NumericMode::exact;
    return std::nullopt;
}

struct RunOptions {
    bool prune = false;
    bool bound = false;
    bool override_size_guard = false;
    std::optional<double> timeout_s;
};

/// A SolveReport with the numeric type erased. `payoff_exact` is set in
/// exact mode.
struct RunReport {
    Algo algo = Algo::fast;
    NumericMode mode = NumericMode::fast;
    double payoff = 0.0;
    std::optional<std::string> payoff_exact;
    std::vector<JobId> order;
    std::optional<std::uint64_t> leaves;
    std::uint64_t branches = 0;
    std::uint64_t nodes = 0;
    std::chrono::nanoseconds elapsed{0};

    double elapsed_ms() const { return std::chrono::duration<double, std::milli>(elapsed).count(); }
    double elapsed_s() const { return std::chrono::duration<double>(elapsed).count(); }
};

template <Number N>
RunReport erase(const SolveReport<N>& rep, Algo algo) {
    RunReport out;
    out.algo = algo;
    out.mode = numeric_traits<N>::mode;
    out.payoff = to_double(rep.payoff);
    if constexpr (std::is_same_v<N, Rational>) out.payoff_exact = to_exact_string(rep.payoff);
    out.order = rep.order;
    if (algo == Algo::fast) out.leaves = rep.leaves;
    out.branches = rep.branches;
    out.nodes = rep.nodes;
    out.elapsed = rep.elapsed;
    return out;
}

template <Number N>
SolveReport<N> solve_as(const Instance& inst, Algo algo, const RunOptions& opts) {
    Deadline deadline = opts.timeout_s ? Deadline::after(*opts.timeout_s) : Deadline{};
    switch (algo) {
        case Algo::fast: {
            SolveOptions so;
            so.bound = opts.bound;
            so.deadline = deadline;
            return fast_schedule<N>(inst, std::move(so));
        }
        case Algo::astar: {
            AStarOptions ao;
            ao.prune = opts.prune;
            ao.override_size_guard = opts.override_size_guard;
            ao.deadline = deadline;
            return astar<N>(inst, ao);
        }
        case Algo::brute:
            return brute_force<N>(inst, {opts.override_size_guard, deadline});
        case Algo::greedy:
            return greedy_report<N>(inst);
    }
    throw error("unknown algorithm");
}

inline RunReport solve(const Instance& inst, Algo algo, NumericMode mode, const RunOptions& opts = {}) {
    if (mode == NumericMode::exact) return erase(solve_as<Rational>(inst, algo, opts), algo);
    return erase(solve_as<double>(inst, algo, opts), algo);
}

/// Fields: algo, mode, payoff, [payoff_exact], order, leaves, branches,
/// nodes, elapsed_ms. `leaves` is null for algorithms other than fast.
inline nlohmann::ordered_json report_to_json(const RunReport& r, bool with_order = true) {
    nlohmann::ordered_json doc;
    doc["algo"] = std::string(to_string(r.algo));
    doc["mode"] = std::string(to_string(r.mode));
    doc["payoff"] = r.payoff;
    if (r.payoff_exact) doc["payoff_exact"] = *r.payoff_exact;
    if (with_order) doc["order"] = r.order;
    doc["leaves"] = r.leaves ? nlohmann::ordered_json(*r.leaves) : nlohmann::ordered_json(nullptr);
    doc["branches"] = r.branches;
    doc["nodes"] = r.nodes;
    doc["elapsed_ms"] = r.elapsed_ms();
    return doc;
}

/// One "key value" line per field, values formatted exactly as in JSON.
inline std::string report_to_text(const RunReport& r, bool with_order = true) {
    std::string out;
    out += "algo " + std::string(to_string(r.algo)) + "\n";
    out += "mode " + std::string(to_string(r.mode)) + "\n";
    out += "payoff " + nlohmann::json(r.payoff).dump() + "\n";
    if (r.payoff_exact) out += "payoff_exact " + *r.payoff_exact + "\n";
    if (with_order) {
        out += "order";
        for (JobId id : r.order) out += " " + std::to_string(id);
        out += "\n";
    }
    out += "leaves " + (r.leaves ? std::to_string(*r.leaves) : std::string("-")) + "\n";
    out += "branches " + std::to_string(r.branches) + "\n";
    out += "nodes " + std::to_string(r.nodes) + "\n";
    out += "elapsed_ms " + nlohmann::json(r.elapsed_ms()).dump() + "\n";
    return out;
}

}  // namespace refuel

#endif
