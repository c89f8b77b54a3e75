#ifndef REFUEL_BENCH_HPP
#define REFUEL_BENCH_HPP

#include "refuel/gen.hpp"
#include "refuel/io.hpp"
#include "refuel/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

namespace refuel {

enum class BenchStatus { ok, timeout, skipped };

inline constexpr std::string_view to_string(BenchStatus s) noexcept {
    switch (s) {
        case BenchStatus::ok: return "ok";
        case BenchStatus::timeout: return "timeout";
        case BenchStatus::skipped: return "skipped";
    }
    return "skipped";
}

struct BenchRecord {
    std::string instance;
    std::size_t n = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    Algo algo = Algo::fast;
    NumericMode mode = NumericMode::fast;
    double elapsed_s = 0.0;
    std::optional<double> payoff;  // set iff status == ok
    std::optional<std::uint64_t> leaves;
    std::uint64_t nodes = 0;
    BenchStatus status = BenchStatus::skipped;
    std::string message;
};

struct BenchOptions {
    std::vector<Algo> algos{Algo::fast, Algo::astar};
    double timeout_s = 60.0;
    NumericMode mode = NumericMode::fast;
    std::size_t workers = 1;
    /// Solves finishing faster than this are repeated until the accumulated
    /// time reaches it; the record keeps the mean per solve.
    double min_time_s = 0.0;
    /// Dominance pruning for A* (the reference A* links arcs by dominance).
    bool astar_prune = true;
};

/// Runs one (instance, algo) pair. Parsing is not timed.
inline BenchRecord bench_one(const ManifestEntry& entry, Algo algo, const BenchOptions& opts) {
    BenchRecord rec;
    rec.instance = entry.path.generic_string();
    rec.n = entry.n;
    rec.sigma = entry.sigma;
    rec.seed = entry.seed;
    rec.algo = algo;
    rec.mode = opts.mode;

    Instance inst;
    try {
        inst = load_instance(entry.path);
    } catch (const error& e) {
        rec.message = e.what();
        return rec;
    }
    rec.n = inst.size();

    RunOptions ro;
    ro.prune = opts.astar_prune;
    ro.override_size_guard = algo == Algo::astar;
    ro.timeout_s = opts.timeout_s;
    try {
        RunReport first = solve(inst, algo, opts.mode, ro);
        double total = first.elapsed_s();
        std::size_t runs = 1;
        while (total < opts.min_time_s) {
            total += solve(inst, algo, opts.mode, ro).elapsed_s();
            ++runs;
        }
        rec.elapsed_s = total / static_cast<double>(runs);
        rec.payoff = first.payoff;
        rec.leaves = first.leaves;
        rec.nodes = first.nodes;
        rec.status = BenchStatus::ok;
    } catch (const timeout_error&) {
        rec.status = BenchStatus::timeout;
        rec.elapsed_s = opts.timeout_s;
    } catch (const error& e) {
        rec.status = BenchStatus::skipped;
        rec.message = e.what();
    }
    return rec;
}

/// Records come back in manifest order x algo order regardless of `workers`.
inline std::vector<BenchRecord> run_bench(const Manifest& manifest, const BenchOptions& opts) {
    const std::size_t total = manifest.size() * opts.algos.size();
    std::vector<BenchRecord> out(total);
    auto job = [&](std::size_t k) { out[k] = bench_one(manifest[k / opts.algos.size()], opts.algos[k % opts.algos.size()], opts); };
    const std::size_t workers = std::max<std::size_t>(1, std::min(opts.workers, total));
    if (workers == 1) {
        for (std::size_t k = 0; k < total; ++k) job(k);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < total; k = next++) job(k);
        });
    for (auto& t : pool) t.join();
    return out;
}

inline std::string records_header() { return "instance,n,sigma,seed,algo,mode,elapsed_s,payoff,leaves,nodes,status"; }

inline std::string records_to_csv(const std::vector<BenchRecord>& records) {
    std::string out = records_header() + "\n";
    for (const auto& r : records) {
        out += r.instance + "," + std::to_string(r.n) + "," + format_double(r.sigma) + "," + std::to_string(r.seed) +
               "," + std::string(to_string(r.algo)) + "," + std::string(to_string(r.mode)) + "," +
               format_double(r.elapsed_s) + "," + (r.payoff ? format_double(*r.payoff) : "") + "," +
               (r.leaves ? std::to_string(*r.leaves) : "") + "," + std::to_string(r.nodes) + "," +
               std::string(to_string(r.status)) + "\n";
    }
    return out;
}

inline double mean(std::span<const double> xs) {
    if (xs.empty()) return std::nan("");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Sample standard deviation (n - 1 denominator); NaN below two values.
inline double stddev(std::span<const double> xs) {
    if (xs.size() < 2) return std::nan("");
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

/// Ranks 1..n with tied values sharing the average of their positions.
inline std::vector<double> average_ranks(std::span<const double> xs) {
    std::vector<std::size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(xs.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

/// Pearson correlation; nullopt when either side has zero variance.
inline std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const double mx = mean(x), my = mean(y);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
        syy += (y[k] - my) * (y[k] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

/// Spearman rank correlation with average ranks for ties; nullopt when a
/// side is constant (all ranks tied).
inline std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

struct SpeedupRow {
    std::size_t n = 0;
    std::size_t instances = 0;  // pairs with both algorithms ok
    std::size_t excluded = 0;   // pairs where either timed out or was skipped
    double mean_fast_s = 0.0;
    double mean_baseline_s = 0.0;
    double ratio = 0.0;  // geometric mean of baseline / fast per instance
};

struct SpeedupReport {
    std::vector<SpeedupRow> rows;
    /// True when no instance was solved by both algorithms.
    bool empty() const noexcept {
        return std::none_of(rows.begin(), rows.end(), [](const SpeedupRow& r) { return r.instances > 0; });
    }
};

/// Per job count, the geometric-mean ratio of `baseline` time to fast time
/// over instances solved by both.
inline SpeedupReport speedup_report(const std::vector<BenchRecord>& records, Algo baseline = Algo::astar) {
    struct Pair {
        const BenchRecord* fast = nullptr;
        const BenchRecord* base = nullptr;
    };
    std::map<std::string, Pair> pairs;
    for (const auto& r : records) {
        if (r.algo == Algo::fast) pairs[r.instance].fast = &r;
        if (r.algo == baseline) pairs[r.instance].base = &r;
    }
    std::map<std::size_t, SpeedupRow> by_n;
    std::map<std::size_t, std::vector<double>> fast_t, base_t, log_ratio;
    for (const auto& [name, p] : pairs) {
        if (!p.fast || !p.base) continue;
        auto& row = by_n[p.fast->n];
        row.n = p.fast->n;
        if (p.fast->status != BenchStatus::ok || p.base->status != BenchStatus::ok) {
            ++row.excluded;
            continue;
        }
        ++row.instances;
        fast_t[row.n].push_back(p.fast->elapsed_s);
        base_t[row.n].push_back(p.base->elapsed_s);
        log_ratio[row.n].push_back(std::log(p.base->elapsed_s / p.fast->elapsed_s));
    }
    SpeedupReport rep;
    for (auto& [n, row] : by_n) {
        if (row.instances == 0) {
            row.mean_fast_s = row.mean_baseline_s = row.ratio = std::nan("");
            rep.rows.push_back(row);
            continue;
        }
        row.mean_fast_s = mean(fast_t[n]);
        row.mean_baseline_s = mean(base_t[n]);
        row.ratio = std::exp(mean(log_ratio[n]));
        rep.rows.push_back(row);
    }
    return rep;
}

inline std::string speedup_to_csv(const SpeedupReport& rep) {
    if (rep.empty()) return "# empty: no instance solved by both algorithms\n";
    std::string out = "n,instances,excluded,mean_elapsed_fast_s,mean_elapsed_astar_s,ratio\n";
    for (const auto& r : rep.rows)
        out += std::to_string(r.n) + "," + std::to_string(r.instances) + "," + std::to_string(r.excluded) + "," +
               format_double(r.mean_fast_s) + "," + format_double(r.mean_baseline_s) + "," + format_double(r.ratio) +
               "\n";
    return out;
}

struct HardnessRow {
    std::string instance;
    double sigma = 0.0;
    std::uint64_t leaves = 0;
    double elapsed_s = 0.0;
};

struct HardnessReport {
    std::vector<HardnessRow> rows;
    /// Spearman correlation of log K with log elapsed; nullopt with fewer
    /// than three rows or a constant column.
    std::optional<double> correlation;
};

inline HardnessReport hardness_report(const std::vector<BenchRecord>& records) {
    HardnessReport rep;
    std::vector<double> lk, le;
    for (const auto& r : records) {
        if (r.algo != Algo::fast || r.status != BenchStatus::ok || !r.leaves) continue;
        rep.rows.push_back({r.instance, r.sigma, *r.leaves, r.elapsed_s});
        lk.push_back(std::log(static_cast<double>(std::max<std::uint64_t>(*r.leaves, 1))));
        le.push_back(std::log(r.elapsed_s > 0 ? r.elapsed_s : 1e-12));
    }
    if (rep.rows.size() >= 3) rep.correlation = spearman(lk, le);
    return rep;
}

inline std::string hardness_to_csv(const HardnessReport& rep) {
    std::string out = "instance,sigma,leaves,elapsed_s\n";
    for (const auto& r : rep.rows)
        out += r.instance + "," + format_double(r.sigma) + "," + std::to_string(r.leaves) + "," +
               format_double(r.elapsed_s) + "\n";
    out += "# spearman_logK_logelapsed," + (rep.correlation ? format_double(*rep.correlation) : std::string("omitted")) +
           "\n";
    return out;
}

/// Index k of the sigma band [k/10, (k+1)/10); the last band [0.9, 1.0] is
/// closed and larger sigmas get their own bands.
inline int sigma_band(double sigma) {
    int k = static_cast<int>(std::floor(sigma * 10.0 + 1e-9));
    if (k == 10 && sigma <= 1.0 + 1e-12) k = 9;
    return std::max(k, 0);
}

struct TableCell {
    Algo algo = Algo::fast;
    std::size_t n = 0;
    int band = 0;
    std::size_t total = 0;
    std::size_t solved = 0;
    double avg_s = 0.0;  // over solved instances only
    double std_s = 0.0;

    double sigma_lo() const { return band / 10.0; }
    double sigma_hi() const { return (band + 1) / 10.0; }
    double percent_solved() const { return total ? 100.0 * static_cast<double>(solved) / static_cast<double>(total) : 0.0; }
};

/// Running-time summary per (algo, n, sigma band). Timed-out instances are
/// left out of avg/std and show up in percent solved.
inline std::vector<TableCell> table_report(const std::vector<BenchRecord>& records) {
    std::map<std::tuple<int, std::size_t, int>, std::pair<TableCell, std::vector<double>>> cells;
    for (const auto& r : records) {
        const int band = sigma_band(r.sigma);
        auto& [cell, times] = cells[std::make_tuple(static_cast<int>(r.algo), r.n, band)];
        cell.algo = r.algo;
        cell.n = r.n;
        cell.band = band;
        ++cell.total;
        if (r.status == BenchStatus::ok) {
            ++cell.solved;
            times.push_back(r.elapsed_s);
        }
    }
    std::vector<TableCell> out;
    for (auto& [key, v] : cells) {
        v.first.avg_s = mean(v.second);
        v.first.std_s = stddev(v.second);
        out.push_back(v.first);
    }
    return out;
}

inline std::string table_to_csv(const std::vector<TableCell>& cells) {
    std::string out = "algo,n,sigma_lo,sigma_hi,instances,solved,percent_solved,avg_s,std_s\n";
    for (const auto& c : cells)
        out += std::string(to_string(c.algo)) + "," + std::to_string(c.n) + "," + format_fixed(c.sigma_lo(), 1) + "," +
               format_fixed(c.sigma_hi(), 1) + "," + std::to_string(c.total) + "," + std::to_string(c.solved) + "," +
               format_double(c.percent_solved()) + "," + format_double(c.avg_s) + "," + format_double(c.std_s) + "\n";
    return out;
}

}  // namespace refuel

#endif
