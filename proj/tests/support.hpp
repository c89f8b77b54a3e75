// Test-only oracles and random instance helpers. Nothing here calls into the
// solver; payoffs and potentiality are recomputed from their definitions.
#ifndef REFUEL_TESTS_SUPPORT_HPP
#define REFUEL_TESTS_SUPPORT_HPP

#include "refuel/refuel.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace refuel::testing {

using Q = Rational;

inline Q q(long long num, long long den = 1) { return Q(num) / Q(den); }

/// Random instance with its own engine, independent of the production
/// generator: p uniform on [1, pmax], w = 2^x p with x ~ N(0, sigma^2).
inline Instance random_instance(std::mt19937_64& rng, std::size_t n, double sigma, Time pmax = 100) {
    std::uniform_int_distribution<Time> pd(1, pmax);
    std::normal_distribution<double> xd(0.0, sigma > 0 ? sigma : 1.0);
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < n; ++k) {
        const Time p = pd(rng);
        const double x = sigma > 0 ? xd(rng) : 0.0;
        jobs.push_back({static_cast<JobId>(k), p, std::exp2(x) * static_cast<double>(p)});
    }
    return Instance(std::move(jobs));
}

/// Airplane view: sum over drop-out positions of w / (remaining consumption).
inline Q dropout_objective(const Instance& inst, const std::vector<JobId>& dropout) {
    Q total = 0;
    for (std::size_t j = 0; j < dropout.size(); ++j) {
        Time rest = 0;
        for (std::size_t k = j; k < dropout.size(); ++k) rest += inst[dropout[k]].p;
        total += Q(inst[dropout[j]].w) / Q(static_cast<long long>(rest));
    }
    return total;
}

/// sum w_j / C_j straight from the definition.
inline Q payoff_oracle(const Instance& inst, const std::vector<JobId>& order, Time base = 0) {
    Q total = 0;
    Time c = base;
    for (JobId id : order) {
        c += inst[id].p;
        total += Q(inst[id].w) / Q(static_cast<long long>(c));
    }
    return total;
}

/// phi_a(t) - phi_b(t) with divisions, as an independent route to the sign.
inline Q phi_gap(const Job& a, const Job& b, const Q& t) {
    auto f = [](const Job& j, const Q& tt) {
        const Q p(static_cast<long long>(j.p));
        return Q(j.w) / (p * (p + tt));
    };
    return f(a, t) - f(b, t);
}

/// Potentiality from the pairwise definition, evaluating phi at the interval
/// ends of each exchange window with divisions (no linear form).
inline bool potential_oracle(const Instance& inst, const std::vector<JobId>& order) {
    std::vector<Time> start(inst.size());
    Time t = 0;
    for (JobId id : order) {
        start[id] = t;
        t += inst[id].p;
    }
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const Job& i = inst[order[a]];
            const Job& j = inst[order[b]];
            // Where phi_j >= phi_i holds on [0, inf) (j globally first), or on
            // a half line that the exchange window [t_i, t_j - p_i] enters.
            const Q g0 = phi_gap(j, i, Q(0));
            // The sign of phi_j - phi_i far out equals the sign of the slope
            // of the linear form.
            const Q far = Q(j.w) * Q(static_cast<long long>(i.p)) - Q(i.w) * Q(static_cast<long long>(j.p));
            const bool equal_jobs = i.p == j.p && i.w == j.w;
            if (equal_jobs) continue;
            const Q lo = Q(static_cast<long long>(start[i.id]));
            const Q hi = Q(static_cast<long long>(start[j.id] - i.p));
            if (g0 >= 0 && far >= 0) return false;  // j dominates i globally
            if (g0 <= 0 && far <= 0) continue;      // i dominates j globally
            // Crossover: tstar where the gap changes sign.
            const Q pi(static_cast<long long>(i.p)), pj(static_cast<long long>(j.p));
            const Q c = Q(j.w) * pi * pi - Q(i.w) * pj * pj;
            const Q s = Q(j.w) * pi - Q(i.w) * pj;
            const Q tstar = -c / s;
            if (g0 < 0) {
                // i first on [0, tstar), j from tstar on.
                if (lo >= tstar) return false;
            } else {
                // j first on [0, tstar).
                if (hi < tstar) return false;
            }
        }
    return true;
}

inline std::vector<std::vector<JobId>> all_permutations(std::size_t n) {
    std::vector<JobId> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<JobId>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Best payoff over all orders, by plain enumeration.
inline Q brute_optimum(const Instance& inst) {
    Q best = -1;
    for (const auto& p : all_permutations(inst.size())) {
        Q v = payoff_oracle(inst, p);
        if (v > best) best = v;
    }
    return best;
}

inline std::set<std::vector<JobId>> potential_orders_oracle(const Instance& inst) {
    std::set<std::vector<JobId>> out;
    for (const auto& p : all_permutations(inst.size()))
        if (potential_oracle(inst, p)) out.insert(p);
    return out;
}

/// No identical jobs and no integer crossover point. Candidate start times
/// are integers, so this rules out every exact boundary collision.
inline bool general_position(const Instance& inst) {
    for (const Job& a : inst.jobs())
        for (const Job& b : inst.jobs()) {
            if (a.id >= b.id) continue;
            if (a.p == b.p && a.w == b.w) return false;
            auto rel = classify_pair<Q>(a, b);
            if (rel.is_crossover() && denominator(rel.tstar) == 1) return false;
        }
    return true;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("refuel_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline bool near(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace refuel::testing

#endif
