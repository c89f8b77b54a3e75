#ifndef REFUEL_BASELINES_HPP
#define REFUEL_BASELINES_HPP

#include "refuel/core.hpp"
#include "refuel/dominance.hpp"
#include "refuel/solver.hpp"

#include <bit>
#include <cstdint>
#include <queue>
#include <unordered_map>
#include <vector>

namespace refuel {

inline constexpr std::size_t brute_force_limit = 10;
inline constexpr std::size_t astar_limit = 30;
inline constexpr std::size_t astar_mask_bits = 64;

struct BaselineOptions {
    bool override_size_guard = false;
    Deadline deadline;
};

namespace detail {

// Depth-first walk over permutations in lexicographic order, with the prefix
// payoff accumulated in processing order.
template <Number N>
class PermutationWalk {
public:
    PermutationWalk(const Instance& inst, Deadline& deadline) : inst_(inst), deadline_(deadline) {
        used_.assign(inst.size(), false);
        order_.reserve(inst.size());
    }

    void best(N acc, Time t) {
        deadline_.tick();
        ++nodes;
        if (order_.size() == inst_.size()) {
            if (!have_best || acc > best_payoff) {
                have_best = true;
                best_payoff = acc;
                best_order = order_;
            }
            return;
        }
        for (std::size_t k = 0; k < inst_.size(); ++k) {
            if (used_[k]) continue;
            const Job& j = inst_.jobs()[k];
            used_[k] = true;
            order_.push_back(j.id);
            best(acc + numeric_traits<N>::from_double(j.w) / from_time<N>(t + j.p), t + j.p);
            order_.pop_back();
            used_[k] = false;
        }
    }

    // Extends only prefixes whose newest job conflicts with no earlier one;
    // every rule involves just the two start times, so this prunes nothing
    // that the full filter would keep.
    std::uint64_t count_potential(Time t) {
        deadline_.tick();
        ++nodes;
        if (order_.size() == inst_.size()) return 1;
        std::uint64_t total = 0;
        for (std::size_t k = 0; k < inst_.size(); ++k) {
            if (used_[k]) continue;
            const Job& j = inst_.jobs()[k];
            bool ok = true;
            for (std::size_t a = 0; a < order_.size() && ok; ++a) {
                const Job& i = inst_[order_[a]];
                ok = !pair_violation<N>(i, starts_[a], j, t).has_value();
            }
            if (!ok) continue;
            used_[k] = true;
            order_.push_back(j.id);
            starts_.push_back(t);
            total += count_potential(t + j.p);
            starts_.pop_back();
            order_.pop_back();
            used_[k] = false;
        }
        return total;
    }

    bool have_best = false;
    N best_payoff{};
    std::vector<JobId> best_order;
    std::uint64_t nodes = 0;

private:
    const Instance& inst_;
    Deadline& deadline_;
    std::vector<bool> used_;
    std::vector<JobId> order_;
    std::vector<Time> starts_;
};

}  // namespace detail

/// Exhaustive search over all n! orders. Returns the lexicographically
/// smallest order among those reaching the maximum.
template <Number N>
SolveReport<N> brute_force(const Instance& inst, BaselineOptions opts = {}) {
    if (inst.size() > brute_force_limit && !opts.override_size_guard)
        throw size_guard_error("brute", inst.size(), brute_force_limit);
    const auto start = Clock::now();
    detail::PermutationWalk<N> walk(inst, opts.deadline);
    walk.best(N(0), 0);
    SolveReport<N> rep;
    rep.algo = "brute";
    rep.payoff = walk.best_payoff;
    rep.order = std::move(walk.best_order);
    rep.nodes = walk.nodes;
    rep.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return rep;
}

/// Number of orders passing is_potential.
template <Number N>
std::uint64_t count_potential_brute(const Instance& inst, BaselineOptions opts = {}) {
    if (inst.size() > brute_force_limit && !opts.override_size_guard)
        throw size_guard_error("count", inst.size(), brute_force_limit);
    detail::PermutationWalk<N> walk(inst, opts.deadline);
    return walk.count_potential(0);
}

/// Repeatedly schedules the unscheduled job with the largest phi at the
/// current completion time. On an exact tie the job whose phi is larger just
/// after that time wins, then the smaller id.
template <Number N>
std::vector<JobId> greedy_potential(const Instance& inst, Time t = 0) {
    std::vector<JobId> order;
    order.reserve(inst.size());
    std::vector<bool> used(inst.size(), false);
    Time now = t;
    for (std::size_t step = 0; step < inst.size(); ++step) {
        const Job* best = nullptr;
        for (const Job& j : inst.jobs()) {
            if (used[j.id]) continue;
            if (!best) {
                best = &j;
                continue;
            }
            const LinearForm<N> d = linear_form<N>(j, *best);
            const int at = d.sign_at(now);
            if (at > 0 || (at == 0 && sign(d.s) > 0)) best = &j;
        }
        used[best->id] = true;
        order.push_back(best->id);
        now += best->p;
    }
    return order;
}

template <Number N>
SolveReport<N> greedy_report(const Instance& inst) {
    const auto start = Clock::now();
    SolveReport<N> rep;
    rep.algo = "greedy";
    rep.order = greedy_potential<N>(inst);
    rep.payoff = schedule_payoff<N>(inst, rep.order);
    rep.nodes = inst.size();
    rep.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return rep;
}

struct AStarOptions {
    bool prune = false;
    bool override_size_guard = false;
    /// Hard cap on stored subsets; exceeding it throws state_limit_error.
    std::size_t max_states = 20'000'000;
    Deadline deadline;
};

class state_limit_error : public error {
public:
    explicit state_limit_error(std::size_t limit)
        : error("astar: more than " + std::to_string(limit) + " subset states") {}
};

/// Search state: a set of scheduled jobs (as a bitmask) and the best payoff
/// of a prefix order covering exactly that set.
template <Number N>
struct AStarState {
    std::uint64_t scheduled = 0;
    N g{};
    Time t = 0;
};

namespace detail {

template <Number N>
struct AStarEntry {
    N g{};
    Time t = 0;
    std::uint64_t parent = 0;
    JobId last = -1;
    bool closed = false;
};

template <Number N>
struct AStarQueueItem {
    N f{};
    std::uint64_t mask = 0;
    int depth = 0;

    // std::priority_queue pops the largest: higher f, then deeper, then the
    // smaller mask.
    friend bool operator<(const AStarQueueItem& a, const AStarQueueItem& b) {
        if (a.f != b.f) return a.f < b.f;
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.mask > b.mask;
    }
};

}  // namespace detail

/// Best-first search over subsets of scheduled jobs. The optimistic bound for
/// the unscheduled rest is sum w_j / (t_S + p_j).
///
/// With `prune`, extending the prefix by j is skipped when j is certain to be
/// strictly dominated: some unscheduled k has phi_k > phi_j on all of [t, T],
/// or some job i already in the kept prefix path has phi strictly below
/// phi_j on all of [t_i, t - p_i].
template <Number N>
SolveReport<N> astar(const Instance& inst, AStarOptions opts = {}) {
    const std::size_t n = inst.size();
    if (n > astar_mask_bits) throw size_guard_error("astar", n, astar_mask_bits);
    if (n > astar_limit && !opts.override_size_guard) throw size_guard_error("astar", n, astar_limit);

    const auto start = Clock::now();
    SolveReport<N> rep;
    rep.algo = "astar";
    if (n == 0) {
        rep.payoff = N(0);
        rep.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
        return rep;
    }

    std::vector<N> weight(n);
    for (std::size_t k = 0; k < n; ++k) weight[k] = numeric_traits<N>::from_double(inst.jobs()[k].w);
    std::vector<LinearForm<N>> forms;  // forms[a * n + b] compares phi_a with phi_b
    if (opts.prune) {
        forms.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (a != b) forms[a * n + b] = linear_form<N>(inst.jobs()[a], inst.jobs()[b]);
    }
    auto form = [&](std::size_t a, std::size_t b) -> const LinearForm<N>& { return forms[a * n + b]; };

    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const Time horizon = inst.horizon();

    auto heuristic = [&](std::uint64_t mask, Time t) {
        N h = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (!(mask >> k & 1)) h += weight[k] / from_time<N>(t + inst.jobs()[k].p);
        return h;
    };

    std::unordered_map<std::uint64_t, detail::AStarEntry<N>> table;
    std::priority_queue<detail::AStarQueueItem<N>> open;
    table.emplace(0, detail::AStarEntry<N>{N(0), 0, 0, -1, false});
    open.push({heuristic(0, 0), 0, 0});

    std::vector<std::pair<std::size_t, Time>> path;  // (job, start) of the kept prefix
    while (!open.empty()) {
        opts.deadline.tick();
        const auto item = open.top();
        open.pop();
        auto& entry = table.at(item.mask);
        if (entry.closed) continue;
        entry.closed = true;
        if (item.mask == full) break;
        ++rep.nodes;

        const N g = entry.g;
        const Time t = entry.t;
        const std::uint64_t mask = item.mask;

        if (opts.prune) {
            path.clear();
            for (std::uint64_t m = mask; m != 0;) {
                const auto& e = table.at(m);
                path.push_back({static_cast<std::size_t>(e.last), e.t - inst[e.last].p});
                m = e.parent;
            }
        }

        for (std::size_t j = 0; j < n; ++j) {
            if (mask >> j & 1) continue;
            const Job& job = inst.jobs()[j];
            if (opts.prune) {
                bool dominated = false;
                for (std::size_t k = 0; k < n && !dominated; ++k) {
                    if (k == j || (mask >> k & 1)) continue;
                    const auto& d = form(k, j);
                    dominated = d.sign_at(t) > 0 && d.sign_at(horizon) > 0;
                }
                for (std::size_t a = 0; a < path.size() && !dominated; ++a) {
                    const auto [i, t_i] = path[a];
                    const auto& d = form(j, i);
                    dominated = d.sign_at(t_i) > 0 && d.sign_at(t - inst.jobs()[i].p) > 0;
                }
                if (dominated) continue;
            }

            const std::uint64_t next = mask | (std::uint64_t{1} << j);
            const Time t_next = t + job.p;
            N g_next = g + weight[j] / from_time<N>(t_next);
            auto [it, inserted] = table.try_emplace(next);
            if (!inserted && (it->second.closed || !(g_next > it->second.g))) continue;
            if (inserted && table.size() > opts.max_states) throw state_limit_error(opts.max_states);
            it->second.g = g_next;
            it->second.t = t_next;
            it->second.parent = mask;
            it->second.last = job.id;
            open.push({g_next + heuristic(next, t_next), next, std::popcount(next)});
        }
    }

    const auto goal = table.find(full);
    if (goal == table.end() || !goal->second.closed) throw error("astar: goal unreachable");
    rep.payoff = goal->second.g;
    for (std::uint64_t m = full; m != 0;) {
        const auto& e = table.at(m);
        rep.order.push_back(e.last);
        m = e.parent;
    }
    std::reverse(rep.order.begin(), rep.order.end());
    rep.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return rep;
}

}  // namespace refuel

#endif
