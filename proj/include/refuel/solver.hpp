#ifndef REFUEL_SOLVER_HPP
#define REFUEL_SOLVER_HPP

#include "refuel/core.hpp"
#include "refuel/dominance.hpp"

#include <cassert>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace refuel {

using Clock = std::chrono::steady_clock;

/// Counters saturate instead of wrapping.
inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) noexcept {
    const std::uint64_t r = a + b;
    return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

/// Cooperative deadline, polled every `stride` ticks.
class Deadline {
public:
    Deadline() = default;
    explicit Deadline(std::optional<Clock::time_point> at, std::uint32_t stride = 64) : at_(at), stride_(stride) {}

    static Deadline after(double seconds) {
        return Deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds)));
    }

    void tick() {
        if (!at_) return;
        if (count_++ % stride_ == 0 && Clock::now() >= *at_) throw timeout_error();
    }

    bool armed() const noexcept { return at_.has_value(); }

private:
    std::optional<Clock::time_point> at_;
    std::uint32_t stride_ = 64;
    std::uint64_t count_ = 0;
};

/// One accepted start time of the window's alpha job.
struct Branch {
    std::size_t q = 0;  // subinterval [c_q, c_{q+1}), 1-based
    Time t_alpha = 0;
    std::vector<JobId> left;   // jobs processed before alpha, sorted by id
    std::vector<JobId> right;  // jobs processed after alpha, sorted by id
};

/// Reported after both sides of an accepted branch have been solved.
struct BranchEvent {
    JobId alpha = -1;
    Time t_o = 0;
    Time t_e = 0;
    const Branch* branch = nullptr;
    std::uint64_t left_leaves = 0;
    std::uint64_t right_leaves = 0;
};

struct SolveOptions {
    /// Skip a branch when an optimistic bound cannot beat the window's best.
    /// Off by default so that `leaves` counts every potential schedule.
    bool bound = false;
    Deadline deadline;
    std::function<void(const BranchEvent&)> on_branch;
};

template <Number N>
struct SolveReport {
    std::string algo;
    N payoff{};
    std::vector<JobId> order;
    std::uint64_t leaves = 0;
    std::uint64_t branches = 0;
    std::uint64_t nodes = 0;
    std::chrono::nanoseconds elapsed{0};

    static constexpr NumericMode mode = numeric_traits<N>::mode;

    double elapsed_ms() const { return std::chrono::duration<double, std::milli>(elapsed).count(); }
};

/// Whether `cand` should replace `best` as alpha: larger phi(t_o), then
/// larger phi(t_e), then smaller id.
template <Number N>
bool preferred_alpha(const Job& cand, const Job& best, Time t_o, Time t_e) {
    const LinearForm<N> d = linear_form<N>(cand, best);
    const int at_o = d.sign_at(t_o);
    if (at_o != 0) return at_o > 0;
    const int at_e = d.sign_at(t_e);
    return at_e > 0 || (at_e == 0 && cand.id < best.id);
}

/// The job with the largest phi(t_o); ties go to the larger phi(t_e), then to
/// the smaller id.
template <Number N>
const Job& select_alpha(std::span<const Job> window, Time t_o, Time t_e) {
    if (window.empty()) throw empty_window();
    const Job* best = &window.front();
    for (const Job& j : window.subspan(1))
        if (preferred_alpha<N>(j, *best, t_o, t_e)) best = &j;
    return *best;
}

/// alpha of the window together with all of its admissible start times.
template <Number N>
struct WindowSplit {
    JobId alpha = -1;
    Time t_e = 0;
    std::vector<Branch> branches;
};

/// Finds alpha for the jobs `ids` processed from `t_o` and tries each
/// subinterval of its cut grid: with the jobs whose cuts have been passed
/// placed first, alpha starts at t_o plus their processing time, which is
/// kept only when it lands in the subinterval and outside alpha's banned set.
template <Number N>
WindowSplit<N> split_window(const Instance& inst, std::span<const JobId> ids, Time t_o) {
    if (ids.empty()) throw empty_window();
    WindowSplit<N> out;
    Time t_e = t_o;
    for (JobId id : ids) t_e += inst[id].p;
    out.t_e = t_e;

    const Job* alpha = &inst[ids.front()];
    for (JobId id : ids.subspan(1))
        if (preferred_alpha<N>(inst[id], *alpha, t_o, t_e)) alpha = &inst[id];
    out.alpha = alpha->id;

    // One classification per pair yields both the cut (same rules as
    // cut_grid) and the banned interval (same rules as banned_set).
    struct Cut {
        N at;
        std::size_t k;
    };
    std::vector<Cut> cuts;
    std::vector<HalfOpenInterval<N>> raw;
    const N lo = from_time<N>(t_o);
    const N hi = from_time<N>(t_e);
    for (std::size_t k = 0; k < ids.size(); ++k) {
        const Job& j = inst[ids[k]];
        if (j.id == alpha->id) continue;
        PairRelation<N> rel = classify_pair<N>(*alpha, j);
        if (!rel.is_crossover() || rel.dominant_before != alpha->id) continue;
        N end = rel.tstar + from_time<N>(j.p);
        if (lo < rel.tstar && rel.tstar < hi && end < hi) cuts.push_back({end, k});
        if (rel.tstar > 0 && rel.tstar < hi) raw.push_back({std::move(rel.tstar), std::move(end)});
    }
    const BannedSet<N> banned(alpha->id, std::move(raw));
    std::stable_sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.at < b.at; });

    // Subinterval q (1-based) spans [bounds[q-1], bounds[q]); from q = 2 on,
    // the jobs whose cut is bounds[q-1] have joined the prefix.
    std::vector<N> bounds;
    bounds.reserve(cuts.size() + 2);
    bounds.push_back(lo);
    for (const Cut& c : cuts)
        if (!(bounds.back() == c.at)) bounds.push_back(c.at);
    bounds.push_back(hi);

    std::vector<bool> before(ids.size(), false);
    std::size_t next = 0;
    Time prefix = 0;
    for (std::size_t q = 1; q < bounds.size(); ++q) {
        while (q >= 2 && next < cuts.size() && !(bounds[q - 1] < cuts[next].at)) {
            before[cuts[next].k] = true;
            prefix += inst[ids[cuts[next].k]].p;
            ++next;
        }
        const Time t_alpha = t_o + prefix;
        const N start = from_time<N>(t_alpha);
        if (!(bounds[q - 1] <= start && start < bounds[q])) continue;
        if (banned.contains(start)) continue;

        Branch br;
        br.q = q;
        br.t_alpha = t_alpha;
        br.left.reserve(next);
        br.right.reserve(ids.size() - next - 1);
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (ids[k] == alpha->id) continue;
            (before[k] ? br.left : br.right).push_back(ids[k]);
        }
        out.branches.push_back(std::move(br));
    }
    return out;
}

namespace detail {

template <Number N>
class FastScheduleSearch {
public:
    struct Result {
        N payoff{};
        std::vector<JobId> order;
        std::uint64_t leaves = 1;
    };

    FastScheduleSearch(const Instance& inst, SolveOptions& opts) : inst_(inst), opts_(opts) {}

    Result solve(std::span<const JobId> ids, Time t) {
        ++nodes;
        opts_.deadline.tick();
        if (ids.empty()) return {N(0), {}, 1};
        if (ids.size() == 1) {
            const Job& j = inst_[ids.front()];
            return {numeric_traits<N>::from_double(j.w) / from_time<N>(j.p + t), {j.id}, 1};
        }

        WindowSplit<N> split = split_window<N>(inst_, ids, t);
        const Job& alpha = inst_[split.alpha];
        const N w_alpha = numeric_traits<N>::from_double(alpha.w);

        Result best;
        bool have_best = false;
        best.leaves = 0;
        for (const Branch& br : split.branches) {
            const N own = w_alpha / from_time<N>(br.t_alpha + alpha.p);
            if (opts_.bound && have_best) {
                const N optimistic =
                    upper_bound(br.left, t) + own + upper_bound(br.right, br.t_alpha + alpha.p);
                if (!(optimistic > best.payoff)) continue;
            }
            ++branches;
            Result left = solve(br.left, t);
            Result right = solve(br.right, br.t_alpha + alpha.p);
            const std::uint64_t here = saturating_mul(left.leaves, right.leaves);
            assert(here >= 1);
            best.leaves = saturating_add(best.leaves, here);
            if (opts_.on_branch)
                opts_.on_branch({alpha.id, t, split.t_e, &br, left.leaves, right.leaves});

            N total = left.payoff + own + right.payoff;
            if (!have_best || total > best.payoff) {
                have_best = true;
                best.payoff = std::move(total);
                best.order = std::move(left.order);
                best.order.push_back(alpha.id);
                best.order.insert(best.order.end(), right.order.begin(), right.order.end());
            }
        }
        return best;
    }

    std::uint64_t nodes = 0;
    std::uint64_t branches = 0;

private:
    // Every completion time in the window is at least t + p_j.
    N upper_bound(std::span<const JobId> ids, Time t) const {
        N ub = 0;
        for (JobId id : ids) ub += numeric_traits<N>::from_double(inst_[id].w) / from_time<N>(inst_[id].p + t);
        return ub;
    }

    const Instance& inst_;
    SolveOptions& opts_;
};

}  // namespace detail

/// Best order of the jobs `ids` processed back to back from time `t`, found
/// by branching on the start time of each window's alpha. `leaves` is the
/// number of complete potential schedules the recursion covers.
template <Number N>
SolveReport<N> fast_schedule(const Instance& inst, std::span<const JobId> ids, Time t, SolveOptions opts = {}) {
    std::vector<JobId> window(ids.begin(), ids.end());
    std::sort(window.begin(), window.end());
    const auto start = Clock::now();
    detail::FastScheduleSearch<N> search(inst, opts);
    auto res = search.solve(window, t);
    SolveReport<N> rep;
    rep.algo = "fast";
    rep.payoff = std::move(res.payoff);
    rep.order = std::move(res.order);
    rep.leaves = res.leaves;
    rep.branches = search.branches;
    rep.nodes = search.nodes;
    rep.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return rep;
}

template <Number N>
SolveReport<N> fast_schedule(const Instance& inst, SolveOptions opts = {}) {
    const std::vector<JobId> ids = inst.ids();
    return fast_schedule<N>(inst, ids, 0, std::move(opts));
}

using OrderVisitor = std::function<void(std::span<const JobId>)>;

namespace detail {

template <Number N>
class PotentialEnumerator {
public:
    PotentialEnumerator(const Instance& inst, const OrderVisitor& visit, Deadline& deadline)
        : inst_(inst), visit_(visit), deadline_(deadline) {}

    // `pending` is a stack of segments still to be laid out, the next one
    // at the back. A segment with `fixed` set is a single pinned job.
    struct Segment {
        std::vector<JobId> ids;
        Time t = 0;
        bool fixed = false;
    };

    void run(std::vector<Segment>& pending) {
        deadline_.tick();
        if (pending.empty()) {
            ++count;
            if (visit_) visit_(order_);
            return;
        }
        Segment seg = std::move(pending.back());
        pending.pop_back();
        if (seg.fixed || seg.ids.size() <= 1) {
            order_.insert(order_.end(), seg.ids.begin(), seg.ids.end());
            run(pending);
            order_.resize(order_.size() - seg.ids.size());
        } else {
            WindowSplit<N> split = split_window<N>(inst_, seg.ids, seg.t);
            const Time p_alpha = inst_[split.alpha].p;
            for (Branch& br : split.branches) {
                const std::size_t depth = pending.size();
                pending.push_back({std::move(br.right), br.t_alpha + p_alpha, false});
                pending.push_back({{split.alpha}, br.t_alpha, true});
                pending.push_back({std::move(br.left), seg.t, false});
                run(pending);
                pending.resize(depth);
            }
        }
        pending.push_back(std::move(seg));
    }

    std::uint64_t count = 0;

private:
    const Instance& inst_;
    const OrderVisitor& visit_;
    Deadline& deadline_;
    std::vector<JobId> order_;
};

}  // namespace detail

/// Walks the same recursion as fast_schedule but hands every complete
/// potential schedule to `visit` in processing order. Returns their number.
template <Number N>
std::uint64_t enumerate_potential(const Instance& inst, std::span<const JobId> ids, Time t, const OrderVisitor& visit,
                                  Deadline deadline = {}) {
    using E = detail::PotentialEnumerator<N>;
    std::vector<JobId> window(ids.begin(), ids.end());
    std::sort(window.begin(), window.end());
    E e(inst, visit, deadline);
    std::vector<typename E::Segment> pending;
    pending.push_back({std::move(window), t, false});
    e.run(pending);
    return e.count;
}

template <Number N>
std::uint64_t enumerate_potential(const Instance& inst, const OrderVisitor& visit, Deadline deadline = {}) {
    const std::vector<JobId> ids = inst.ids();
    return enumerate_potential<N>(inst, ids, 0, visit, deadline);
}

}  // namespace refuel

#endif
