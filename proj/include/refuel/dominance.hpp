#ifndef REFUEL_DOMINANCE_HPP
#define REFUEL_DOMINANCE_HPP

#include "refuel/core.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace refuel {

/// D(t) = c + s t, with sign(D(t)) = sign(phi_i(t) - phi_j(t)).
///
/// Multiplying phi_i - phi_j by the positive p_i p_j (p_i + t)(p_j + t)
/// leaves w_i p_j (p_j + t) - w_j p_i (p_i + t), which is linear in t.
template <Number N>
struct LinearForm {
    N c{};
    N s{};

    N operator()(const N& t) const { return c + s * t; }
    int sign_at(const N& t) const { return sign((*this)(t)); }
    int sign_at(Time t) const { return sign_at(from_time<N>(t)); }
};

template <Number N>
LinearForm<N> linear_form(const Job& i, const Job& j) {
    const N wi = numeric_traits<N>::from_double(i.w);
    const N wj = numeric_traits<N>::from_double(j.w);
    // Squares are formed in integers so that (i, j) and (j, i) give exactly
    // negated forms in floating point as well.
    return {wi * from_time<N>(j.p * j.p) - wj * from_time<N>(i.p * i.p),
            wi * from_time<N>(j.p) - wj * from_time<N>(i.p)};
}

/// Sign of phi_a(t) - phi_b(t), computed without divisions.
template <Number N>
int compare_phi(const Job& a, const Job& b, Time t) {
    return linear_form<N>(a, b).sign_at(t);
}

enum class PairKind { first_dominates, second_dominates, crossover, equivalent };

/// Dominance between two jobs over [0, inf).
///
/// For a crossover, `dominant_before` has the larger phi on [0, tstar) and
/// the other job has phi >= on [tstar, inf).
template <Number N>
struct PairRelation {
    PairKind kind = PairKind::equivalent;
    N tstar{};
    JobId dominant_before = -1;

    bool is_crossover() const noexcept { return kind == PairKind::crossover; }
};

template <Number N>
PairRelation<N> classify_pair(const Job& i, const Job& j) {
    const LinearForm<N> d = linear_form<N>(i, j);
    const int sc = sign(d.c);
    const int ss = sign(d.s);
    PairRelation<N> rel;
    if (sc == 0 && ss == 0) {
        rel.kind = PairKind::equivalent;
    } else if (sc >= 0 && ss >= 0) {
        rel.kind = PairKind::first_dominates;
    } else if (sc <= 0 && ss <= 0) {
        rel.kind = PairKind::second_dominates;
    } else {
        rel.kind = PairKind::crossover;
        rel.tstar = -d.c / d.s;
        rel.dominant_before = sc > 0 ? i.id : j.id;
    }
    return rel;
}

/// Half-open [lo, hi).
template <Number N>
struct HalfOpenInterval {
    N lo{};
    N hi{};

    bool contains(const N& t) const { return lo <= t && t < hi; }
    friend bool operator==(const HalfOpenInterval&, const HalfOpenInterval&) = default;
};

/// Start times forbidden for `owner` in any potential schedule: the union of
/// [tstar, tstar + p_j) over every crossover partner j that `owner` dominates
/// first. Stored sorted, disjoint and merged.
template <Number N>
class BannedSet {
public:
    BannedSet() = default;

    BannedSet(JobId owner, std::vector<HalfOpenInterval<N>> raw) : owner_(owner) {
        std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
        for (auto& iv : raw) {
            if (!(iv.lo < iv.hi)) continue;
            if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
                if (intervals_.back().hi < iv.hi) intervals_.back().hi = iv.hi;
            } else {
                intervals_.push_back(std::move(iv));
            }
        }
    }

    JobId owner() const noexcept { return owner_; }
    const std::vector<HalfOpenInterval<N>>& intervals() const noexcept { return intervals_; }
    bool empty() const noexcept { return intervals_.empty(); }

    bool contains(const N& t) const {
        // First interval with hi > t; t is banned iff it also starts at or before t.
        auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                                   [](const N& x, const auto& iv) { return x < iv.hi; });
        return it != intervals_.end() && it->lo <= t;
    }
    bool contains(Time t) const { return contains(from_time<N>(t)); }

private:
    JobId owner_ = -1;
    std::vector<HalfOpenInterval<N>> intervals_;
};

/// Banned start times of `alpha` imposed by `others`, keeping crossovers with
/// tstar in (0, horizon).
template <Number N>
BannedSet<N> banned_set(const Job& alpha, std::span<const Job> others, const N& horizon) {
    std::vector<HalfOpenInterval<N>> raw;
    for (const Job& j : others) {
        if (j.id == alpha.id) continue;
        PairRelation<N> rel = classify_pair<N>(alpha, j);
        if (!rel.is_crossover() || rel.dominant_before != alpha.id) continue;
        if (!(rel.tstar > 0 && rel.tstar < horizon)) continue;
        N hi = rel.tstar + from_time<N>(j.p);
        raw.push_back({std::move(rel.tstar), std::move(hi)});
    }
    return BannedSet<N>(alpha.id, std::move(raw));
}

/// Same, with the horizon taken as the total processing time of alpha and
/// `others`.
template <Number N>
BannedSet<N> banned_set(const Job& alpha, std::span<const Job> others) {
    Time horizon = alpha.p;
    for (const Job& j : others)
        if (j.id != alpha.id) horizon += j.p;
    return banned_set<N>(alpha, others, from_time<N>(horizon));
}

/// Partition of a window [t_o, t_e) by the points tstar_{alpha j} + p_j.
///
/// `jobs[k]` has rank `ranks[k]`: 1 for alpha, the 1-based position of its
/// cut in `cuts` when the crossover falls inside the window, and
/// `jobs.size() + 1` otherwise. Starting alpha in [cuts[q-1], cuts[q]) puts
/// exactly the jobs with rank <= q before it.
template <Number N>
struct CutGrid {
    JobId alpha = -1;
    Time t_o = 0;
    Time t_e = 0;
    std::vector<N> cuts;
    std::vector<JobId> jobs;
    std::vector<std::size_t> ranks;

    std::size_t outside_rank() const noexcept { return jobs.size() + 1; }

    std::optional<std::size_t> rank_of(JobId id) const {
        for (std::size_t k = 0; k < jobs.size(); ++k)
            if (jobs[k] == id) return ranks[k];
        return std::nullopt;
    }

    /// Number of subintervals [c_q, c_{q+1}).
    std::size_t subintervals() const noexcept { return cuts.empty() ? 0 : cuts.size() - 1; }
};

template <Number N>
CutGrid<N> cut_grid(const Job& alpha, std::span<const Job> window, Time t_o, Time t_e) {
    Time total = 0;
    bool has_alpha = false;
    for (const Job& j : window) {
        total += j.p;
        has_alpha = has_alpha || j.id == alpha.id;
    }
    if (!has_alpha) throw window_error("alpha " + std::to_string(alpha.id) + " is not in the window");
    if (t_o + total != t_e)
        throw window_error("window end " + std::to_string(t_e) + " does not match t_o + sum(p) = " +
                           std::to_string(t_o + total));

    const N lo = from_time<N>(t_o);
    const N hi = from_time<N>(t_e);

    CutGrid<N> grid;
    grid.alpha = alpha.id;
    grid.t_o = t_o;
    grid.t_e = t_e;
    grid.jobs.reserve(window.size());

    std::vector<std::optional<N>> cut_of(window.size());
    std::vector<N> inner;
    for (std::size_t k = 0; k < window.size(); ++k) {
        const Job& j = window[k];
        grid.jobs.push_back(j.id);
        if (j.id == alpha.id) continue;
        PairRelation<N> rel = classify_pair<N>(alpha, j);
        if (!rel.is_crossover() || rel.dominant_before != alpha.id) continue;
        // A tstar on the window boundary leaves alpha dominant on the whole
        // half-open window.
        if (!(lo < rel.tstar && rel.tstar < hi)) continue;
        N c = rel.tstar + from_time<N>(j.p);
        if (!(c < hi)) continue;
        inner.push_back(c);
        cut_of[k] = std::move(c);
    }

    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    grid.cuts.reserve(inner.size() + 2);
    grid.cuts.push_back(lo);
    for (auto& c : inner) grid.cuts.push_back(std::move(c));
    grid.cuts.push_back(hi);

    grid.ranks.resize(window.size(), grid.outside_rank());
    for (std::size_t k = 0; k < window.size(); ++k) {
        if (window[k].id == alpha.id) {
            grid.ranks[k] = 1;
        } else if (cut_of[k]) {
            auto it = std::lower_bound(grid.cuts.begin(), grid.cuts.end(), *cut_of[k]);
            grid.ranks[k] = static_cast<std::size_t>(it - grid.cuts.begin()) + 1;
        }
    }
    return grid;
}

enum class ViolationReason { global_dominance, crossover_late_start, crossover_early_window };

inline constexpr std::string_view to_string(ViolationReason r) noexcept {
    switch (r) {
        case ViolationReason::global_dominance: return "global-dominance";
        case ViolationReason::crossover_late_start: return "crossover-late-start";
        case ViolationReason::crossover_early_window: return "crossover-early-window";
    }
    return "unknown";
}

struct Violation {
    JobId earlier = -1;
    JobId later = -1;
    ViolationReason reason{};

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct PotentialCheck {
    bool valid = true;
    std::vector<Violation> violations;
};

/// Whether `earlier` starting at `t_earlier`, followed somewhere by `later`
/// at `t_later`, breaks the pair's dominance rule.
template <Number N>
std::optional<ViolationReason> pair_violation(const Job& earlier, Time t_earlier, const Job& later, Time t_later) {
    const PairRelation<N> rel = classify_pair<N>(earlier, later);
    switch (rel.kind) {
        case PairKind::equivalent:
        case PairKind::first_dominates:
            return std::nullopt;
        case PairKind::second_dominates:
            return ViolationReason::global_dominance;
        case PairKind::crossover:
            break;
    }
    if (rel.dominant_before == earlier.id) {
        // `later` rules [tstar, inf); i started inside it.
        if (!(from_time<N>(t_earlier) < rel.tstar)) return ViolationReason::crossover_late_start;
    } else {
        // `later` rules [0, tstar); the exchange window [t_i, t_j - p_i] lies in it.
        if (from_time<N>(t_later - earlier.p) < rel.tstar) return ViolationReason::crossover_early_window;
    }
    return std::nullopt;
}

/// Checks every ordered pair of `order` against the dominance rule.
template <Number N>
PotentialCheck is_potential(const Instance& inst, std::span<const JobId> order, Time base = 0) {
    check_permutation(inst.size(), order);
    const std::vector<Time> starts = start_times(inst, order, base);
    PotentialCheck out;
    for (std::size_t a = 0; a < order.size(); ++a) {
        const Job& i = inst[order[a]];
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const Job& j = inst[order[b]];
            if (auto r = pair_violation<N>(i, starts[i.id], j, starts[j.id]))
                out.violations.push_back({i.id, j.id, *r});
        }
    }
    out.valid = out.violations.empty();
    return out;
}

}  // namespace refuel

#endif
