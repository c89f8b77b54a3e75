#ifndef REFUEL_CORE_HPP
#define REFUEL_CORE_HPP

#include "refuel/errors.hpp"
#include "refuel/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace refuel {

using JobId = std::int32_t;

/// One airplane: consumption rate (processing time) `p` and tank volume
/// (weight) `w`.
struct Job {
    JobId id = 0;
    Time p = 1;
    double w = 1.0;

    friend bool operator==(const Job&, const Job&) = default;
};

/// Generator provenance carried by instance files. Absent fields are written
/// as defaults.
struct InstanceMeta {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// A validated job set. Ids are exactly 0..n-1 and `jobs()[k].id == k`.
class Instance {
public:
    Instance() = default;

    explicit Instance(std::vector<Job> jobs, InstanceMeta meta = {}) : jobs_(std::move(jobs)), meta_(meta) {
        std::sort(jobs_.begin(), jobs_.end(), [](const Job& a, const Job& b) { return a.id < b.id; });
        horizon_ = 0;
        for (std::size_t k = 0; k < jobs_.size(); ++k) {
            const Job& j = jobs_[k];
            if (j.id != static_cast<JobId>(k))
                throw invalid_instance("job ids must be exactly 0..n-1");
            if (j.p < 1)
                throw invalid_instance("job " + std::to_string(j.id) + ": processing time must be >= 1");
            if (!(j.w > 0.0) || !std::isfinite(j.w))
                throw invalid_instance("job " + std::to_string(j.id) + ": weight must be positive and finite");
            horizon_ += j.p;
        }
    }

    /// Builds an instance from (p, w) pairs, assigning ids in order.
    static Instance from_pairs(std::span<const std::pair<Time, double>> pw, InstanceMeta meta = {}) {
        std::vector<Job> jobs;
        jobs.reserve(pw.size());
        for (std::size_t k = 0; k < pw.size(); ++k)
            jobs.push_back({static_cast<JobId>(k), pw[k].first, pw[k].second});
        return Instance(std::move(jobs), meta);
    }
    static Instance from_pairs(std::initializer_list<std::pair<Time, double>> pw, InstanceMeta meta = {}) {
        return from_pairs(std::span<const std::pair<Time, double>>(pw.begin(), pw.size()), meta);
    }

    std::size_t size() const noexcept { return jobs_.size(); }
    bool empty() const noexcept { return jobs_.empty(); }
    const std::vector<Job>& jobs() const noexcept { return jobs_; }
    const Job& job(JobId id) const { return jobs_.at(static_cast<std::size_t>(id)); }
    const Job& operator[](JobId id) const noexcept { return jobs_[static_cast<std::size_t>(id)]; }

    /// Total processing time.
    Time horizon() const noexcept { return horizon_; }
    const InstanceMeta& meta() const noexcept { return meta_; }

    std::vector<JobId> ids() const {
        std::vector<JobId> out(jobs_.size());
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<JobId>(k);
        return out;
    }

    friend bool operator==(const Instance& a, const Instance& b) { return a.jobs_ == b.jobs_; }

private:
    std::vector<Job> jobs_;
    InstanceMeta meta_;
    Time horizon_ = 0;
};

/// Throws malformed_permutation unless `order` lists every id of an
/// n-job instance exactly once.
inline void check_permutation(std::size_t n, std::span<const JobId> order) {
    if (order.size() != n)
        throw malformed_permutation("order has " + std::to_string(order.size()) + " entries, expected " +
                                    std::to_string(n));
    std::vector<bool> seen(n, false);
    for (JobId id : order) {
        if (id < 0 || static_cast<std::size_t>(id) >= n)
            throw malformed_permutation("unknown job id " + std::to_string(id));
        if (seen[static_cast<std::size_t>(id)])
            throw malformed_permutation("duplicate job id " + std::to_string(id));
        seen[static_cast<std::size_t>(id)] = true;
    }
}

/// phi_j(t) = w / (p (p + t)). Comparing two jobs' phi at t decides which
/// one should go first when they are adjacent at t.
template <Number N>
N phi(const Job& job, const N& t) {
    const N w = numeric_traits<N>::from_double(job.w);
    const N p = from_time<N>(job.p);
    return w / (p * (p + t));
}

/// Start time per job id, derived from the processing order.
inline std::vector<Time> start_times(const Instance& inst, std::span<const JobId> order, Time base = 0) {
    std::vector<Time> starts(inst.size(), 0);
    Time t = base;
    for (JobId id : order) {
        starts[static_cast<std::size_t>(id)] = t;
        t += inst[id].p;
    }
    return starts;
}

/// Sum of w_j / C_j over the order, summed in processing order. Larger is
/// better; the classical cost is the negation.
template <Number N>
N schedule_payoff(const Instance& inst, std::span<const JobId> order, Time base = 0) {
    check_permutation(inst.size(), order);
    N total = 0;
    Time t = base;
    for (JobId id : order) {
        const Job& j = inst[id];
        t += j.p;
        total += numeric_traits<N>::from_double(j.w) / from_time<N>(t);
    }
    return total;
}

/// F(..i j..) - F(..j i..) for adjacent jobs with the pair starting at t.
/// Equals p_i p_j / (p_i + p_j + t) * (phi_i(t) - phi_j(t)).
template <Number N>
N swap_delta(const Job& i, const Job& j, const N& t) {
    const N pi = from_time<N>(i.p);
    const N pj = from_time<N>(j.p);
    return pi * pj / (pi + pj + t) * (phi(i, t) - phi(j, t));
}

/// Reverses a processing order into the airplane drop-out order.
inline std::vector<JobId> to_dropout_order(std::span<const JobId> order) {
    return {order.rbegin(), order.rend()};
}

/// A processing order with its start times and payoff.
template <Number N>
struct Schedule {
    std::vector<JobId> order;
    std::vector<Time> starts;  // indexed by job id
    N payoff{};

    static Schedule make(const Instance& inst, std::vector<JobId> order, Time base = 0) {
        Schedule s;
        s.payoff = schedule_payoff<N>(inst, order, base);
        s.starts = start_times(inst, order, base);
        s.order = std::move(order);
        return s;
    }
};

}  // namespace refuel

#endif
