#include "support.hpp"

#include <gtest/gtest.h>

using namespace refuel;
using namespace refuel::testing;

namespace {

Instance two_jobs() { return Instance::from_pairs({{2, 12.0}, {9, 162.0}}); }

AStarOptions pruned(bool on) {
    AStarOptions o;
    o.prune = on;
    return o;
}

}  // namespace

TEST(BruteForce, Examples) {
    const auto r = brute_force<Q>(two_jobs());
    EXPECT_EQ(r.payoff, q(228, 11));
    EXPECT_EQ(r.order, (std::vector<JobId>{0, 1}));

    const auto one = brute_force<Q>(Instance::from_pairs({{4, 6.0}}));
    EXPECT_EQ(one.payoff, q(3, 2));
    EXPECT_EQ(one.order, (std::vector<JobId>{0}));

    const Instance same = Instance::from_pairs({{1, 1.0}, {1, 1.0}, {1, 1.0}});
    const auto s = brute_force<Q>(same);
    EXPECT_EQ(s.payoff, q(11, 6));
    EXPECT_EQ(s.order, (std::vector<JobId>{0, 1, 2}));
}

TEST(BruteForce, SizeGuard) {
    std::mt19937_64 rng(2);
    const Instance big = random_instance(rng, 11, 0.5);
    EXPECT_THROW(brute_force<double>(big), size_guard_error);
    EXPECT_THROW(count_potential_brute<double>(big), size_guard_error);
    const Instance ten = random_instance(rng, 4, 0.5);
    BaselineOptions o;
    o.override_size_guard = true;
    EXPECT_NO_THROW(brute_force<double>(ten, o));
}

TEST(BruteForce, MatchesOracleAndPicksLexSmallest) {
    std::mt19937_64 rng(314);
    for (int rep = 0; rep < 60; ++rep) {
        const Instance inst = random_instance(rng, 2 + rep % 6, 0.6);
        const auto r = brute_force<Q>(inst);
        EXPECT_EQ(r.payoff, brute_optimum(inst));
        for (const auto& p : all_permutations(inst.size())) {
            if (payoff_oracle(inst, p) == r.payoff) {
                EXPECT_EQ(p, r.order);
                break;
            }
        }
    }
}

TEST(CountPotential, Examples) {
    EXPECT_EQ(count_potential_brute<Q>(two_jobs()), 1u);
    EXPECT_EQ(count_potential_brute<Q>(Instance::from_pairs({{1, 10.0}, {2, 2.0}})), 1u);
    EXPECT_EQ(count_potential_brute<Q>(Instance::from_pairs({{3, 5.0}, {3, 5.0}, {3, 5.0}})), 6u);
}

TEST(CountPotential, MatchesUnprunedFilter) {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 80; ++rep) {
        const Instance inst = random_instance(rng, 2 + rep % 6, rep % 2 ? 1.0 : 0.2);
        std::uint64_t want = 0;
        for (const auto& p : all_permutations(inst.size())) want += is_potential<Q>(inst, p).valid;
        EXPECT_EQ(count_potential_brute<Q>(inst), want);
        EXPECT_EQ(count_potential_brute<double>(inst), want);
    }
}

TEST(Greedy, Examples) {
    const Instance inst = Instance::from_pairs({{2, 12.0}, {9, 162.0}, {1, 1.0}});
    EXPECT_EQ(greedy_potential<Q>(inst), (std::vector<JobId>{0, 1, 2}));
    EXPECT_EQ(greedy_potential<Q>(Instance::from_pairs({{7, 2.0}})), (std::vector<JobId>{0}));

    const Instance unit = Instance::from_pairs({{5, 5.0}, {2, 2.0}, {9, 9.0}, {1, 1.0}});
    const auto g = greedy_potential<Q>(unit);
    EXPECT_EQ(g, (std::vector<JobId>{3, 1, 0, 2}));
    EXPECT_EQ(schedule_payoff<Q>(unit, g), brute_optimum(unit));
}

TEST(Greedy, OutputIsPotential) {
    std::mt19937_64 rng(1234);
    for (int rep = 0; rep < 300; ++rep) {
        const Instance inst = random_instance(rng, 1 + rep % 50, 0.1 + 0.003 * rep);
        EXPECT_TRUE(is_potential<Q>(inst, greedy_potential<Q>(inst)).valid);
        EXPECT_TRUE(is_potential<Q>(inst, greedy_potential<double>(inst)).valid);
    }
}

// Identical jobs and exact ties at integer times must not break potentiality.
TEST(Greedy, TiesStayPotential) {
    const Instance tie = Instance::from_pairs({{1, 3.0}, {2, 8.0}, {2, 8.0}, {1, 3.0}});
    EXPECT_TRUE(is_potential<Q>(tie, greedy_potential<Q>(tie)).valid);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> pd(1, 4), wd(1, 12);
    for (int rep = 0; rep < 400; ++rep) {
        std::vector<std::pair<Time, double>> pw;
        for (int k = 0; k < 6; ++k) pw.emplace_back(pd(rng), wd(rng));
        const Instance inst = Instance::from_pairs(pw);
        EXPECT_TRUE(is_potential<Q>(inst, greedy_potential<Q>(inst)).valid);
    }
}

TEST(AStar, Examples) {
    const auto r = astar<Q>(two_jobs());
    EXPECT_EQ(r.payoff, q(228, 11));
    EXPECT_EQ(r.order, (std::vector<JobId>{0, 1}));
    const auto p = astar<Q>(two_jobs(), pruned(true));
    EXPECT_EQ(p.payoff, q(228, 11));
}

TEST(AStar, MatchesBruteForce) {
    std::mt19937_64 rng(555);
    for (int rep = 0; rep < 120; ++rep) {
        const Instance inst = random_instance(rng, 1 + rep % 9, rep % 3 == 0 ? 1.0 : 0.3);
        const Q best = brute_force<Q>(inst).payoff;
        for (bool prune : {false, true}) {
            const auto a = astar<Q>(inst, pruned(prune));
            EXPECT_EQ(a.payoff, best);
            EXPECT_EQ(payoff_oracle(inst, a.order), best);
            const auto f = astar<double>(inst, pruned(prune));
            EXPECT_TRUE(near(f.payoff, best.convert_to<double>()));
        }
    }
}

TEST(AStar, PruneKeepsPayoffAndShrinksSearch) {
    std::mt19937_64 rng(14);
    for (int rep = 0; rep < 50; ++rep) {
        const Instance inst = random_instance(rng, 14, 0.1 + 0.018 * rep);
        const auto off = astar<double>(inst, pruned(false));
        const auto on = astar<double>(inst, pruned(true));
        EXPECT_TRUE(near(off.payoff, on.payoff, 1e-12));
        EXPECT_LE(on.nodes, off.nodes);
        EXPECT_EQ(fast_schedule<Q>(inst).payoff, astar<Q>(inst, pruned(true)).payoff);
    }
}

TEST(AStar, SizeGuardAndStateLimit) {
    std::mt19937_64 rng(3);
    const Instance big = random_instance(rng, 31, 0.5);
    EXPECT_THROW(astar<double>(big), size_guard_error);
    AStarOptions unguarded;
    unguarded.override_size_guard = true;
    EXPECT_THROW(astar<double>(random_instance(rng, 65, 0.5), unguarded), size_guard_error);
    AStarOptions tiny;
    tiny.max_states = 10;
    EXPECT_THROW(astar<double>(random_instance(rng, 16, 1.0), tiny), state_limit_error);
}

// sum w/(t_S + p) never underestimates the best completion of the rest.
TEST(AStar, HeuristicIsAdmissible) {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 40; ++rep) {
        const Instance inst = random_instance(rng, 6, 0.7);
        const std::uint64_t mask = rng() & 0x3f;
        Time t = 0;
        std::vector<Job> rest;
        for (const Job& j : inst.jobs()) {
            if (mask >> j.id & 1) t += j.p;
            else rest.push_back(j);
        }
        Q h = 0;
        for (const Job& j : rest) h += Q(j.w) / Q(static_cast<long long>(t + j.p));
        if (rest.empty()) continue;
        const Instance sub = [&] {
            std::vector<std::pair<Time, double>> pw;
            for (const Job& j : rest) pw.emplace_back(j.p, j.w);
            return Instance::from_pairs(pw);
        }();
        Q best = -1;
        for (const auto& p : all_permutations(sub.size())) best = std::max(best, payoff_oracle(sub, p, t));
        EXPECT_GE(h, best);
    }
}
