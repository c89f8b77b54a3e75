// Two jobs whose priority flips at t = 1.5: the one that leads at time 0
// must go first, and the solver finds exactly one potential schedule.
#include "refuel/refuel.hpp"

#include <iostream>

using namespace refuel;

int main() {
    const Instance inst = Instance::from_pairs({{2, 12.0}, {9, 162.0}});
    const Job& a = inst[0];
    const Job& b = inst[1];

    const auto rel = classify_pair<Rational>(a, b);
    std::cout << "phi_0(0) = " << to_exact_string(phi<Rational>(a, Rational(0))) << ", phi_1(0) = "
              << to_exact_string(phi<Rational>(b, Rational(0))) << "\n";
    if (rel.is_crossover())
        std::cout << "curves cross at t* = " << to_exact_string(rel.tstar) << "; job " << rel.dominant_before
                  << " leads before it\n";

    for (const std::vector<JobId>& order : {std::vector<JobId>{0, 1}, std::vector<JobId>{1, 0}}) {
        const auto check = is_potential<Rational>(inst, order);
        std::cout << "order " << order[0] << "," << order[1] << ": payoff "
                  << to_exact_string(schedule_payoff<Rational>(inst, order)) << (check.valid ? " (potential)" : "");
        for (const auto& v : check.violations) std::cout << " violates " << to_string(v.reason);
        std::cout << "\n";
    }

    const auto best = fast_schedule<Rational>(inst);
    std::cout << "fast_schedule: payoff " << to_exact_string(best.payoff) << ", leaves " << best.leaves << "\n";
    return 0;
}
