// Walks through one verification of the truncated recurrence family:
// builds the term schedule for m = 1, prints the per-term counts around
// the worked example at n = 29, and then sweeps the residual to 400.
//
// Build: cmake --build build && ./build/demo/verify_walkthrough

#include <cstdint>
#include <iostream>

#include "qpent/identity.hpp"

int main() {
    using namespace qpent;

    const identity_schedule s = schedule_for(1);
    std::cout << "schedule for m = 1 (modulus " << s.modulus << "):\n";
    for (const auto& term : s.terms) {
        std::cout << "  " << (term.sign > 0 ? '+' : '-') << " p(n - " << term.shift
                  << " | parts !== ";
        for (std::size_t i = 0; i < term.restriction.forbidden.size(); ++i)
            std::cout << (i ? "," : "") << term.restriction.forbidden[i];
        std::cout << " (mod " << term.restriction.modulus << "))\n";
    }

    const schedule_tables tables(s, 31);
    std::cout << "\n   n   residual\n";
    for (std::int64_t n = 26; n <= 31; ++n)
        std::cout << "  " << n << "   " << residual(n, s, tables) << "\n";

    const verification_report rep = verify_counting(1, 400);
    std::cout << "\nsweep to 400: " << (rep.passed ? "all residuals zero for n >= 1" : "FAILED")
              << " (residual at n = 0 is " << rep.residuals.at(0) << ")\n";
    return rep.passed ? 0 : 1;
}
