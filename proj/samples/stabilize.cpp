// Walk a shifted pentagonal form through Watson steps until it is stable
// at every prime outside the conductor.
#include "polyreg/watson.hpp"

#include <iostream>

namespace {
void print(const polyreg::ShiftedForm& g) {
    std::cout << "c=" << g.c << " a=(";
    for (std::size_t i = 0; i < g.rank(); ++i) std::cout << (i ? "," : "") << g.coeffs[i];
    std::cout << ") alpha=(";
    for (std::size_t i = 0; i < g.rank(); ++i) std::cout << (i ? "," : "") << g.shifts[i];
    std::cout << ")\n";
}
}  // namespace

int main() {
    const polyreg::ShiftedForm g(6, {1, 25, 25}, {1, 1, 1});
    print(g);
    const auto tr = polyreg::stabilize_traced(g);
    for (const auto& s : tr.steps) std::cout << "step at p=" << s.p << " (q=" << s.q << ", s=" << s.s << ")\n";
    print(tr.result);
    return 0;
}
