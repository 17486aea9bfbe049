// Sums of three triangular numbers cover every n up to a bound, and the
// local engine agrees with the global search on every value.
#include "polyreg/regcheck.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    const std::int64_t N = argc > 1 ? std::atoll(argv[1]) : 10000;
    const polyreg::MGonalForm f(3, {1, 1, 1});
    const auto rep = polyreg::regularity_scan(f, N);
    std::cout << "p3(1,1,1) up to " << N << ": " << rep.locally_represented_count << " locally represented, "
              << rep.verdict() << "\n";
    if (auto w = polyreg::represents_globally(f, N))
        std::cout << N << " = T(" << (*w)[0] << ") + T(" << (*w)[1] << ") + T(" << (*w)[2] << ")\n";
    return rep.regular_up_to_bound() ? 0 : 1;
}
