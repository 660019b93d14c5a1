// Prints u(n) and p2(n) for small n and checks the two expansions of u agree.
#include "unimodal/exact_counts.hpp"

#include <iostream>

int main()
{
    const long n_max = 30;
    auto p2 = unimodal::p2_table(n_max);
    auto u = unimodal::u_from_p2(p2, n_max);
    auto oracle = unimodal::u_series_oracle(n_max);
    for (long n = 0; n <= n_max; ++n)
        std::cout << n << '\t' << p2.values[n] << '\t' << u.values[n] << '\n';
    std::cout << (u.values == oracle.values ? "expansions agree\n" : "MISMATCH\n");
    return u.values == oracle.values ? 0 : 1;
}
