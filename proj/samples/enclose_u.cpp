// Encloses u(n) from the truncated exact formula for p2 and compares with the
// exact value.
#include "unimodal/exact_counts.hpp"
#include "unimodal/rademacher.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    const long n = argc > 1 ? std::atol(argv[1]) : 2500;
    auto e = unimodal::u_enclosure(30, 75, n, 160);
    auto exact = unimodal::u_table(n).values[n];
    std::cout << "u(" << n << ") in [" << e.lower.to_string(30) << ", " << e.upper.to_string(30) << "]\n";
    std::cout << "exact " << exact << (e.contains(exact) ? " (inside)\n" : " (OUTSIDE)\n");
    return e.contains(exact) ? 0 : 1;
}
