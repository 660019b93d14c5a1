// Prints the first asymptotic coefficients and the error constant for N = 4.
#include "unimodal/asymptotic.hpp"

#include <iostream>

int main()
{
    auto set = unimodal::base_coefficients(4);
    for (std::size_t m = 0; m < set.A.size(); ++m) std::cout << "A(" << m << ") = " << set.A[m].mid_string(25) << '\n';
    std::cout << "C_4 = " << set.C.mid_string(8) << ", valid for n >= " << set.cutoff << '\n';
}
