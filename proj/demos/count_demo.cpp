// Counts a small class three ways: brute force, the weighted transfer
// pipeline, and the closed form, printing the coefficients side by side.

#include <iostream>

#include "permclass/gf.hpp"

using namespace permclass;

int main() {
    const int depth = 7;
    auto oracle = count_class(basis_Aprime(), depth);
    Series pipeline = gf_class_Aprime(depth, Route::automaton);
    Series closed = gf_class_Aprime(depth, Route::closed_form);

    std::cout << "n  brute  pipeline  closed\n";
    for (int n = 0; n <= depth; ++n)
        std::cout << n << "  " << oracle.counts[n] << "  " << pipeline[n].get_str() << "  "
                  << closed[n].get_str() << "\n";
    return 0;
}
