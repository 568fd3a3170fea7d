// Decomposes a long simple permutation into its glue factors, encodes it,
// and reads it back.

#include <iostream>

#include "permclass/codec.hpp"

using namespace permclass;

int main() {
    Perm pi = Perm::parse("2 5 9 3 1 4 8 6 10 12 17 7 11 16 13 15 19 22 20 18 14 21");
    std::cout << "pi      = " << pi.str() << "\n";

    GlueDecomposition gd = glue_decompose(pi);
    std::cout << "factors =";
    for (size_t k = 0; k < gd.factors.size(); ++k) {
        std::cout << " " << gd.factors[k].str();
        if (k < gd.types.size()) std::cout << "  [" << gd.types[k].str() << "]";
    }
    std::cout << "\n";

    Word w = phi_prime(pi);
    std::cout << "word    = " << word_str(w) << "\n";
    std::cout << "back    = " << psi_prime(w).str() << "\n";
    return 0;
}
