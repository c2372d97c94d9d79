// Prints K0 and K1 for a few small dilation matrices.

#include "ktorus/ktheory.hpp"

#include <iostream>

int main() {
    using ktorus::IntegerMatrix;
    const IntegerMatrix examples[] = {
        {{0, 1}, {2, 0}}, {{1, 1}, {-1, 1}}, {{2, 1}, {-1, 2}}, {{2, -1}, {1, -3}}, {{3}}, {{-3}},
    };
    for (const auto& a : examples) {
        const auto r = ktorus::kgroups(a);
        std::cout << ktorus::to_string(a) << "  det " << r.det << "\n"
                  << "  K0 = " << ktorus::to_string(r.k0) << "\n"
                  << "  K1 = " << ktorus::to_string(r.k1) << "\n";
        for (const auto& note : r.notes)
            std::cout << "  " << note << "\n";
    }
}
