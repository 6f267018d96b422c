// Prints the low-lying levels of the order-k oscillator Hamiltonian.
#include <cstdio>
#include <cstdlib>

#include "wksusy/susy_engine.hpp"

int main(int argc, char** argv) {
    const int k = argc > 1 ? std::atoi(argv[1]) : 3;
    const int d = argc > 2 ? std::atoi(argv[2]) : 30;

    const auto g = wksusy::build_generators(wksusy::StructureSpec::oscillator(k), wksusy::GradedBasis(k, d));
    const auto D = wksusy::build_doublet(g);
    const auto pattern = wksusy::degeneracy_pattern(D.H, 2 * k);

    std::printf("k = %d, d = %d, axioms %s (max residual %.2e)\n", k, d, D.axiom_report.all_pass() ? "hold" : "FAIL",
                D.axiom_report.max_residual());
    for (size_t i = 0; i < pattern.levels.size() && i < 8; ++i)
        std::printf("  E = %8.3f  x%d\n", pattern.levels[i].energy, pattern.levels[i].multiplicity);
    return D.axiom_report.all_pass() ? 0 : 1;
}
