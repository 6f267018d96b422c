#include <cmath>
#include <cstdio>

#include "wksusy/coherent_states.hpp"

int main() {
    const int k = 3;
    const wksusy::cplx z(0.8, 0.3);
    const auto st = wksusy::construct_supercoherent(z, k, 24);
    const auto T = wksusy::sector_table(wksusy::build_generators(wksusy::StructureSpec::oscillator(k), wksusy::GradedBasis(k, 24)));

    std::printf("lowering residual %.2e\n", wksusy::lowering_eigen_check(st).overall.residual);
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
        const auto e = wksusy::evolution_check(st, T, t);
        std::printf("t = %.2f  sector residuals:", t);
        for (const auto& s : e.sectors) std::printf(" %.1e", s.residual);
        std::printf("  literal s=0 reading off by %.3f\n", e.sectors.front().literal_residual);
    }
}
