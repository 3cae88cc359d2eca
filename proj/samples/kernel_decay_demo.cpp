// Prints sup |K_t| for the Schroedinger and fourth-order propagators in d = 2
// and the fitted decay exponent over [4, 64].
#include <cstdio>

#include "dispersive/dispersive.hpp"

int main() {
    using namespace dispersive;
    for (double m : {2.0, 4.0}) {
        const Symbol phi = fractional_power_symbol(m, 2, 1);
        const KernelSynthesizer K(phi, decay_grid(2, 1, m, 64.0));
        std::vector<std::pair<double, double>> samples;
        for (double t : log_spaced_times(4.0, 64.0, 16))
            samples.emplace_back(t, K.sup(t));
        const auto fit = fit_decay(samples, 4.0, 64.0);
        std::printf("%s\n", phi.name().c_str());
        for (const auto& [t, v] : samples)
            std::printf("  t=%8.3f  sup=%.6e\n", t, v);
        std::printf("  exponent %.4f (expected %.1f)\n", fit.exponent, -0.5 * phi.hessian_rank());
    }
}
