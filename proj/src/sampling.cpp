#include "specfp/sampling.hpp"

#include <cmath>
#include <random>

#include "specfp/transforms.hpp"

namespace specfp {

StateVector random_state(const LatticePtr& lattice, int n_components, std::uint64_t seed,
                         double target_h2) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const FrequencyLattice& lat = *lattice;

    StateVector state(lattice, n_components);
    for (int k = 0; k < n_components; ++k) {
        auto& coef = state.components[static_cast<std::size_t>(k)].coef;
        for (int i = 0; i < lat.size(); ++i) {
            // Skip Nyquist rows (offset 0 along any axis) so every mode has a
            // conjugate partner on the lattice.
            int offs[4];
            lat.offsets(i, offs);
            bool nyquist = false;
            for (int s = 0; s < lat.num_axes(); ++s) nyquist = nyquist || offs[s] == 0;
            if (nyquist) continue;

            const int j = lat.conjugate_index(i);
            if (j < i) continue;  // partner already drawn
            const double amp = 1.0 / std::pow(1.0 + lat.magnitude(i), 3);
            if (j == i) {
                coef[static_cast<std::size_t>(i)] = amp * unit(rng);
            } else {
                const std::complex<double> c(amp * unit(rng), amp * unit(rng));
                coef[static_cast<std::size_t>(i)] = c;
                coef[static_cast<std::size_t>(j)] = std::conj(c);
            }
        }
    }

    const double norm = h2_norm(state);
    if (norm > 0.0 && target_h2 > 0.0) {
        const double scale = target_h2 / norm;
        for (auto& comp : state.components)
            for (auto& c : comp.coef) c *= scale;
    }
    return state;
}

}  // namespace specfp
