#ifndef SPECFP_SAMPLING_HPP
#define SPECFP_SAMPLING_HPP

#include <cstdint>

#include "specfp/geometry.hpp"

namespace specfp {

/// Deterministic random real-valued state: conjugate-symmetric band-limited
/// coefficients with decay 1/(1+|xi|)^3, scaled to the requested H2 norm.
StateVector random_state(const LatticePtr& lattice, int n_components, std::uint64_t seed,
                         double target_h2 = 1.0);

}  // namespace specfp

#endif
