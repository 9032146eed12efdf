#ifndef SPECFP_ORACLE_HPP
#define SPECFP_ORACLE_HPP

#include "specfp/solver.hpp"

namespace specfp {

/// Dense real-space evaluation of the fixed-point map on the interval:
/// trapezoid-quadrature circular convolution at every grid point followed by
/// an eigenbasis solve with naive quadrature sums. Shares no code with the
/// spectral solve path; restricted to small grids (mode cutoff <= 32).
StateVector brute_force_oracle(const std::vector<GridField>& v, const SystemSpec& system);

}  // namespace specfp

#endif
