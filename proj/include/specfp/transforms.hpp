#ifndef SPECFP_TRANSFORMS_HPP
#define SPECFP_TRANSFORMS_HPP

#include <span>

#include "specfp/geometry.hpp"

namespace specfp {

struct RegimeTag;  // kernels.hpp

/// Discrete counterpart of the continuum transforms:
///   periodic axis    G_n    = int_0^{2pi} G(x) e^{-inx} / sqrt(2pi) dx
///   continuous axis  G^(p)  = (2pi)^{-1/2} int G(x) e^{-ipx} dx on [-L, L]
/// evaluated by the trapezoid rule on the grid; multi-axis domains compose
/// the rules per axis. The pair below is an exact inverse pair on the grid.
SpectralField forward_transform(const GridField& field);

/// Inverse transform back to real samples. The imaginary residue of the
/// reconstruction must stay below `imag_tolerance`, otherwise the input was
/// not conjugate-symmetric and a TransformError is thrown.
GridField inverse_transform(const SpectralField& field, double imag_tolerance = 1e-10);

/// Largest |Im| of the complex reconstruction (diagnostic).
double imaginary_residue(const SpectralField& field);

bool is_conjugate_symmetric(const SpectralField& field, double tolerance = 1e-10);

/// Sobolev norm sqrt( sum_k sum_xi (1 + |xi|^4) |u_{k,xi}|^2 w ), the spectral
/// form of sum_k { ||u_k||_{L2}^2 + ||Delta u_k||_{L2}^2 }.
double h2_norm(const StateVector& state);
double h2_distance(const StateVector& a, const StateVector& b);

double l2_norm(const SpectralField& field);
double l2_norm(const GridField& field);  // grid quadrature

/// Second-derivative (full Laplacian) samples of one component.
GridField laplacian_field(const SpectralField& field);

/// Zero the resonant coefficients of interval case-II components (modes
/// +-n_k) and case-III components (mode 0). Other components pass through.
StateVector project_constrained(const StateVector& state, std::span<const RegimeTag> regimes);

StateVector state_sub(const StateVector& a, const StateVector& b);

}  // namespace specfp

#endif
