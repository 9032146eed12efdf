#ifndef SPECFP_NONLINEARITY_HPP
#define SPECFP_NONLINEARITY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "specfp/expr.hpp"
#include "specfp/geometry.hpp"

namespace specfp {

enum class SigmaKind { None, Tanh, Sin };

/// Catalog nonlinearity F_k(u, x) = epsilon * sigma(<coeffs, u>) + forcing(x)
/// with sigma bounded and 1-Lipschitz, so the Lipschitz and growth constants
/// of the full map are known in closed form.
struct NonlinearitySpec {
    double epsilon = 0.0;
    SigmaKind sigma = SigmaKind::Tanh;
    std::vector<double> coeffs;  // functional c_k over all components; empty = 0
    Expr forcing;                // g_k(x)
};

double sigma_eval(SigmaKind kind, double t);

/// Exact Lipschitz bound of u -> (epsilon_k sigma(<c_k,u>))_k in the
/// Euclidean norms: the spectral norm of the matrix with rows epsilon_k c_k^T.
/// Coincides with max_k |epsilon_k| |c_k| when the functionals are orthogonal
/// (in particular for single-component couplings).
double analytic_lipschitz(std::span<const NonlinearitySpec> specs);

/// Growth constant K of |F(u,x)| <= K|u| + h(x); equals the Lipschitz bound
/// for this catalog.
double growth_constant(std::span<const NonlinearitySpec> specs);

/// Samples of h(x) = sqrt(sum_k (|g_k(x)| + |epsilon_k|)^2).
GridField growth_envelope(std::span<const NonlinearitySpec> specs, const LatticePtr& lattice);

/// Pointwise evaluation of all F_k over grid-sampled state components.
std::vector<GridField> eval_nonlinearity(std::span<const NonlinearitySpec> specs,
                                         const std::vector<GridField>& state);

struct LipschitzCertificate {
    double analytic = 0.0;
    double empirical = 0.0;
    int samples = 0;
    bool pass = false;  // empirical <= analytic + 1e-9
};

/// Empirical check of the Lipschitz constant over random pairs drawn from
/// the component box [-10, 10]^{N2} at random grid points.
LipschitzCertificate lipschitz_certificate(std::span<const NonlinearitySpec> specs,
                                           const LatticePtr& lattice, int samples,
                                           std::uint64_t seed);

}  // namespace specfp

#endif
