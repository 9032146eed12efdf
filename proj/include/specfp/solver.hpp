#ifndef SPECFP_SOLVER_HPP
#define SPECFP_SOLVER_HPP

#include <string>
#include <vector>

#include "specfp/geometry.hpp"
#include "specfp/kernels.hpp"
#include "specfp/multipliers.hpp"
#include "specfp/nonlinearity.hpp"

namespace specfp {

struct SystemComponent {
    KernelSpec kernel;  // carries the regime tag
    NonlinearitySpec nonlinearity;
};

/// The full system: components 1..n_plus carry the |xi| - a_k multiplier
/// (natality at least mortality), the rest carry |xi| + a_k.
struct SystemSpec {
    Geometry geometry;
    int n_plus = 1;  // N1
    std::vector<SystemComponent> components;

    int n_total() const { return static_cast<int>(components.size()); }
    std::vector<RegimeTag> regimes() const;
    std::vector<NonlinearitySpec> nonlinearities() const;
    std::vector<KernelSpec> kernels() const;

    /// Sign blocks, regime/domain consistency, periodicity of forcings,
    /// coefficient lengths. Throws ConfigError.
    void validate() const;
};

/// Geometry constant C in the solve formulas u^ = C G^ f^ / D:
/// (2pi)^{d/2} whole space, sqrt(2pi) interval, (2pi)^{(d+1)/2} layer.
double solve_constant(const GeometryConfig& config);

/// Prefactor of the contraction bound: q = sqrt(2) * C * (M|P|R) * L.
double contraction_prefactor(const GeometryConfig& config);

/// Constant of the norm bound ||T v||_{H2}^2 <= c * S^2 * sum_k ||F_k||_{L2}^2.
double norm_bound_constant(const GeometryConfig& config);

struct ContractionCertificate {
    double system_constant = 0.0;  // M, P or R
    double lipschitz = 0.0;
    double factor = 0.0;           // q
    bool certified = false;        // q < 1 and no blow-up
    bool blow_up = false;
};

struct IterationTrace {
    std::vector<double> increments;  // ||v_{j+1} - v_j||_{H2}
    std::vector<double> ratios;      // increments[j] / increments[j-1]
    double seconds = 0.0;
    int iterations() const { return static_cast<int>(increments.size()); }
};

struct Solution {
    StateVector state;
    bool converged = false;
    double residual_value = 0.0;
    ContractionCertificate certificate;
    IterationTrace trace;
    bool nontrivial_guaranteed = false;
};

/// Precomputed spectral machinery for one system: kernel spectra and the
/// pointwise solve multipliers C * G^(xi) / D(xi) per component.
class SystemOperator {
public:
    explicit SystemOperator(const SystemSpec& system, const ResonanceOptions& options = {});

    /// u^_k = C * G^_k * f^_k / D_k given the transformed right-hand sides.
    StateVector linear_solve(const std::vector<SpectralField>& rhs_hat) const;

    /// One application of the fixed-point map: inverse transform, evaluate
    /// the nonlinearity, transform, linear solve.
    StateVector apply_map(const StateVector& v) const;

    const SpectralField& kernel_hat(int k) const { return kernel_hats_[static_cast<std::size_t>(k)]; }
    const SystemSpec& system() const { return system_; }

private:
    SystemSpec system_;
    std::vector<SpectralField> kernel_hats_;
    std::vector<std::vector<std::complex<double>>> solve_multipliers_;
};

/// Free-function forms of the two operator stages.
StateVector linear_solve(const std::vector<SpectralField>& rhs_hat, const SystemSpec& system);
StateVector apply_map(const StateVector& v, const SystemSpec& system);

ContractionCertificate certify_contraction(const SystemSpec& system,
                                           const ResonanceOptions& options = {},
                                           int lipschitz_samples = 2000,
                                           std::uint64_t seed = 0);

/// Fixed-point iteration v <- map(v) until the H2 increment drops to `tol`.
/// Refuses uncertified systems unless `override_uncertified` is set; detects
/// divergence when the increment grows tenfold above the initial one.
Solution solve_fixed_point(const SystemSpec& system, const StateVector& init, double tol,
                           int max_iter, bool override_uncertified = false,
                           const ResonanceOptions& options = {});

struct NontrivialityResult {
    bool guaranteed = false;
    int component = 0;        // 1-based witness component
    std::vector<int> mode;    // witness lattice mode
};

/// Guaranteed-nontrivial iff the spectra of G_k and of F_k(0,.) both exceed
/// the support threshold at a common lattice frequency for some k.
NontrivialityResult check_nontriviality(const SystemSpec& system,
                                        double support_threshold = 1e-12);

/// Spectral L2 residual of the stationary system at `state`:
/// sqrt( sum_k sum_xi |D_k u^_k - C G^_k f^_k|^2 w ).
double residual(const StateVector& state, const SystemSpec& system);

}  // namespace specfp

#endif
