#ifndef SPECFP_KERNELS_HPP
#define SPECFP_KERNELS_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "specfp/expr.hpp"
#include "specfp/geometry.hpp"

namespace specfp {

enum class RegimeCase { I, II, III, IV };
enum class SignBlock { Plus, Minus };

const char* regime_case_name(RegimeCase c);

/// Classifies one component of the system:
///   sign Plus  -> multiplier denominator |xi| - a (components 1..N1),
///   sign Minus -> denominator |xi| + a, always case IV (components N1+1..N2).
/// The meaning of cases I/II/III depends on the domain:
///   whole space:  I: a>0 (spectrum must vanish on |p|=a), II: a=0
///   interval:     I: a>0 non-integer, II: a=n_k integer, III: a=0
///   layer:        I: n_k<a<n_k+1, II: a=n_k integer, III: a=0
struct RegimeTag {
    DomainKind kind = DomainKind::Interval;
    RegimeCase regime_case = RegimeCase::I;
    SignBlock sign = SignBlock::Plus;
    double a = 0.0;
    int resonant_mode = 0;  // n_k where applicable (derived from `a` when integer)
};

/// Throws ConfigError when the tag violates the per-domain constraints.
void validate_regime(const RegimeTag& tag);

/// Interval modes forced to zero for the constrained subspaces: {+-n_k} for
/// case II, {0} for case III, empty otherwise.
std::vector<int> constrained_modes(const RegimeTag& tag);

/// Text description of the zero set of the multiplier denominator.
std::string resonant_set_description(const RegimeTag& tag);

/// Direct spectral definition: coefficient per integer mode tuple; modes not
/// listed are zero. Must be conjugate-symmetric.
struct SpectralTable {
    std::vector<std::pair<std::vector<int>, std::complex<double>>> entries;
};

/// Convolution kernel G_k, defined either by a physical expression or by a
/// spectral table, together with its regime tag.
struct KernelSpec {
    int component = 1;  // 1-based index k
    std::optional<Expr> expression;
    std::optional<SpectralTable> table;
    RegimeTag regime;
};

/// Samples a physical-expression kernel on the grid (with the periodicity
/// check on interval/layer domains).
GridField kernel_samples(const KernelSpec& kernel, const Geometry& geometry);

/// Kernel spectrum on the lattice. Expression kernels are transformed from
/// their samples; tables are validated (conjugate symmetry, lattice bounds)
/// and placed on the lattice. The sup bound sup|G^| <= (2pi)^{-naxes/2} ||G||_L1
/// is asserted as a sanity check.
SpectralField kernel_spectrum(const KernelSpec& kernel, const Geometry& geometry);

/// Band-limited interpolant of a spectrum, evaluated at arbitrary frequency
/// points: the trapezoid-rule transform of the grid samples. Reproduces the
/// lattice values exactly and extends smoothly off-lattice, which is what the
/// resonant-set probes and the sphere conditions need.
class SpectralProbe {
public:
    SpectralProbe(const KernelSpec& kernel, const Geometry& geometry);
    explicit SpectralProbe(const SpectralField& spectrum);

    std::complex<double> operator()(std::span<const double> freq) const;
    const LatticePtr& lattice() const { return lattice_; }

private:
    LatticePtr lattice_;
    std::vector<double> samples_;
    double scale_ = 1.0;
};

struct ConditionResult {
    std::string id;      // e.g. "or4"
    double defect;       // |orthogonality integral|
    bool pass;
    std::string detail;
};

struct IntegralResult {
    std::string id;      // e.g. "L1(G)"
    double value;        // truncated quadrature value
    bool finite;         // no tail growth detected at working resolution
};

struct AdmissibilityReport {
    int component = 0;
    std::string regime;
    std::string resonant_set;
    double tolerance = 0.0;
    std::vector<ConditionResult> conditions;
    std::vector<IntegralResult> integrals;
    bool pass = false;

    std::string to_text() const;
};

/// Evaluates the orthogonality and integrability conditions mandated by the
/// kernel's regime. Sphere conditions are sampled (64 points per great
/// circle) and report the maximum |G^| over the samples as the defect.
AdmissibilityReport check_admissibility(const KernelSpec& kernel, const Geometry& geometry,
                                        double tolerance);

}  // namespace specfp

#endif
