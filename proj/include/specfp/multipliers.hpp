#ifndef SPECFP_MULTIPLIERS_HPP
#define SPECFP_MULTIPLIERS_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "specfp/geometry.hpp"
#include "specfp/kernels.hpp"

namespace specfp {

struct ResonanceOptions {
    /// eps_res = eps_res_scale * max(1, a): denominators smaller than this
    /// switch to the radial limit.
    double eps_res_scale = 1e-6;
    /// Radial probe step; 0 selects a quarter of the finest frequency spacing.
    double radial_step = 0.0;
    /// |G^| above this on the resonant set is a blow-up (inadmissible kernel).
    double blowup_tolerance = 1e-8;
};

/// G^(xi)/D(xi) with D = |xi| - a (plus components) or |xi| + a (minus).
/// Near the resonant set the value is the radial limit, evaluated as the
/// symmetric average of the plain ratio at magnitudes a +- h along the ray
/// through xi (the central-difference radial derivative when G^ vanishes
/// there). On the interval the resonant modes are exact integers and the
/// ratio is zero there by the orthogonality conditions. Throws BlowUpError
/// when the kernel spectrum does not vanish on the resonant set.
std::complex<double> resonance_ratio(const SpectralField& kernel_spectrum, const RegimeTag& regime,
                                     std::span<const double> xi,
                                     const ResonanceOptions& options = {});

/// Solve ratios G^(xi)/D(xi) for every lattice point, resonant points handled
/// as above. This is the multiplier table the linear solves consume.
std::vector<std::complex<double>> solve_ratios(const SpectralField& kernel_spectrum,
                                               const RegimeTag& regime,
                                               const ResonanceOptions& options = {});

struct ComponentMultiplier {
    int component = 0;
    double value = 0.0;           // M_k / P_k / R_k at lattice resolution
    std::vector<int> arg_mode;    // lattice location of the supremum
    bool blow_up = false;
    std::string blow_up_where;
};

struct MultiplierReport {
    std::vector<ComponentMultiplier> per_component;
    double system_constant = 0.0;  // max over components
    bool any_blow_up = false;
};

/// Per-component max over the lattice (plus resonant-set samples) of
/// |G^/D| and | |xi|^2 G^ / D |, and the system constant M/P/R.
MultiplierReport multiplier_norms(std::span<const KernelSpec> kernels, const Geometry& geometry,
                                  const ResonanceOptions& options = {});

/// Same scan for one kernel with a precomputed spectrum.
ComponentMultiplier multiplier_norm(const SpectralField& kernel_spectrum, const RegimeTag& regime,
                                    int component, const ResonanceOptions& options = {});

}  // namespace specfp

#endif
