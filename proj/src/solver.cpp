#include "specfp/solver.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "specfp/errors.hpp"
#include "specfp/transforms.hpp"

namespace specfp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::vector<RegimeTag> SystemSpec::regimes() const {
    std::vector<RegimeTag> tags;
    tags.reserve(components.size());
    for (const auto& c : components) tags.push_back(c.kernel.regime);
    return tags;
}

std::vector<NonlinearitySpec> SystemSpec::nonlinearities() const {
    std::vector<NonlinearitySpec> specs;
    specs.reserve(components.size());
    for (const auto& c : components) specs.push_back(c.nonlinearity);
    return specs;
}

std::vector<KernelSpec> SystemSpec::kernels() const {
    std::vector<KernelSpec> ks;
    ks.reserve(components.size());
    for (const auto& c : components) ks.push_back(c.kernel);
    return ks;
}

void SystemSpec::validate() const {
    const int n2 = n_total();
    if (n_plus < 1 || n2 <= n_plus)
        throw ConfigError("need N2 > N1 >= 1: n_plus=" + std::to_string(n_plus) +
                          ", components=" + std::to_string(n2));
    if (!geometry.lattice) throw ConfigError("system has no geometry");

    for (int k = 1; k <= n2; ++k) {
        const SystemComponent& c = components[static_cast<std::size_t>(k - 1)];
        RegimeTag tag = c.kernel.regime;
        tag.kind = geometry.config.kind;
        const SignBlock expected = k <= n_plus ? SignBlock::Plus : SignBlock::Minus;
        if (tag.sign != expected)
            throw ConfigError("component " + std::to_string(k) +
                              (expected == SignBlock::Plus
                                   ? " is in the plus block and cannot be case IV"
                                   : " is in the minus block and must be case IV"));
        validate_regime(tag);
        if (!c.nonlinearity.coeffs.empty() &&
            static_cast<int>(c.nonlinearity.coeffs.size()) != n2)
            throw ConfigError("component " + std::to_string(k) +
                              ": coupling coefficients must have one entry per component");

        // Periodic consistency of the forcing on domains with a periodic axis.
        if (geometry.config.kind != DomainKind::WholeSpace && !c.nonlinearity.forcing.is_zero()) {
            const int naxes = geometry.lattice->num_axes();
            double probe[4] = {0, 0, 0, 0};
            for (int trial = 0; trial < 5; ++trial) {
                for (int s = 1; s < naxes; ++s)
                    probe[s] = geometry.config.box_half_width * (trial / 5.0 - 0.4);
                probe[0] = 0.0;
                const double at0 = c.nonlinearity.forcing.eval(std::span<const double>(probe, static_cast<std::size_t>(naxes)));
                probe[0] = kTwoPi;
                const double at2pi = c.nonlinearity.forcing.eval(std::span<const double>(probe, static_cast<std::size_t>(naxes)));
                if (std::abs(at0 - at2pi) > 1e-8)
                    throw ConfigError("component " + std::to_string(k) +
                                      ": forcing is not 2pi-periodic on the periodic axis");
                if (geometry.config.kind == DomainKind::Interval) break;
            }
        }
    }
}

double solve_constant(const GeometryConfig& config) {
    int naxes = 1;
    if (config.kind == DomainKind::WholeSpace) naxes = config.dim;
    if (config.kind == DomainKind::Layer) naxes = config.dim + 1;
    return std::pow(kTwoPi, 0.5 * naxes);
}

double contraction_prefactor(const GeometryConfig& config) {
    return std::sqrt(2.0) * solve_constant(config);
}

double norm_bound_constant(const GeometryConfig& config) {
    const double c = solve_constant(config);
    return 2.0 * c * c;
}

SystemOperator::SystemOperator(const SystemSpec& system, const ResonanceOptions& options)
    : system_(system) {
    system_.validate();
    const double c_geo = solve_constant(system_.geometry.config);
    for (int k = 0; k < system_.n_total(); ++k) {
        const SystemComponent& comp = system_.components[static_cast<std::size_t>(k)];
        RegimeTag tag = comp.kernel.regime;
        tag.kind = system_.geometry.config.kind;
        SpectralField hat = kernel_spectrum(comp.kernel, system_.geometry);
        auto ratios = solve_ratios(hat, tag, options);  // throws BlowUpError if inadmissible
        for (auto& r : ratios) r *= c_geo;
        kernel_hats_.push_back(std::move(hat));
        solve_multipliers_.push_back(std::move(ratios));
    }
}

StateVector SystemOperator::linear_solve(const std::vector<SpectralField>& rhs_hat) const {
    if (static_cast<int>(rhs_hat.size()) != system_.n_total())
        throw ConfigError("one right-hand side per component required");
    const LatticePtr& lattice = system_.geometry.lattice;
    StateVector u(lattice, system_.n_total());
    for (int k = 0; k < system_.n_total(); ++k) {
        if (rhs_hat[static_cast<std::size_t>(k)].lattice.get() != lattice.get())
            throw ConfigError("right-hand side lattice mismatch");
        const auto& mult = solve_multipliers_[static_cast<std::size_t>(k)];
        auto& out = u.components[static_cast<std::size_t>(k)].coef;
        const auto& rhs = rhs_hat[static_cast<std::size_t>(k)].coef;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = mult[i] * rhs[i];
    }
    return u;
}

StateVector SystemOperator::apply_map(const StateVector& v) const {
    if (v.num_components() != system_.n_total())
        throw ConfigError("state has wrong number of components");
    std::vector<GridField> grids;
    grids.reserve(v.components.size());
    for (const SpectralField& comp : v.components) grids.push_back(inverse_transform(comp));

    const auto specs = system_.nonlinearities();
    std::vector<GridField> f = eval_nonlinearity(specs, grids);

    std::vector<SpectralField> f_hat;
    f_hat.reserve(f.size());
    for (const GridField& g : f) f_hat.push_back(forward_transform(g));

    return linear_solve(f_hat);
}

StateVector linear_solve(const std::vector<SpectralField>& rhs_hat, const SystemSpec& system) {
    return SystemOperator(system).linear_solve(rhs_hat);
}

StateVector apply_map(const StateVector& v, const SystemSpec& system) {
    return SystemOperator(system).apply_map(v);
}

ContractionCertificate certify_contraction(const SystemSpec& system,
                                           const ResonanceOptions& options, int lipschitz_samples,
                                           std::uint64_t seed) {
    system.validate();
    ContractionCertificate cert;
    const auto kernels = system.kernels();
    MultiplierReport mult = multiplier_norms(kernels, system.geometry, options);
    cert.system_constant = mult.system_constant;
    cert.blow_up = mult.any_blow_up;

    const auto specs = system.nonlinearities();
    cert.lipschitz = analytic_lipschitz(specs);
    // The sampled certificate cross-checks the analytic constant.
    LipschitzCertificate lip =
        lipschitz_certificate(specs, system.geometry.lattice, lipschitz_samples, seed);
    if (!lip.pass)
        throw Error("empirical Lipschitz quotient exceeds the analytic constant");

    cert.factor = contraction_prefactor(system.geometry.config) * cert.system_constant *
                  cert.lipschitz;
    cert.certified = !cert.blow_up && cert.factor < 1.0;
    return cert;
}

Solution solve_fixed_point(const SystemSpec& system, const StateVector& init, double tol,
                           int max_iter, bool override_uncertified,
                           const ResonanceOptions& options) {
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
    if (max_iter < 1) throw ConfigError("max_iter must be positive");

    Solution sol;
    sol.certificate = certify_contraction(system, options);
    if (!sol.certificate.certified && !override_uncertified)
        throw SolverError(
            "contraction not certified (q = " + std::to_string(sol.certificate.factor) +
            "); pass the override to iterate without a guarantee");

    SystemOperator op(system, options);
    const auto t0 = std::chrono::steady_clock::now();

    StateVector v = init;
    if (system.geometry.config.kind == DomainKind::Interval) {
        const auto tags = system.regimes();
        v = project_constrained(v, tags);
    }

    double first_increment = -1.0;
    for (int it = 0; it < max_iter; ++it) {
        StateVector u = op.apply_map(v);
        const double inc = h2_distance(u, v);
        if (!sol.trace.increments.empty())
            sol.trace.ratios.push_back(sol.trace.increments.back() > 0.0
                                           ? inc / sol.trace.increments.back()
                                           : 0.0);
        sol.trace.increments.push_back(inc);
        if (first_increment < 0.0) first_increment = inc;
        v = std::move(u);
        if (inc <= tol) {
            sol.converged = true;
            break;
        }
        if (first_increment > 0.0 && inc > 10.0 * first_increment)
            throw SolverError("iteration diverges after " +
                              std::to_string(sol.trace.iterations()) + " steps: increment " +
                              std::to_string(inc) + " grew tenfold above the initial " +
                              std::to_string(first_increment));
    }
    sol.trace.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!sol.converged)
        throw SolverError("no convergence within " + std::to_string(max_iter) +
                          " iterations; last increment " +
                          std::to_string(sol.trace.increments.back()));

    sol.state = std::move(v);
    sol.residual_value = residual(sol.state, system);
    sol.nontrivial_guaranteed = check_nontriviality(system).guaranteed;
    return sol;
}

NontrivialityResult check_nontriviality(const SystemSpec& system, double support_threshold) {
    system.validate();
    NontrivialityResult result;
    const LatticePtr& lattice = system.geometry.lattice;
    const FrequencyLattice& lat = *lattice;

    // F_k(0, x) = g_k(x) for the catalog (sigma(0) = 0 for tanh and sin).
    for (int k = 0; k < system.n_total(); ++k) {
        const SystemComponent& comp = system.components[static_cast<std::size_t>(k)];
        SpectralField ghat = kernel_spectrum(comp.kernel, system.geometry);

        GridField g0(lattice);
        double x[4];
        for (int i = 0; i < lat.size(); ++i) {
            lat.grid_point(i, x);
            g0.values[static_cast<std::size_t>(i)] = comp.nonlinearity.forcing.eval(
                std::span<const double>(x, static_cast<std::size_t>(lat.num_axes())));
        }
        SpectralField fhat = forward_transform(g0);

        for (int i = 0; i < lat.size(); ++i) {
            if (std::abs(ghat.coef[static_cast<std::size_t>(i)]) > support_threshold &&
                std::abs(fhat.coef[static_cast<std::size_t>(i)]) > support_threshold) {
                result.guaranteed = true;
                result.component = k + 1;
                result.mode = lat.mode(i);
                return result;
            }
        }
    }
    return result;
}

double residual(const StateVector& state, const SystemSpec& system) {
    system.validate();
    const LatticePtr& lattice = system.geometry.lattice;
    const FrequencyLattice& lat = *lattice;
    const double c_geo = solve_constant(system.geometry.config);

    std::vector<GridField> grids;
    for (const SpectralField& comp : state.components) grids.push_back(inverse_transform(comp));
    const auto specs = system.nonlinearities();
    std::vector<GridField> f = eval_nonlinearity(specs, grids);

    double sq = 0.0;
    const double w = lat.spectral_weight();
    for (int k = 0; k < system.n_total(); ++k) {
        const SystemComponent& comp = system.components[static_cast<std::size_t>(k)];
        RegimeTag tag = comp.kernel.regime;
        tag.kind = system.geometry.config.kind;
        SpectralField ghat = kernel_spectrum(comp.kernel, system.geometry);
        SpectralField fhat = forward_transform(f[static_cast<std::size_t>(k)]);
        const bool minus = tag.sign == SignBlock::Minus;
        for (int i = 0; i < lat.size(); ++i) {
            const double mag = lat.magnitude(i);
            const double den = minus ? mag + tag.a : mag - tag.a;
            const auto lhs = den * state.components[static_cast<std::size_t>(k)].coef[static_cast<std::size_t>(i)];
            const auto rhs = c_geo * ghat.coef[static_cast<std::size_t>(i)] * fhat.coef[static_cast<std::size_t>(i)];
            sq += std::norm(lhs - rhs) * w;
        }
    }
    return std::sqrt(sq);
}

}  // namespace specfp
