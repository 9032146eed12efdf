#include "specfp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "specfp/errors.hpp"

namespace specfp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSqrtTwoPi = 2.5066282746310002;

double wrap_to_period(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    return y;
}

/// Kernel value at an arbitrary point of the circle, independent of the
/// spectral transform machinery: expression kernels are evaluated directly,
/// table kernels through their own Fourier series sum.
double kernel_value(const KernelSpec& kernel, double x) {
    if (kernel.expression) {
        const double coords[1] = {wrap_to_period(x)};
        return kernel.expression->eval(coords);
    }
    if (kernel.table) {
        std::complex<double> sum = 0.0;
        for (const auto& [mode, value] : kernel.table->entries)
            sum += value * std::polar(1.0, mode[0] * x) / kSqrtTwoPi;
        return sum.real();
    }
    throw ConfigError("kernel has neither an expression nor a table");
}

}  // namespace

StateVector brute_force_oracle(const std::vector<GridField>& v, const SystemSpec& system) {
    system.validate();
    if (system.geometry.config.kind != DomainKind::Interval)
        throw ConfigError("the dense oracle is defined on the interval");
    const int n = system.geometry.config.mode_cutoff;
    if (n > 32) throw ConfigError("dense oracle limited to mode cutoffs <= 32");
    if (static_cast<int>(v.size()) != system.n_total())
        throw ConfigError("one grid component per system component required");

    const LatticePtr& lattice = system.geometry.lattice;
    const double dx = kTwoPi / n;

    const auto specs = system.nonlinearities();
    const std::vector<GridField> f = eval_nonlinearity(specs, v);

    StateVector out(lattice, system.n_total());
    for (int k = 0; k < system.n_total(); ++k) {
        const SystemComponent& comp = system.components[static_cast<std::size_t>(k)];
        const RegimeTag& tag = comp.kernel.regime;

        // conv(x_i) = int_0^{2pi} G(x_i - y) F(v(y), y) dy by the trapezoid rule.
        std::vector<double> conv(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            const double xi = i * dx;
            double acc = 0.0;
            for (int j = 0; j < n; ++j) {
                const double yj = j * dx;
                acc += kernel_value(comp.kernel, xi - yj) * f[static_cast<std::size_t>(k)].values[static_cast<std::size_t>(j)];
            }
            conv[static_cast<std::size_t>(i)] = acc * dx;
        }

        // Expand in the trigonometric eigenbasis e^{inx}/sqrt(2pi) of
        // sqrt(-d^2/dx^2) and divide by the eigenvalue shift.
        const bool minus = tag.sign == SignBlock::Minus;
        std::vector<int> zero_modes = constrained_modes(tag);
        for (int m = -n / 2; m < n / 2; ++m) {
            std::complex<double> rhs_m = 0.0;
            for (int i = 0; i < n; ++i)
                rhs_m += conv[static_cast<std::size_t>(i)] * std::polar(1.0, -m * (i * dx));
            rhs_m *= dx / kSqrtTwoPi;

            const double den = minus ? std::abs(m) + tag.a : std::abs(m) - tag.a;
            std::complex<double> u_m;
            const bool constrained =
                std::find(zero_modes.begin(), zero_modes.end(), m) != zero_modes.end();
            if (constrained) {
                if (std::abs(rhs_m) > 1e-8)
                    throw BlowUpError("dense oracle: resonant division for inadmissible kernel",
                                      "mode (" + std::to_string(m) + ")");
                u_m = 0.0;
            } else {
                if (den == 0.0)
                    throw BlowUpError("dense oracle: zero eigenvalue shift",
                                      "mode (" + std::to_string(m) + ")");
                u_m = rhs_m / den;
            }
            const int mode[1] = {m};
            out.components[static_cast<std::size_t>(k)].coef[static_cast<std::size_t>(lattice->index_of_mode(mode))] = u_m;
        }
    }
    return out;
}

}  // namespace specfp
