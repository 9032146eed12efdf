#include "specfp/multipliers.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "specfp/errors.hpp"

namespace specfp {

namespace {

std::string point_string(std::span<const double> xi) {
    std::ostringstream os;
    os << "(";
    for (std::size_t s = 0; s < xi.size(); ++s) os << (s ? "," : "") << xi[s];
    os << ")";
    return os.str();
}

/// Shared machinery for plain ratios and radial limits of G^(xi)/D(xi).
class ResonanceEvaluator {
public:
    ResonanceEvaluator(const SpectralField& hat, const RegimeTag& regime,
                       const ResonanceOptions& options)
        : hat_(hat), lat_(*hat.lattice), tag_(regime), opts_(options) {
        eps_res_ = opts_.eps_res_scale * std::max(1.0, tag_.a);
        step_ = opts_.radial_step > 0.0 ? opts_.radial_step : lat_.min_freq_spacing() / 4.0;
    }

    bool minus() const { return tag_.sign == SignBlock::Minus; }
    double denominator(double magnitude) const {
        return minus() ? magnitude + tag_.a : magnitude - tag_.a;
    }

    std::complex<double> lattice_ratio(int index) {
        const double mag = lat_.magnitude(index);
        const double den = denominator(mag);
        if (std::abs(den) >= eps_res_ || (lat_.config().kind == DomainKind::Interval && den != 0.0))
            return hat_.coef[static_cast<std::size_t>(index)] / den;
        if (lat_.config().kind == DomainKind::Interval) {
            // Exact integer resonance: orthogonality forces G at these modes
            // to vanish and the solution component lives in the constrained
            // subspace, so the ratio is zero by definition.
            check_blowup(std::abs(hat_.coef[static_cast<std::size_t>(index)]), index);
            return 0.0;
        }
        double f[4];
        lat_.frequency(index, f);
        return radial_limit(std::span<const double>(f, static_cast<std::size_t>(lat_.num_axes())));
    }

    std::complex<double> ratio_at(std::span<const double> xi) {
        const double mag = magnitude_of(xi);
        const double den = denominator(mag);
        if (lat_.config().kind == DomainKind::Interval) {
            if (den != 0.0) return value_at(xi) / den;
            const int idx = nearest_lattice_index(xi);
            check_blowup(std::abs(hat_.coef[static_cast<std::size_t>(idx)]), idx);
            return 0.0;
        }
        if (std::abs(den) >= eps_res_) return value_at(xi) / den;
        return radial_limit(xi);
    }

    /// Radial limit of the ratio at the resonant point on the ray through xi:
    /// the average of the plain ratio at overall magnitudes a - h and a + h,
    /// which reduces to the central-difference radial derivative when the
    /// spectrum vanishes on the resonant set. Directions degenerate to the
    /// coordinate axes when xi sits at the transverse origin.
    std::complex<double> radial_limit(std::span<const double> xi) {
        const int naxes = lat_.num_axes();
        const bool layer_like = lat_.axis(0).periodic;  // layer: first axis carries n
        const int first_cont = layer_like ? 1 : 0;
        const double a = tag_.a;

        double trans_sq = 0.0;
        for (int s = first_cont; s < naxes; ++s) trans_sq += xi[static_cast<std::size_t>(s)] * xi[static_cast<std::size_t>(s)];
        const double trans = std::sqrt(trans_sq);
        const double n_part = layer_like ? xi[0] : 0.0;

        // Blow-up guard: the spectrum must vanish at the projection of xi
        // onto the resonant set.
        {
            std::vector<double> proj(xi.begin(), xi.end());
            const double rho_star_sq = a * a - n_part * n_part;
            const double rho_star = rho_star_sq > 0.0 ? std::sqrt(rho_star_sq) : 0.0;
            for (int s = first_cont; s < naxes; ++s)
                proj[static_cast<std::size_t>(s)] =
                    trans > 0.0 ? xi[static_cast<std::size_t>(s)] / trans * rho_star
                                : (s == first_cont ? rho_star : 0.0);
            if (std::abs(value_at(proj)) > opts_.blowup_tolerance)
                throw BlowUpError("multiplier blow-up: kernel spectrum does not vanish on the resonant set",
                                  point_string(proj));
        }

        // Probe directions in the transverse plane.
        std::vector<std::vector<double>> dirs;
        if (trans > 0.0) {
            std::vector<double> u(static_cast<std::size_t>(naxes - first_cont));
            for (int s = first_cont; s < naxes; ++s) u[static_cast<std::size_t>(s - first_cont)] = xi[static_cast<std::size_t>(s)] / trans;
            dirs.push_back(std::move(u));
        } else {
            for (int s = first_cont; s < naxes; ++s)
                for (int sgn : {1, -1}) {
                    std::vector<double> u(static_cast<std::size_t>(naxes - first_cont), 0.0);
                    u[static_cast<std::size_t>(s - first_cont)] = sgn;
                    dirs.push_back(std::move(u));
                }
        }

        std::complex<double> acc = 0.0;
        int count = 0;
        for (const auto& u : dirs) {
            for (int sgn : {1, -1}) {
                const double r = a + sgn * step_;
                if (r < 0.0) continue;
                const double rho_sq = r * r - n_part * n_part;
                if (rho_sq <= 0.0) continue;  // ray leaves the layer sheet at fixed n
                const double rho = std::sqrt(rho_sq);
                std::vector<double> pt(xi.begin(), xi.end());
                for (int s = first_cont; s < naxes; ++s) pt[static_cast<std::size_t>(s)] = u[static_cast<std::size_t>(s - first_cont)] * rho;
                const double den = denominator(r);
                acc += value_at(pt) / den;
                ++count;
            }
        }
        if (count == 0)
            throw Error("resonant limit has no admissible probe direction at " + point_string(xi));
        return acc / static_cast<double>(count);
    }

private:
    const SpectralField& hat_;
    const FrequencyLattice& lat_;
    RegimeTag tag_;
    ResonanceOptions opts_;
    double eps_res_ = 0.0;
    double step_ = 0.0;
    std::optional<SpectralProbe> probe_;

    static double magnitude_of(std::span<const double> xi) {
        double sq = 0.0;
        for (double v : xi) sq += v * v;
        return std::sqrt(sq);
    }

    int nearest_lattice_index(std::span<const double> xi) const {
        int offs[4];
        for (int s = 0; s < lat_.num_axes(); ++s) {
            const Axis& ax = lat_.axis(s);
            int m = static_cast<int>(std::llround(xi[static_cast<std::size_t>(s)] / ax.dfreq));
            m = std::max(-ax.size / 2, std::min(ax.size / 2 - 1, m));
            offs[s] = m + ax.size / 2;
        }
        return lat_.index_of_offsets(offs);
    }

    /// Spectrum value at an arbitrary frequency point: exact lattice value
    /// when xi sits on the lattice, band-limited interpolant otherwise.
    std::complex<double> value_at(std::span<const double> xi) {
        const int idx = nearest_lattice_index(xi);
        bool on_lattice = true;
        double f[4];
        lat_.frequency(idx, f);
        for (int s = 0; s < lat_.num_axes(); ++s)
            if (std::abs(f[s] - xi[static_cast<std::size_t>(s)]) > 1e-12 * std::max(1.0, std::abs(xi[static_cast<std::size_t>(s)])))
                on_lattice = false;
        if (on_lattice) return hat_.coef[static_cast<std::size_t>(idx)];
        if (!probe_) probe_.emplace(hat_);
        return (*probe_)(xi);
    }

    void check_blowup(double value, int index) const {
        if (value > opts_.blowup_tolerance) {
            std::ostringstream os;
            os << "mode (";
            auto m = lat_.mode(index);
            for (std::size_t s = 0; s < m.size(); ++s) os << (s ? "," : "") << m[s];
            os << ")";
            throw BlowUpError("multiplier blow-up: kernel coefficient " + std::to_string(value) +
                                  " at an exactly resonant mode",
                              os.str());
        }
    }
};

}  // namespace

std::complex<double> resonance_ratio(const SpectralField& kernel_spectrum, const RegimeTag& regime,
                                     std::span<const double> xi, const ResonanceOptions& options) {
    ResonanceEvaluator eval(kernel_spectrum, regime, options);
    return eval.ratio_at(xi);
}

std::vector<std::complex<double>> solve_ratios(const SpectralField& kernel_spectrum,
                                               const RegimeTag& regime,
                                               const ResonanceOptions& options) {
    ResonanceEvaluator eval(kernel_spectrum, regime, options);
    const int n = kernel_spectrum.lattice->size();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = eval.lattice_ratio(i);
    return out;
}

ComponentMultiplier multiplier_norm(const SpectralField& kernel_spectrum, const RegimeTag& regime,
                                    int component, const ResonanceOptions& options) {
    const FrequencyLattice& lat = *kernel_spectrum.lattice;
    ResonanceEvaluator eval(kernel_spectrum, regime, options);

    ComponentMultiplier result;
    result.component = component;
    result.value = 0.0;
    result.arg_mode.assign(static_cast<std::size_t>(lat.num_axes()), 0);

    auto consider = [&](double candidate, const std::vector<int>& mode) {
        if (candidate > result.value) {
            result.value = candidate;
            result.arg_mode = mode;
        }
    };

    // Lattice scan of |ratio1| and |xi|^2 |ratio1| (ties keep lattice order).
    for (int i = 0; i < lat.size(); ++i) {
        const double mag = lat.magnitude(i);
        std::complex<double> r;
        try {
            r = eval.lattice_ratio(i);
        } catch (const BlowUpError& e) {
            result.blow_up = true;
            if (result.blow_up_where.empty()) result.blow_up_where = e.where;
            continue;
        }
        const auto mode = lat.mode(i);
        consider(std::abs(r), mode);
        consider(mag * mag * std::abs(r), mode);
    }

    // Resonant-set samples off the lattice (plus components only).
    if (regime.sign == SignBlock::Plus && regime.a > 0.0 &&
        lat.config().kind != DomainKind::Interval) {
        const bool layer = lat.config().kind == DomainKind::Layer;
        const int d = lat.config().dim;
        const int n_max = layer ? static_cast<int>(std::floor(regime.a + 1e-12)) : 0;
        for (int n = -n_max; n <= n_max; ++n) {
            const double rho_sq = regime.a * regime.a - double(n) * n;
            if (rho_sq < 0.0) continue;
            const double rho = std::sqrt(rho_sq);
            std::vector<std::vector<double>> dirs;
            if (rho > 0.0) {
                // Reuse the admissibility sphere sampling resolution.
                constexpr int kPerCircle = 64;
                if (d == 1) {
                    dirs.push_back({1.0});
                    dirs.push_back({-1.0});
                } else if (d == 2) {
                    for (int i = 0; i < kPerCircle; ++i) {
                        const double th = 2.0 * std::numbers::pi * i / kPerCircle;
                        dirs.push_back({std::cos(th), std::sin(th)});
                    }
                } else {
                    const int rings = kPerCircle / 2 + 1;
                    for (int i = 0; i < rings; ++i) {
                        const double phi = std::numbers::pi * i / (rings - 1);
                        for (int j = 0; j < kPerCircle; ++j) {
                            const double th = 2.0 * std::numbers::pi * j / kPerCircle;
                            dirs.push_back({std::sin(phi) * std::cos(th),
                                            std::sin(phi) * std::sin(th), std::cos(phi)});
                        }
                    }
                }
            } else {
                std::vector<double> u(static_cast<std::size_t>(d), 0.0);
                u[0] = 1.0;
                dirs.push_back(u);  // degenerate point: direction handled by the probe average
            }
            for (const auto& u : dirs) {
                std::vector<double> xi;
                if (layer) xi.push_back(n);
                for (double c : u) xi.push_back(c * rho);
                std::complex<double> r;
                try {
                    r = eval.radial_limit(xi);
                } catch (const BlowUpError& e) {
                    result.blow_up = true;
                    if (result.blow_up_where.empty()) result.blow_up_where = e.where;
                    continue;
                }
                std::vector<int> mode_here(static_cast<std::size_t>(lat.num_axes()), 0);
                if (layer) mode_here[0] = n;
                consider(std::abs(r), mode_here);
                consider(regime.a * regime.a * std::abs(r), mode_here);
            }
        }
    }
    return result;
}

MultiplierReport multiplier_norms(std::span<const KernelSpec> kernels, const Geometry& geometry,
                                  const ResonanceOptions& options) {
    MultiplierReport report;
    for (std::size_t k = 0; k < kernels.size(); ++k) {
        const SpectralField hat = kernel_spectrum(kernels[k], geometry);
        RegimeTag tag = kernels[k].regime;
        tag.kind = geometry.config.kind;
        ComponentMultiplier cm = multiplier_norm(hat, tag, kernels[k].component, options);
        report.any_blow_up = report.any_blow_up || cm.blow_up;
        report.per_component.push_back(std::move(cm));
    }
    report.system_constant = 0.0;
    for (const auto& cm : report.per_component)
        report.system_constant = std::max(report.system_constant, cm.value);
    return report;
}

}  // namespace specfp
