#include "specfp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "specfp/errors.hpp"
#include "specfp/transforms.hpp"

namespace specfp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

bool is_integer(double a, double eps = 1e-12) { return std::abs(a - std::round(a)) <= eps; }

double pow_two_pi_half(int n) { return std::pow(kTwoPi, 0.5 * n); }

}  // namespace

const char* regime_case_name(RegimeCase c) {
    switch (c) {
        case RegimeCase::I: return "I";
        case RegimeCase::II: return "II";
        case RegimeCase::III: return "III";
        case RegimeCase::IV: return "IV";
    }
    return "?";
}

void validate_regime(const RegimeTag& tag) {
    const bool minus = tag.sign == SignBlock::Minus;
    if (minus != (tag.regime_case == RegimeCase::IV))
        throw ConfigError("case IV is exactly the minus-sign block");
    if (minus) {
        if (!(tag.a > 0.0)) throw ConfigError("minus components require a > 0");
        return;
    }
    switch (tag.kind) {
        case DomainKind::WholeSpace:
            if (tag.regime_case == RegimeCase::I) {
                if (!(tag.a > 0.0)) throw ConfigError("whole-space case I requires a > 0");
            } else if (tag.regime_case == RegimeCase::II) {
                if (tag.a != 0.0) throw ConfigError("whole-space case II requires a = 0");
            } else {
                throw ConfigError("whole-space plus components are case I (a>0) or II (a=0)");
            }
            break;
        case DomainKind::Interval:
            if (tag.regime_case == RegimeCase::I) {
                if (!(tag.a > 0.0) || is_integer(tag.a))
                    throw ConfigError("interval case I requires a > 0 and a not an integer");
            } else if (tag.regime_case == RegimeCase::II) {
                if (!(tag.a > 0.0) || !is_integer(tag.a))
                    throw ConfigError("interval case II requires a = n_k, a positive integer");
            } else if (tag.regime_case == RegimeCase::III) {
                if (tag.a != 0.0) throw ConfigError("interval case III requires a = 0");
            }
            break;
        case DomainKind::Layer:
            if (tag.regime_case == RegimeCase::I) {
                if (!(tag.a > 0.0) || is_integer(tag.a))
                    throw ConfigError("layer case I requires n_k < a < n_k + 1");
            } else if (tag.regime_case == RegimeCase::II) {
                if (!(tag.a > 0.0) || !is_integer(tag.a))
                    throw ConfigError("layer case II requires a = n_k, a positive integer");
            } else if (tag.regime_case == RegimeCase::III) {
                if (tag.a != 0.0) throw ConfigError("layer case III requires a = 0");
            }
            break;
    }
}

/// n_k implied by the tag: the resonant integer for integer-a cases, floor(a)
/// for layer case I.
static int implied_resonant_mode(const RegimeTag& tag) {
    if (tag.sign == SignBlock::Minus) return 0;
    if (tag.regime_case == RegimeCase::II) return static_cast<int>(std::llround(tag.a));
    if (tag.kind == DomainKind::Layer && tag.regime_case == RegimeCase::I)
        return static_cast<int>(std::floor(tag.a));
    return 0;
}

std::vector<int> constrained_modes(const RegimeTag& tag) {
    if (tag.kind != DomainKind::Interval || tag.sign == SignBlock::Minus) return {};
    if (tag.regime_case == RegimeCase::II) {
        const int nk = implied_resonant_mode(tag);
        return {-nk, nk};
    }
    if (tag.regime_case == RegimeCase::III) return {0};
    return {};
}

std::string resonant_set_description(const RegimeTag& tag) {
    std::ostringstream os;
    if (tag.sign == SignBlock::Minus) return "empty (denominator |xi| + a > 0)";
    switch (tag.kind) {
        case DomainKind::WholeSpace:
            if (tag.a == 0.0)
                os << "origin p = 0";
            else
                os << "sphere |p| = " << tag.a;
            break;
        case DomainKind::Interval:
            if (tag.regime_case == RegimeCase::I)
                os << "empty (a not an integer)";
            else if (tag.regime_case == RegimeCase::II)
                os << "modes n = +-" << implied_resonant_mode(tag);
            else
                os << "mode n = 0";
            break;
        case DomainKind::Layer:
            os << "{(n,p): sqrt(p^2+n^2) = " << tag.a << "}";
            break;
    }
    return os.str();
}

GridField kernel_samples(const KernelSpec& kernel, const Geometry& geometry) {
    const FrequencyLattice& lat = *geometry.lattice;
    if (kernel.expression) {
        GridField g(geometry.lattice);
        double x[4];
        for (int i = 0; i < lat.size(); ++i) {
            lat.grid_point(i, x);
            g.values[static_cast<std::size_t>(i)] =
                kernel.expression->eval(std::span<const double>(x, static_cast<std::size_t>(lat.num_axes())));
        }

        // Periodicity G(0, x_perp) = G(2pi, x_perp) on domains with a periodic axis.
        if (geometry.config.kind != DomainKind::WholeSpace) {
            double probe[4] = {0, 0, 0, 0};
            const int naxes = lat.num_axes();
            for (int trial = 0; trial < 5; ++trial) {
                for (int s = 1; s < naxes; ++s)
                    probe[s] = geometry.config.box_half_width * (trial / 5.0 - 0.4);
                probe[0] = 0.0;
                const double at0 = kernel.expression->eval(std::span<const double>(probe, static_cast<std::size_t>(naxes)));
                probe[0] = kTwoPi;
                const double at2pi = kernel.expression->eval(std::span<const double>(probe, static_cast<std::size_t>(naxes)));
                if (std::abs(at0 - at2pi) > 1e-8)
                    throw ConfigError("kernel is not 2pi-periodic on the periodic axis: G(0)=" +
                                      std::to_string(at0) + " vs G(2pi)=" + std::to_string(at2pi));
                if (geometry.config.kind == DomainKind::Interval) break;
            }
        }
        return g;
    }
    if (kernel.table) {
        // Realness of a table kernel is exactly its conjugate symmetry.
        return inverse_transform(kernel_spectrum(kernel, geometry));
    }
    throw ConfigError("kernel has neither an expression nor a spectral table");
}

SpectralField kernel_spectrum(const KernelSpec& kernel, const Geometry& geometry) {
    const FrequencyLattice& lat = *geometry.lattice;
    SpectralField hat(geometry.lattice);

    if (kernel.expression) {
        hat = forward_transform(kernel_samples(kernel, geometry));
    } else if (kernel.table) {
        for (const auto& [mode, value] : kernel.table->entries) {
            const int idx = lat.index_of_mode(mode);
            if (idx < 0) {
                std::ostringstream os;
                os << "spectral table mode (";
                for (std::size_t s = 0; s < mode.size(); ++s) os << (s ? "," : "") << mode[s];
                os << ") is outside the lattice";
                throw ConfigError(os.str());
            }
            hat.coef[static_cast<std::size_t>(idx)] = value;
        }
        if (!is_conjugate_symmetric(hat, 1e-10))
            throw ConfigError("spectral table violates conjugate symmetry (kernel would not be real)");
    } else {
        throw ConfigError("kernel has neither an expression nor a spectral table");
    }

    // sup |G^| <= (2pi)^{-naxes/2} ||G||_L1 holds exactly for the trapezoid
    // discretization; a violation indicates a broken transform.
    GridField samples = kernel.expression ? kernel_samples(kernel, geometry) : inverse_transform(hat);
    double l1 = 0.0;
    for (double v : samples.values) l1 += std::abs(v);
    l1 *= lat.grid_weight();
    double sup = 0.0;
    for (const auto& c : hat.coef) sup = std::max(sup, std::abs(c));
    const double bound = l1 / pow_two_pi_half(lat.num_axes());
    if (sup > bound + 1e-9 * (1.0 + bound))
        throw Error("kernel spectrum exceeds its L1 bound; transform inconsistency");

    return hat;
}

SpectralProbe::SpectralProbe(const KernelSpec& kernel, const Geometry& geometry)
    : lattice_(geometry.lattice) {
    GridField g = kernel_samples(kernel, geometry);
    samples_ = std::move(g.values);
    scale_ = lattice_->grid_weight() / pow_two_pi_half(lattice_->num_axes());
}

SpectralProbe::SpectralProbe(const SpectralField& spectrum) : lattice_(spectrum.lattice) {
    GridField g = inverse_transform(spectrum);
    samples_ = std::move(g.values);
    scale_ = lattice_->grid_weight() / pow_two_pi_half(lattice_->num_axes());
}

std::complex<double> SpectralProbe::operator()(std::span<const double> freq) const {
    const FrequencyLattice& lat = *lattice_;
    const int naxes = lat.num_axes();

    // Per-axis phase tables e^{-i f_s x_j}; the grid is a tensor product.
    std::vector<std::vector<std::complex<double>>> phases(static_cast<std::size_t>(naxes));
    for (int s = 0; s < naxes; ++s) {
        const Axis& ax = lat.axis(s);
        auto& ph = phases[static_cast<std::size_t>(s)];
        ph.resize(static_cast<std::size_t>(ax.size));
        for (int j = 0; j < ax.size; ++j) {
            const double x = ax.x0 + j * ax.dx;
            ph[static_cast<std::size_t>(j)] = std::polar(1.0, -freq[static_cast<std::size_t>(s)] * x);
        }
    }

    std::complex<double> sum = 0.0;
    int offs[4];
    for (int i = 0; i < lat.size(); ++i) {
        lat.offsets(i, offs);
        std::complex<double> ph = phases[0][static_cast<std::size_t>(offs[0])];
        for (int s = 1; s < naxes; ++s) ph *= phases[static_cast<std::size_t>(s)][static_cast<std::size_t>(offs[s])];
        sum += samples_[static_cast<std::size_t>(i)] * ph;
    }
    return sum * scale_;
}

namespace {

/// Uniformly sampled points of the sphere of radius r in `dim` transverse
/// dimensions (64 samples per great circle).
std::vector<std::vector<double>> sphere_samples(double r, int dim) {
    constexpr int kPerCircle = 64;
    std::vector<std::vector<double>> pts;
    if (dim == 1) {
        pts.push_back({r});
        pts.push_back({-r});
    } else if (dim == 2) {
        for (int i = 0; i < kPerCircle; ++i) {
            const double th = kTwoPi * i / kPerCircle;
            pts.push_back({r * std::cos(th), r * std::sin(th)});
        }
    } else {
        const int kRings = kPerCircle / 2 + 1;
        for (int i = 0; i < kRings; ++i) {
            const double phi = kPi * i / (kRings - 1);
            for (int j = 0; j < kPerCircle; ++j) {
                const double th = kTwoPi * j / kPerCircle;
                pts.push_back({r * std::sin(phi) * std::cos(th), r * std::sin(phi) * std::sin(th),
                               r * std::cos(phi)});
            }
        }
    }
    return pts;
}

struct AdmissibilityContext {
    const FrequencyLattice& lat;
    const GridField& samples;
    const SpectralField& hat;
    const SpectralProbe& probe;
    AdmissibilityReport& report;
    double tol;

    void add_condition(std::string id, double defect, std::string detail = "") {
        report.conditions.push_back({std::move(id), defect, defect <= tol, std::move(detail)});
    }

    /// Truncated L1-type quadrature of weight(x)*|G(x)| with a tail check:
    /// the value over the inner half box must carry all but 1% of the total,
    /// otherwise the integral is flagged as possibly divergent.
    template <typename WeightFn>
    void add_integral(std::string id, WeightFn&& weight) {
        double full = 0.0, inner = 0.0;
        double x[4];
        const double w = lat.grid_weight();
        bool has_continuous = false;
        for (int s = 0; s < lat.num_axes(); ++s) has_continuous |= !lat.axis(s).periodic;
        for (int i = 0; i < lat.size(); ++i) {
            lat.grid_point(i, x);
            const double term = weight(x) * std::abs(samples.values[static_cast<std::size_t>(i)]) * w;
            full += term;
            bool in_half = true;
            for (int s = 0; s < lat.num_axes(); ++s)
                if (!lat.axis(s).periodic &&
                    std::abs(x[s]) > 0.5 * lat.config().box_half_width)
                    in_half = false;
            if (in_half) inner += term;
        }
        bool finite = true;
        if (has_continuous && full > 0.0) finite = (full - inner) <= 0.01 * full;
        report.integrals.push_back({std::move(id), full, finite});
    }

    /// |G| gradient magnitude samples via spectral differentiation. The
    /// unpaired Nyquist mode is dropped: i*f*G^ there has no conjugate
    /// partner and would leave an imaginary residue.
    GridField gradient_magnitude(std::span<const int> axes) const {
        std::vector<GridField> partials;
        for (int s : axes) {
            SpectralField d(hat.lattice);
            double f[4];
            int offs[4];
            for (int i = 0; i < lat.size(); ++i) {
                lat.frequency(i, f);
                lat.offsets(i, offs);
                d.coef[static_cast<std::size_t>(i)] =
                    offs[s] == 0 ? 0.0
                                 : std::complex<double>(0.0, f[s]) * hat.coef[static_cast<std::size_t>(i)];
            }
            partials.push_back(inverse_transform(d, 1e-8));
        }
        GridField mag(hat.lattice);
        for (std::size_t i = 0; i < mag.values.size(); ++i) {
            double sq = 0.0;
            for (const GridField& p : partials) sq += p.values[i] * p.values[i];
            mag.values[i] = std::sqrt(sq);
        }
        return mag;
    }

    void add_gradient_integral(std::string id, std::span<const int> axes) {
        GridField mag = gradient_magnitude(axes);
        double full = 0.0, inner = 0.0;
        double x[4];
        const double w = lat.grid_weight();
        bool has_continuous = false;
        for (int s = 0; s < lat.num_axes(); ++s) has_continuous |= !lat.axis(s).periodic;
        for (int i = 0; i < lat.size(); ++i) {
            lat.grid_point(i, x);
            const double term = mag.values[static_cast<std::size_t>(i)] * w;
            full += term;
            bool in_half = true;
            for (int s = 0; s < lat.num_axes(); ++s)
                if (!lat.axis(s).periodic && std::abs(x[s]) > 0.5 * lat.config().box_half_width)
                    in_half = false;
            if (in_half) inner += term;
        }
        bool finite = true;
        if (has_continuous && full > 0.0) finite = (full - inner) <= 0.01 * full;
        report.integrals.push_back({std::move(id), full, finite});
    }
};

}  // namespace

std::string AdmissibilityReport::to_text() const {
    std::ostringstream os;
    os << "component " << component << " regime " << regime << "\n";
    os << "resonant_set " << resonant_set << "\n";
    os << "tolerance " << tolerance << "\n";
    for (const auto& c : conditions)
        os << "condition " << c.id << " defect " << c.defect << " "
           << (c.pass ? "pass" : "FAIL") << (c.detail.empty() ? "" : " # " + c.detail) << "\n";
    for (const auto& v : integrals)
        os << "integral " << v.id << " value " << v.value << " "
           << (v.finite ? "finite" : "DIVERGENT?") << "\n";
    os << "verdict " << (pass ? "pass" : "FAIL") << "\n";
    return os.str();
}

AdmissibilityReport check_admissibility(const KernelSpec& kernel, const Geometry& geometry,
                                        double tolerance) {
    if (!(tolerance > 0.0)) throw ConfigError("admissibility tolerance must be positive");
    RegimeTag tag = kernel.regime;
    tag.kind = geometry.config.kind;
    validate_regime(tag);

    const FrequencyLattice& lat = *geometry.lattice;
    GridField samples = kernel_samples(kernel, geometry);
    SpectralField hat = kernel_spectrum(kernel, geometry);
    SpectralProbe probe(hat);

    AdmissibilityReport report;
    report.component = kernel.component;
    report.regime = std::string(domain_name(tag.kind)) + "-" + regime_case_name(tag.regime_case);
    report.resonant_set = resonant_set_description(tag);
    report.tolerance = tolerance;

    AdmissibilityContext ctx{lat, samples, hat, probe, report, tolerance};

    const int naxes = lat.num_axes();
    std::vector<int> all_axes, transverse_axes;
    for (int s = 0; s < naxes; ++s) {
        all_axes.push_back(s);
        if (!lat.axis(s).periodic) transverse_axes.push_back(s);
    }

    ctx.add_integral("L1(G)", [](const double*) { return 1.0; });
    ctx.add_gradient_integral("L1(grad G)", all_axes);

    const int d = geometry.config.dim;
    switch (tag.kind) {
        case DomainKind::WholeSpace: {
            if (tag.sign == SignBlock::Plus) {
                ctx.add_integral("L1(x G)", [naxes](const double* x) {
                    double sq = 0.0;
                    for (int s = 0; s < naxes; ++s) sq += x[s] * x[s];
                    return std::sqrt(sq);
                });
                if (tag.regime_case == RegimeCase::I) {
                    double defect = 0.0;
                    for (const auto& pt : sphere_samples(tag.a, d))
                        defect = std::max(defect, std::abs(probe(pt)));
                    ctx.add_condition(d == 1 ? "or1" : "or2", defect,
                                      "sup |G^| over sphere |p| = " + std::to_string(tag.a));
                } else {  // case II, a = 0
                    std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
                    ctx.add_condition("or3", pow_two_pi_half(d) * std::abs(probe(origin)),
                                      "|(G,1)|");
                }
            }
            break;
        }
        case DomainKind::Interval: {
            if (tag.sign == SignBlock::Plus && tag.regime_case == RegimeCase::II) {
                const int nk = implied_resonant_mode(tag);
                double defect = 0.0;
                for (int sgn : {-1, 1}) {
                    const int mode[1] = {sgn * nk};
                    const int idx = lat.index_of_mode(mode);
                    if (idx >= 0)
                        defect = std::max(defect, std::abs(hat.coef[static_cast<std::size_t>(idx)]));
                }
                ctx.add_condition("or4", defect, "|G_{+-" + std::to_string(nk) + "}|");
            } else if (tag.sign == SignBlock::Plus && tag.regime_case == RegimeCase::III) {
                const int mode[1] = {0};
                const int idx = lat.index_of_mode(mode);
                const double g0 = idx >= 0 ? std::abs(hat.coef[static_cast<std::size_t>(idx)]) : 0.0;
                ctx.add_condition("or5", std::sqrt(kTwoPi) * g0, "|(G,1)|");
            }
            break;
        }
        case DomainKind::Layer: {
            if (tag.sign == SignBlock::Minus) break;
            if (tag.regime_case == RegimeCase::I || tag.regime_case == RegimeCase::III) {
                ctx.add_integral("L1(x_perp G)", [&transverse_axes](const double* x) {
                    double sq = 0.0;
                    for (int s : transverse_axes) sq += x[s] * x[s];
                    return std::sqrt(sq);
                });
            } else if (tag.regime_case == RegimeCase::II) {
                ctx.add_integral("L1(x_perp^2 G)", [&transverse_axes](const double* x) {
                    double sq = 0.0;
                    for (int s : transverse_axes) sq += x[s] * x[s];
                    return sq;
                });
            }

            if (tag.regime_case == RegimeCase::I || tag.regime_case == RegimeCase::II) {
                const int nk = implied_resonant_mode(tag);
                const int n_max = tag.regime_case == RegimeCase::I ? nk : nk - 1;
                const char* id = tag.regime_case == RegimeCase::I ? (d == 1 ? "or6" : "or7")
                                                                  : (d == 1 ? "or8" : "or9");
                for (int n = -n_max; n <= n_max; ++n) {
                    const double rho = std::sqrt(std::max(tag.a * tag.a - double(n) * n, 0.0));
                    double defect = 0.0;
                    for (const auto& pt : sphere_samples(rho, d)) {
                        std::vector<double> freq;
                        freq.push_back(n);
                        freq.insert(freq.end(), pt.begin(), pt.end());
                        defect = std::max(defect, std::abs(probe(freq)));
                    }
                    ctx.add_condition(std::string(id) + "(n=" + std::to_string(n) + ")", defect,
                                      "sup |G^_n| on |p| = " + std::to_string(rho));
                }
                if (tag.regime_case == RegimeCase::II) {
                    // Zeroth and first transverse moments of the +-n_k coefficient.
                    std::vector<double> freq(static_cast<std::size_t>(1 + d), 0.0);
                    freq[0] = nk;
                    ctx.add_condition("or10(zeroth)", pow_two_pi_half(d) * std::abs(probe(freq)),
                                      "|(G, e^{+-i n_k x1})|");
                    for (int s : transverse_axes) {
                        std::complex<double> moment = 0.0;
                        double x[4];
                        for (int i = 0; i < lat.size(); ++i) {
                            lat.grid_point(i, x);
                            moment += samples.values[static_cast<std::size_t>(i)] * x[s] *
                                      std::polar(1.0, -nk * x[0]);
                        }
                        moment *= lat.grid_weight() / std::sqrt(kTwoPi);
                        ctx.add_condition("or10(moment,s=" + std::to_string(s) + ")",
                                          std::abs(moment), "|(G, e^{+-i n_k x1} x_perp_s)|");
                    }
                }
            } else if (tag.regime_case == RegimeCase::III) {
                std::vector<double> origin(static_cast<std::size_t>(1 + d), 0.0);
                ctx.add_condition("or11", pow_two_pi_half(1 + d) * std::abs(probe(origin)),
                                  "|(G,1)|");
            }
            break;
        }
    }

    report.pass = true;
    for (const auto& c : report.conditions) report.pass = report.pass && c.pass;
    for (const auto& v : report.integrals) report.pass = report.pass && v.finite;
    return report;
}

}  // namespace specfp
