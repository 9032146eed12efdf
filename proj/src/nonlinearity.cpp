#include "specfp/nonlinearity.hpp"

#include <cmath>
#include <random>

#include "specfp/errors.hpp"

namespace specfp {

namespace {

/// Largest eigenvalue of a small symmetric matrix by cyclic Jacobi sweeps.
double largest_eigenvalue(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 0.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += m[p][q] * m[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(m[p][q]) < 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * m[p][q], m[q][q] - m[p][p]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t i = 0; i < n; ++i) {
                    const double mip = m[i][p], miq = m[i][q];
                    m[i][p] = c * mip - s * miq;
                    m[i][q] = s * mip + c * miq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double mpi = m[p][i], mqi = m[q][i];
                    m[p][i] = c * mpi - s * mqi;
                    m[q][i] = s * mpi + c * mqi;
                }
            }
    }
    double lam = 0.0;
    for (std::size_t i = 0; i < n; ++i) lam = std::max(lam, m[i][i]);
    return lam;
}

double coupling(const NonlinearitySpec& spec, std::span<const double> u) {
    double t = 0.0;
    const std::size_t n = std::min(spec.coeffs.size(), u.size());
    for (std::size_t i = 0; i < n; ++i) t += spec.coeffs[i] * u[i];
    return t;
}

}  // namespace

double sigma_eval(SigmaKind kind, double t) {
    switch (kind) {
        case SigmaKind::None: return 0.0;
        case SigmaKind::Tanh: return std::tanh(t);
        case SigmaKind::Sin: return std::sin(t);
    }
    return 0.0;
}

double analytic_lipschitz(std::span<const NonlinearitySpec> specs) {
    // Spectral norm of A with rows eps_k c_k^T, via the top eigenvalue of A^T A.
    std::size_t width = 0;
    for (const auto& s : specs) width = std::max(width, s.coeffs.size());
    if (width == 0) return 0.0;
    std::vector<std::vector<double>> ata(width, std::vector<double>(width, 0.0));
    for (const auto& s : specs) {
        const double e2 = s.epsilon * s.epsilon;
        if (e2 == 0.0 || s.sigma == SigmaKind::None) continue;
        for (std::size_t i = 0; i < s.coeffs.size(); ++i)
            for (std::size_t j = 0; j < s.coeffs.size(); ++j)
                ata[i][j] += e2 * s.coeffs[i] * s.coeffs[j];
    }
    return std::sqrt(largest_eigenvalue(std::move(ata)));
}

double growth_constant(std::span<const NonlinearitySpec> specs) {
    return analytic_lipschitz(specs);
}

GridField growth_envelope(std::span<const NonlinearitySpec> specs, const LatticePtr& lattice) {
    GridField h(lattice);
    const FrequencyLattice& lat = *lattice;
    double x[4];
    for (int i = 0; i < lat.size(); ++i) {
        lat.grid_point(i, x);
        std::span<const double> coords(x, static_cast<std::size_t>(lat.num_axes()));
        double sq = 0.0;
        for (const auto& s : specs) {
            const double term = std::abs(s.forcing.eval(coords)) + std::abs(s.epsilon);
            sq += term * term;
        }
        h.values[static_cast<std::size_t>(i)] = std::sqrt(sq);
    }
    return h;
}

std::vector<GridField> eval_nonlinearity(std::span<const NonlinearitySpec> specs,
                                         const std::vector<GridField>& state) {
    if (state.empty()) throw ConfigError("state has no components");
    const LatticePtr& lattice = state.front().lattice;
    const FrequencyLattice& lat = *lattice;
    for (const GridField& g : state)
        if (g.lattice.get() != lattice.get() || static_cast<int>(g.values.size()) != lat.size())
            throw ConfigError("state components must share one grid");

    std::vector<GridField> out;
    out.reserve(specs.size());
    double x[4];
    std::vector<double> u(state.size());
    for (std::size_t k = 0; k < specs.size(); ++k) out.emplace_back(lattice);

    for (int i = 0; i < lat.size(); ++i) {
        lat.grid_point(i, x);
        std::span<const double> coords(x, static_cast<std::size_t>(lat.num_axes()));
        for (std::size_t l = 0; l < state.size(); ++l) u[l] = state[l].values[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < specs.size(); ++k) {
            const auto& spec = specs[k];
            double v = spec.forcing.eval(coords);
            if (spec.epsilon != 0.0 && spec.sigma != SigmaKind::None)
                v += spec.epsilon * sigma_eval(spec.sigma, coupling(spec, u));
            out[k].values[static_cast<std::size_t>(i)] = v;
        }
    }
    return out;
}

LipschitzCertificate lipschitz_certificate(std::span<const NonlinearitySpec> specs,
                                           const LatticePtr& lattice, int samples,
                                           std::uint64_t seed) {
    if (samples < 1) throw ConfigError("lipschitz_certificate requires samples >= 1");
    LipschitzCertificate cert;
    cert.analytic = analytic_lipschitz(specs);
    cert.samples = samples;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-10.0, 10.0);
    std::uniform_int_distribution<int> pick(0, lattice->size() - 1);
    const std::size_t n2 = specs.size();
    std::vector<double> u1(n2), u2(n2);
    double x[4];

    for (int s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < n2; ++i) u1[i] = box(rng);
        for (std::size_t i = 0; i < n2; ++i) u2[i] = box(rng);
        lattice->grid_point(pick(rng), x);
        std::span<const double> coords(x, static_cast<std::size_t>(lattice->num_axes()));

        double dist_sq = 0.0;
        for (std::size_t i = 0; i < n2; ++i) dist_sq += (u1[i] - u2[i]) * (u1[i] - u2[i]);
        if (dist_sq == 0.0) continue;

        double diff_sq = 0.0;
        for (const auto& spec : specs) {
            // The forcing cancels in the difference; evaluate anyway so the
            // sampled quotient is the quotient of the full F.
            double f1 = spec.forcing.eval(coords);
            double f2 = f1;
            if (spec.epsilon != 0.0 && spec.sigma != SigmaKind::None) {
                f1 += spec.epsilon * sigma_eval(spec.sigma, coupling(spec, u1));
                f2 += spec.epsilon * sigma_eval(spec.sigma, coupling(spec, u2));
            }
            diff_sq += (f1 - f2) * (f1 - f2);
        }
        cert.empirical = std::max(cert.empirical, std::sqrt(diff_sq / dist_sq));
    }
    cert.pass = cert.empirical <= cert.analytic + 1e-9;
    return cert;
}

}  // namespace specfp
