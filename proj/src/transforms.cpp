#include "specfp/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "specfp/errors.hpp"
#include "specfp/kernels.hpp"

namespace specfp {

namespace {

constexpr double kSqrtTwoPi = 2.5066282746310002;  // sqrt(2*pi)

/// FFTW wrapper: plans are cached per (size, direction) together with an
/// aligned buffer and reused under a lock. Callers copy in and out, so the
/// public transform entry points below stay pure and re-entrant.
class DftEngine {
public:
    static void run(std::complex<double>* data, int n, bool inverse) {
        static DftEngine engine;
        engine.execute(data, n, inverse);
    }

private:
    struct Plan {
        fftw_plan plan = nullptr;
        fftw_complex* buf = nullptr;
    };

    std::mutex mutex_;
    std::map<std::pair<int, int>, Plan> plans_;

    ~DftEngine() {
        for (auto& [key, p] : plans_) {
            fftw_destroy_plan(p.plan);
            fftw_free(p.buf);
        }
    }

    void execute(std::complex<double>* data, int n, bool inverse) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, inverse ? 1 : 0);
        auto it = plans_.find(key);
        if (it == plans_.end()) {
            Plan p;
            p.buf = fftw_alloc_complex(static_cast<std::size_t>(n));
            p.plan = fftw_plan_dft_1d(n, p.buf, p.buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE);
            it = plans_.emplace(key, p).first;
        }
        fftw_complex* buf = it->second.buf;
        for (int i = 0; i < n; ++i) {
            buf[i][0] = data[i].real();
            buf[i][1] = data[i].imag();
        }
        fftw_execute(it->second.plan);
        for (int i = 0; i < n; ++i) data[i] = {buf[i][0], buf[i][1]};
    }
};

/// Apply the forward (grid -> centered spectral) or inverse rule along one
/// axis of the row-major array. Normalization per axis:
///   periodic    forward scale sqrt(2pi)/N,          inverse scale 1/sqrt(2pi)
///   continuous  forward scale (-1)^m dx/sqrt(2pi),  inverse scale (-1)^m dp/sqrt(2pi)
/// The (-1)^m twist accounts for the grid starting at -L rather than 0.
void transform_axis(std::vector<std::complex<double>>& data, const FrequencyLattice& lat, int axis,
                    bool inverse) {
    const Axis& ax = lat.axis(axis);
    const int n = ax.size;
    int stride = 1;
    for (int s = axis + 1; s < lat.num_axes(); ++s) stride *= lat.axis(s).size;
    const int lines = static_cast<int>(data.size()) / n;

    std::vector<std::complex<double>> line(static_cast<std::size_t>(n));
    const double fwd_scale = ax.periodic ? kSqrtTwoPi / n : ax.dx / kSqrtTwoPi;
    const double inv_scale = ax.periodic ? 1.0 / kSqrtTwoPi : ax.dfreq / kSqrtTwoPi;

    for (int l = 0; l < lines; ++l) {
        // Start of line l: lines are enumerated over (outer block, inner offset).
        const int outer = l / stride;
        const int inner = l % stride;
        const int base = outer * n * stride + inner;

        if (!inverse) {
            for (int j = 0; j < n; ++j) line[static_cast<std::size_t>(j)] = data[static_cast<std::size_t>(base + j * stride)];
            DftEngine::run(line.data(), n, false);
            for (int o = 0; o < n; ++o) {
                const int m = o - n / 2;
                const int bin = (o + n / 2) % n;  // m mod n
                std::complex<double> v = line[static_cast<std::size_t>(bin)] * fwd_scale;
                if (!ax.periodic && (m & 1)) v = -v;
                data[static_cast<std::size_t>(base + o * stride)] = v;
            }
        } else {
            for (int o = 0; o < n; ++o) {
                const int m = o - n / 2;
                const int bin = (o + n / 2) % n;
                std::complex<double> v = data[static_cast<std::size_t>(base + o * stride)] * inv_scale;
                if (!ax.periodic && (m & 1)) v = -v;
                line[static_cast<std::size_t>(bin)] = v;
            }
            DftEngine::run(line.data(), n, true);
            for (int j = 0; j < n; ++j) data[static_cast<std::size_t>(base + j * stride)] = line[static_cast<std::size_t>(j)];
        }
    }
}

std::vector<std::complex<double>> inverse_complex(const SpectralField& field) {
    const FrequencyLattice& lat = *field.lattice;
    std::vector<std::complex<double>> work(field.coef.begin(), field.coef.end());
    for (int s = 0; s < lat.num_axes(); ++s) transform_axis(work, lat, s, true);
    return work;
}

}  // namespace

SpectralField forward_transform(const GridField& field) {
    if (!field.lattice) throw TransformError("grid field has no lattice");
    const FrequencyLattice& lat = *field.lattice;
    if (static_cast<int>(field.values.size()) != lat.size())
        throw TransformError("grid field size does not match lattice");

    std::vector<std::complex<double>> work(field.values.begin(), field.values.end());
    for (int s = 0; s < lat.num_axes(); ++s) transform_axis(work, lat, s, false);

    SpectralField out(field.lattice);
    out.coef = std::move(work);
    return out;
}

double imaginary_residue(const SpectralField& field) {
    auto work = inverse_complex(field);
    double m = 0.0;
    for (const auto& v : work) m = std::max(m, std::abs(v.imag()));
    return m;
}

GridField inverse_transform(const SpectralField& field, double imag_tolerance) {
    if (!field.lattice) throw TransformError("spectral field has no lattice");
    if (static_cast<int>(field.coef.size()) != field.lattice->size())
        throw TransformError("spectral field size does not match lattice");

    auto work = inverse_complex(field);
    GridField out(field.lattice);
    double residue = 0.0;
    for (std::size_t i = 0; i < work.size(); ++i) {
        residue = std::max(residue, std::abs(work[i].imag()));
        out.values[i] = work[i].real();
    }
    if (residue > imag_tolerance)
        throw TransformError("imaginary residue " + std::to_string(residue) +
                             " exceeds tolerance; input is not conjugate-symmetric");
    return out;
}

bool is_conjugate_symmetric(const SpectralField& field, double tolerance) {
    const FrequencyLattice& lat = *field.lattice;
    for (int i = 0; i < lat.size(); ++i) {
        const int j = lat.conjugate_index(i);
        const auto a = field.coef[static_cast<std::size_t>(i)];
        const auto b = std::conj(field.coef[static_cast<std::size_t>(j)]);
        if (std::abs(a - b) > tolerance) return false;
    }
    return true;
}

double h2_norm(const StateVector& state) {
    double sq = 0.0;
    for (const SpectralField& comp : state.components) {
        const FrequencyLattice& lat = *comp.lattice;
        const double w = lat.spectral_weight();
        for (int i = 0; i < lat.size(); ++i) {
            const double mag2 = std::pow(lat.magnitude(i), 2);
            sq += (1.0 + mag2 * mag2) * std::norm(comp.coef[static_cast<std::size_t>(i)]) * w;
        }
    }
    return std::sqrt(sq);
}

double h2_distance(const StateVector& a, const StateVector& b) {
    double sq = 0.0;
    for (std::size_t k = 0; k < a.components.size(); ++k) {
        const FrequencyLattice& lat = *a.components[k].lattice;
        const double w = lat.spectral_weight();
        for (int i = 0; i < lat.size(); ++i) {
            const double mag2 = std::pow(lat.magnitude(i), 2);
            const auto d = a.components[k].coef[static_cast<std::size_t>(i)] -
                           b.components[k].coef[static_cast<std::size_t>(i)];
            sq += (1.0 + mag2 * mag2) * std::norm(d) * w;
        }
    }
    return std::sqrt(sq);
}

double l2_norm(const SpectralField& field) {
    double sq = 0.0;
    const double w = field.lattice->spectral_weight();
    for (const auto& c : field.coef) sq += std::norm(c) * w;
    return std::sqrt(sq);
}

double l2_norm(const GridField& field) {
    double sq = 0.0;
    const double w = field.lattice->grid_weight();
    for (double v : field.values) sq += v * v * w;
    return std::sqrt(sq);
}

GridField laplacian_field(const SpectralField& field) {
    SpectralField d2(field.lattice);
    const FrequencyLattice& lat = *field.lattice;
    for (int i = 0; i < lat.size(); ++i) {
        const double mag = lat.magnitude(i);
        d2.coef[static_cast<std::size_t>(i)] = -mag * mag * field.coef[static_cast<std::size_t>(i)];
    }
    return inverse_transform(d2);
}

StateVector project_constrained(const StateVector& state, std::span<const RegimeTag> regimes) {
    if (regimes.size() != state.components.size())
        throw GeometryError("one regime tag per component required");
    const FrequencyLattice& lat = *state.lattice();
    if (lat.config().kind != DomainKind::Interval)
        throw GeometryError("constrained-subspace projection is defined on the interval only");

    StateVector out = state;
    for (std::size_t k = 0; k < out.components.size(); ++k) {
        const RegimeTag& tag = regimes[k];
        for (int m : constrained_modes(tag)) {
            const int mode[1] = {m};
            const int idx = lat.index_of_mode(mode);
            if (idx >= 0) out.components[k].coef[static_cast<std::size_t>(idx)] = 0.0;
        }
    }
    return out;
}

StateVector state_sub(const StateVector& a, const StateVector& b) {
    StateVector out = a;
    for (std::size_t k = 0; k < out.components.size(); ++k)
        for (std::size_t i = 0; i < out.components[k].coef.size(); ++i)
            out.components[k].coef[i] -= b.components[k].coef[i];
    return out;
}

}  // namespace specfp
