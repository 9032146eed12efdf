#include "specfp/geometry.hpp"

#include <cmath>
#include <numbers>

#include "specfp/errors.hpp"

namespace specfp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

const char* domain_name(DomainKind kind) {
    switch (kind) {
        case DomainKind::Interval: return "interval";
        case DomainKind::WholeSpace: return "whole_space";
        case DomainKind::Layer: return "layer";
    }
    return "?";
}

std::shared_ptr<const FrequencyLattice> FrequencyLattice::build(const GeometryConfig& config) {
    auto check_even_positive = [](int n, const char* what) {
        if (n <= 0 || n % 2 != 0)
            throw GeometryError(std::string(what) + " must be a positive even integer, got " +
                                std::to_string(n));
    };

    auto lat = std::make_shared<FrequencyLattice>();
    lat->config_ = config;

    auto add_periodic = [&] {
        check_even_positive(config.mode_cutoff, "mode_cutoff");
        Axis ax;
        ax.periodic = true;
        ax.size = config.mode_cutoff;
        ax.dx = kTwoPi / ax.size;
        ax.x0 = 0.0;
        ax.dfreq = 1.0;
        ax.spectral_weight = 1.0;
        lat->axes_.push_back(ax);
    };
    auto add_continuous = [&] {
        check_even_positive(config.grid_points, "grid_points");
        if (!(config.box_half_width > 0.0))
            throw GeometryError("box_half_width must be positive");
        Axis ax;
        ax.periodic = false;
        ax.size = config.grid_points;
        ax.dx = 2.0 * config.box_half_width / ax.size;
        ax.x0 = -config.box_half_width;
        ax.dfreq = std::numbers::pi / config.box_half_width;  // 2pi / (2L)
        ax.spectral_weight = ax.dfreq;
        lat->axes_.push_back(ax);
    };

    switch (config.kind) {
        case DomainKind::Interval:
            add_periodic();
            break;
        case DomainKind::WholeSpace:
            if (config.dim < 1 || config.dim > 3)
                throw GeometryError("whole-space dimension must be 1, 2 or 3");
            for (int s = 0; s < config.dim; ++s) add_continuous();
            break;
        case DomainKind::Layer:
            if (config.dim < 1 || config.dim > 2)
                throw GeometryError("layer transverse dimension must be 1 or 2");
            add_periodic();
            for (int s = 0; s < config.dim; ++s) add_continuous();
            break;
    }

    lat->total_ = 1;
    for (const Axis& ax : lat->axes_) {
        lat->total_ *= ax.size;
        lat->spectral_weight_ *= ax.spectral_weight;
        lat->grid_weight_ *= ax.dx;
    }
    return lat;
}

void FrequencyLattice::offsets(int index, int* out) const {
    for (int s = num_axes() - 1; s >= 0; --s) {
        const int n = axes_[static_cast<std::size_t>(s)].size;
        out[s] = index % n;
        index /= n;
    }
}

int FrequencyLattice::index_of_offsets(const int* offs) const {
    int idx = 0;
    for (int s = 0; s < num_axes(); ++s) idx = idx * axes_[static_cast<std::size_t>(s)].size + offs[s];
    return idx;
}

std::vector<int> FrequencyLattice::mode(int index) const {
    int offs[4];
    offsets(index, offs);
    std::vector<int> m(static_cast<std::size_t>(num_axes()));
    for (int s = 0; s < num_axes(); ++s) m[static_cast<std::size_t>(s)] = offs[s] - axes_[static_cast<std::size_t>(s)].size / 2;
    return m;
}

int FrequencyLattice::index_of_mode(std::span<const int> m) const {
    if (static_cast<int>(m.size()) != num_axes()) return -1;
    int offs[4];
    for (int s = 0; s < num_axes(); ++s) {
        const int n = axes_[static_cast<std::size_t>(s)].size;
        const int o = m[static_cast<std::size_t>(s)] + n / 2;
        if (o < 0 || o >= n) return -1;
        offs[s] = o;
    }
    return index_of_offsets(offs);
}

void FrequencyLattice::frequency(int index, double* out) const {
    int offs[4];
    offsets(index, offs);
    for (int s = 0; s < num_axes(); ++s) {
        const Axis& ax = axes_[static_cast<std::size_t>(s)];
        out[s] = (offs[s] - ax.size / 2) * ax.dfreq;
    }
}

double FrequencyLattice::magnitude(int index) const {
    double f[4];
    frequency(index, f);
    double sq = 0.0;
    for (int s = 0; s < num_axes(); ++s) sq += f[s] * f[s];
    return std::sqrt(sq);
}

void FrequencyLattice::grid_point(int index, double* out) const {
    int offs[4];
    offsets(index, offs);
    for (int s = 0; s < num_axes(); ++s) {
        const Axis& ax = axes_[static_cast<std::size_t>(s)];
        out[s] = ax.x0 + offs[s] * ax.dx;
    }
}

int FrequencyLattice::conjugate_index(int index) const {
    int offs[4];
    offsets(index, offs);
    for (int s = 0; s < num_axes(); ++s) {
        const int n = axes_[static_cast<std::size_t>(s)].size;
        offs[s] = (n - offs[s]) % n;
    }
    return index_of_offsets(offs);
}

double FrequencyLattice::min_freq_spacing() const {
    double d = axes_.front().dfreq;
    for (const Axis& ax : axes_) d = std::min(d, ax.dfreq);
    return d;
}

Geometry build_geometry(const GeometryConfig& config) {
    return Geometry{config, FrequencyLattice::build(config)};
}

}  // namespace specfp
