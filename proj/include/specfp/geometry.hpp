#ifndef SPECFP_GEOMETRY_HPP
#define SPECFP_GEOMETRY_HPP

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace specfp {

enum class DomainKind { Interval, WholeSpace, Layer };

const char* domain_name(DomainKind kind);

/// Discretization parameters for one of the three domains.
///   Interval:   [0, 2pi] periodic, `mode_cutoff` Fourier modes.
///   WholeSpace: R^dim truncated to [-box_half_width, box_half_width]^dim,
///               `grid_points` samples per axis.
///   Layer:      [0, 2pi] x R^dim, periodic axis first.
struct GeometryConfig {
    DomainKind kind = DomainKind::Interval;
    int dim = 0;                  // transverse dimension (WholeSpace 1..3, Layer 1..2)
    double box_half_width = 0.0;  // L for continuous axes
    int grid_points = 0;          // per continuous axis, must be even
    int mode_cutoff = 0;          // modes on the periodic axis, must be even
};

/// One axis of the tensor-product lattice. A periodic axis carries integer
/// wavenumbers m in {-N/2,...,N/2-1} against grid points x_j = 2pi j / N;
/// a continuous axis carries frequencies m * (pi/L) against x_j = -L + j dx.
struct Axis {
    bool periodic = true;
    int size = 0;
    double dx = 0.0;               // grid spacing
    double x0 = 0.0;               // first grid point
    double dfreq = 0.0;            // frequency spacing (1 for periodic axes)
    double spectral_weight = 1.0;  // Parseval weight per mode along this axis
};

/// Tensor-product frequency lattice shared by spectral and grid data.
/// Flat indices are row-major with axis 0 slowest; per-axis offset o maps to
/// mode m = o - N/2 on the spectral side and to grid point index o on the
/// grid side, so both representations have identical storage shape.
class FrequencyLattice {
public:
    static std::shared_ptr<const FrequencyLattice> build(const GeometryConfig& config);

    int size() const { return total_; }
    int num_axes() const { return static_cast<int>(axes_.size()); }
    const Axis& axis(int s) const { return axes_[static_cast<std::size_t>(s)]; }
    const GeometryConfig& config() const { return config_; }

    void offsets(int index, int* out) const;
    int index_of_offsets(const int* offs) const;

    /// Integer mode tuple (offset - N/2 per axis).
    std::vector<int> mode(int index) const;
    int index_of_mode(std::span<const int> mode) const;  // -1 if outside the lattice

    /// Per-axis frequency values (n for periodic axes, p for continuous ones).
    void frequency(int index, double* out) const;
    double magnitude(int index) const;

    void grid_point(int index, double* out) const;

    /// Flat index of the conjugate partner (-m per axis, Nyquist self-paired).
    int conjugate_index(int index) const;
    bool self_conjugate(int index) const { return conjugate_index(index) == index; }

    double spectral_weight() const { return spectral_weight_; }
    double grid_weight() const { return grid_weight_; }

    /// Smallest positive frequency spacing over the axes.
    double min_freq_spacing() const;

private:
    GeometryConfig config_;
    std::vector<Axis> axes_;
    int total_ = 0;
    double spectral_weight_ = 1.0;
    double grid_weight_ = 1.0;
};

using LatticePtr = std::shared_ptr<const FrequencyLattice>;

struct Geometry {
    GeometryConfig config;
    LatticePtr lattice;
};

/// Validates the configuration and builds the discrete lattice.
Geometry build_geometry(const GeometryConfig& config);

/// Fourier coefficients of one component on a lattice.
struct SpectralField {
    LatticePtr lattice;
    std::vector<std::complex<double>> coef;

    SpectralField() = default;
    explicit SpectralField(LatticePtr lat)
        : lattice(std::move(lat)), coef(lattice ? static_cast<std::size_t>(lattice->size()) : 0) {}
};

/// Real samples of one component on the physical grid.
struct GridField {
    LatticePtr lattice;
    std::vector<double> values;

    GridField() = default;
    explicit GridField(LatticePtr lat)
        : lattice(std::move(lat)), values(lattice ? static_cast<std::size_t>(lattice->size()) : 0) {}
};

/// The full N2-component spectral state sharing one lattice.
struct StateVector {
    std::vector<SpectralField> components;

    StateVector() = default;
    StateVector(const LatticePtr& lat, int n_components)
        : components(static_cast<std::size_t>(n_components), SpectralField(lat)) {}

    int num_components() const { return static_cast<int>(components.size()); }
    const LatticePtr& lattice() const { return components.front().lattice; }
};

}  // namespace specfp

#endif
