#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "dispersive/core/error.hpp"

namespace dispersive {

using cplx = std::complex<double>;

// Periodic lattice on [-L, L)^d with n points per axis. Axes are stored
// row-major; the first d-k axes form the x-block and the last k the y-block.
//
// Normalization: forward carries 1/n^d, inverse carries 1, so that
//   F(xi) = n^{-d} sum_X f(X) e^{-i xi.X},   f(X) = sum_xi F(xi) e^{i xi.X}
// with X = -L + h*i and xi = (pi/L)*kappa, kappa in {-n/2, ..., n/2-1}.
// Continuum L^2 norms are h^d sum |f|^2 = (2L)^d sum |F|^2.
class GridSpec {
public:
    GridSpec(int dim, int split, double half_length, std::size_t points)
        : dim_(dim), split_(split), half_length_(half_length), points_(points) {
        if (dim < 1)
            throw StructuralError("grid dimension must be at least 1");
        if (split < 1 || split > dim)
            throw StructuralError("split k must satisfy 1 <= k <= d");
        if (!(half_length > 0.0) || !std::isfinite(half_length))
            throw StructuralError("box half-length must be positive");
        if (points < 8 || (points & (points - 1)) != 0)
            throw StructuralError("points per axis must be a power of two >= 8");
        size_ = 1;
        for (int a = 0; a < dim; ++a)
            size_ *= points;
    }

    int dim() const noexcept { return dim_; }
    int split() const noexcept { return split_; }
    int x_dims() const noexcept { return dim_ - split_; }
    double half_length() const noexcept { return half_length_; }
    std::size_t points() const noexcept { return points_; }
    std::size_t size() const noexcept { return size_; }
    double spacing() const noexcept { return 2.0 * half_length_ / static_cast<double>(points_); }
    double cell_volume() const { return std::pow(spacing(), dim_); }
    double frequency_step() const noexcept { return std::numbers::pi / half_length_; }
    double nyquist() const noexcept { return frequency_step() * static_cast<double>(points_ / 2); }

    double coordinate(std::size_t i) const noexcept {
        return -half_length_ + spacing() * static_cast<double>(i);
    }

    // Signed integer frequency of storage index i (FFT order).
    long wavenumber(std::size_t i) const noexcept {
        const auto half = static_cast<long>(points_ / 2);
        const auto si = static_cast<long>(i);
        return si < half ? si : si - static_cast<long>(points_);
    }

    double frequency(std::size_t i) const noexcept {
        return frequency_step() * static_cast<double>(wavenumber(i));
    }

    // Number of lattice points in a block of `axes` trailing axes.
    std::size_t block_size(int axes) const noexcept {
        std::size_t s = 1;
        for (int a = 0; a < axes; ++a)
            s *= points_;
        return s;
    }

    void unravel(std::size_t flat, std::span<std::size_t> index) const noexcept {
        for (int a = dim_ - 1; a >= 0; --a) {
            index[static_cast<std::size_t>(a)] = flat % points_;
            flat /= points_;
        }
    }

    // Grid over the x-block alone; its split covers every axis.
    GridSpec x_block() const {
        if (x_dims() < 1)
            throw StructuralError("grid has an empty x-block");
        return GridSpec(x_dims(), x_dims(), half_length_, points_);
    }

    GridSpec with_split(int k) const { return GridSpec(dim_, k, half_length_, points_); }

    bool operator==(const GridSpec& o) const noexcept {
        return dim_ == o.dim_ && split_ == o.split_ && half_length_ == o.half_length_ &&
               points_ == o.points_;
    }

private:
    int dim_;
    int split_;
    double half_length_;
    std::size_t points_;
    std::size_t size_ = 1;
};

// Complex samples on a GridSpec, either physical values or a spectrum.
// Immutable once built; every entry is finite.
class Field {
public:
    Field(GridSpec grid, std::vector<cplx> values) : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw StructuralError("field length does not match grid");
        for (const auto& v : values_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DataError("field contains non-finite entries");
    }

    static Field zeros(const GridSpec& grid) { return Field(grid, std::vector<cplx>(grid.size())); }

    template <class F>
    static Field sample(const GridSpec& grid, F&& fn) {
        std::vector<cplx> v(grid.size());
        std::vector<std::size_t> idx(static_cast<std::size_t>(grid.dim()));
        std::vector<double> x(idx.size());
        for (std::size_t p = 0; p < v.size(); ++p) {
            grid.unravel(p, idx);
            for (std::size_t a = 0; a < idx.size(); ++a)
                x[a] = grid.coordinate(idx[a]);
            v[p] = fn(std::span<const double>(x));
        }
        return Field(grid, std::move(v));
    }

    const GridSpec& grid() const noexcept { return grid_; }
    const std::vector<cplx>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }

private:
    GridSpec grid_;
    std::vector<cplx> values_;
};

inline void require_same_grid(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid()))
        throw StructuralError("fields live on different grids");
}

// Physical-space L^2 norm, h^d sum |f|^2.
inline double l2_norm(const Field& f) {
    double s = 0.0;
    for (const auto& v : f.values())
        s += std::norm(v);
    return std::sqrt(s * f.grid().cell_volume());
}

inline double sup_norm(const Field& f) {
    double m = 0.0;
    for (const auto& v : f.values())
        m = std::max(m, std::abs(v));
    return m;
}

inline Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    std::vector<cplx> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = a[i] - b[i];
    return Field(a.grid(), std::move(v));
}

inline Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    std::vector<cplx> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = a[i] + b[i];
    return Field(a.grid(), std::move(v));
}

inline Field operator*(cplx c, const Field& a) {
    std::vector<cplx> v(a.values());
    for (auto& x : v)
        x *= c;
    return Field(a.grid(), std::move(v));
}

} // namespace dispersive
