#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "dispersive/core/grid.hpp"

namespace dispersive {

namespace detail {

// FFTW's planner is not reentrant, so plan creation is serialized here.
// Execution through fftw_execute_dft on distinct arrays is thread-safe, which
// makes forward/inverse safe to call concurrently on distinct Fields.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int dim, std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(dim, n, sign);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;
        std::vector<int> shape(static_cast<std::size_t>(dim), static_cast<int>(n));
        std::size_t total = 1;
        for (int a = 0; a < dim; ++a)
            total *= n;
        auto* scratch = fftw_alloc_complex(total);
        fftw_plan plan = fftw_plan_dft(dim, shape.data(), scratch, scratch, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        if (plan == nullptr)
            throw StructuralError("FFTW could not create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

    ~PlanCache() {
        for (auto& [key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

private:
    PlanCache() = default;

    std::mutex mutex_;
    std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

// Multiplies by (-1)^{sum of indices}, which moves the phase origin from
// index 0 to the box centre X = 0.
inline void checkerboard(const GridSpec& g, std::vector<cplx>& v) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(g.dim()));
    for (std::size_t p = 0; p < v.size(); ++p) {
        g.unravel(p, idx);
        std::size_t s = 0;
        for (auto i : idx)
            s += i;
        if (s & 1U)
            v[p] = -v[p];
    }
}

inline void transform_in_place(const GridSpec& g, std::vector<cplx>& v, int sign) {
    fftw_plan plan = PlanCache::instance().get(g.dim(), g.points(), sign);
    auto* data = reinterpret_cast<fftw_complex*>(v.data());
    fftw_execute_dft(plan, data, data);
}

} // namespace detail

// Raw spectrum buffer in FFT storage order, normalized as documented on GridSpec.
inline std::vector<cplx> forward_values(const GridSpec& g, std::vector<cplx> v) {
    if (v.size() != g.size())
        throw StructuralError("buffer length does not match grid");
    detail::transform_in_place(g, v, FFTW_FORWARD);
    detail::checkerboard(g, v);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& x : v)
        x *= scale;
    return v;
}

inline std::vector<cplx> inverse_values(const GridSpec& g, std::vector<cplx> v) {
    if (v.size() != g.size())
        throw StructuralError("buffer length does not match grid");
    detail::checkerboard(g, v);
    detail::transform_in_place(g, v, FFTW_BACKWARD);
    return v;
}

inline Field forward_transform(const Field& f) {
    return Field(f.grid(), forward_values(f.grid(), f.values()));
}

inline Field inverse_transform(const Field& F) {
    return Field(F.grid(), inverse_values(F.grid(), F.values()));
}

// |xi|^2 at every lattice point, in storage order.
inline std::vector<double> squared_frequency_modulus(const GridSpec& g, int first_axis = 0,
                                                     int last_axis = -1) {
    if (last_axis < 0)
        last_axis = g.dim();
    std::vector<double> out(g.size());
    std::vector<std::size_t> idx(static_cast<std::size_t>(g.dim()));
    for (std::size_t p = 0; p < out.size(); ++p) {
        g.unravel(p, idx);
        double s = 0.0;
        for (int a = first_axis; a < last_axis; ++a) {
            const double w = g.frequency(idx[static_cast<std::size_t>(a)]);
            s += w * w;
        }
        out[p] = s;
    }
    return out;
}

} // namespace dispersive
