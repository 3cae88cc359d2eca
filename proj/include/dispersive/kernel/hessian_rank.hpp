#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <vector>

#include "dispersive/core/symbol.hpp"

namespace dispersive {

// Full Hessian of Phi, or of xi -> Phi(xi, eta) with eta frozen.
struct HessianMode {
    std::optional<std::vector<double>> frozen_eta;

    static HessianMode full() { return {}; }
    static HessianMode frozen(std::vector<double> eta) { return {std::move(eta)}; }
};

struct RankProbe {
    std::vector<std::vector<double>> points;
    std::vector<std::vector<double>> singular_values; // descending, per point
    std::vector<int> ranks;
    int min_rank = 0;
    double threshold = 1e-8;
    bool smoothness_warning = false;
    double max_step_inconsistency = 0.0; // between steps h and 2h, relative

    std::size_t violations(int expected) const {
        return static_cast<std::size_t>(
            std::count_if(ranks.begin(), ranks.end(), [&](int r) { return r < expected; }));
    }
};

namespace detail {

// Central-difference Hessian of fn at z with step h in every direction.
template <class Fn>
Eigen::MatrixXd central_hessian(Fn&& fn, const std::vector<long double>& z, long double h) {
    const auto n = static_cast<Eigen::Index>(z.size());
    Eigen::MatrixXd H(n, n);
    auto shifted = [&](Eigen::Index i, long double a, Eigen::Index j, long double b) {
        std::vector<long double> w(z);
        w[static_cast<std::size_t>(i)] += a;
        w[static_cast<std::size_t>(j)] += b;
        return fn(w);
    };
    const long double f0 = fn(z);
    for (Eigen::Index i = 0; i < n; ++i) {
        const long double fp = shifted(i, h, i, 0.0L), fm = shifted(i, -h, i, 0.0L);
        H(i, i) = static_cast<double>((fp - 2.0L * f0 + fm) / (h * h));
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const long double v = shifted(i, h, j, h) - shifted(i, h, j, -h) -
                                  shifted(i, -h, j, h) + shifted(i, -h, j, -h);
            H(i, j) = H(j, i) = static_cast<double>(v / (4.0L * h * h));
        }
    }
    return H;
}

} // namespace detail

// Numerical Hessian ranks at the given points (unit vectors in the block being
// differentiated). Second differences at steps h and 2h (h = 1e-4 |z|) are
// Richardson-combined to fourth order; rank counts singular values above
// 1e-8 sigma_max. A step-h versus step-2h mismatch above 1e-3 relative sets
// the smoothness warning.
inline RankProbe probe_hessian_rank(const Symbol& phi, const HessianMode& mode,
                                    std::vector<std::vector<double>> points) {
    const int d = phi.dim();
    const int free_dims = mode.frozen_eta ? d - static_cast<int>(mode.frozen_eta->size()) : d;
    if (free_dims < 1)
        throw StructuralError("frozen block leaves no free directions");
    RankProbe probe;
    probe.points = std::move(points);
    probe.min_rank = free_dims;
    for (const auto& p : probe.points) {
        if (static_cast<int>(p.size()) != free_dims)
            throw StructuralError("probe point has the wrong dimension");
        std::vector<long double> z(p.begin(), p.end());
        auto fn = [&](const std::vector<long double>& w) {
            if (!mode.frozen_eta)
                return phi.evaluate(w);
            std::vector<long double> full(w);
            full.insert(full.end(), mode.frozen_eta->begin(), mode.frozen_eta->end());
            return phi.evaluate(full);
        };
        long double scale = 0.0L;
        for (auto v : z)
            scale += v * v;
        scale = std::sqrt(scale);
        if (mode.frozen_eta)
            for (double v : *mode.frozen_eta)
                scale = std::max(scale, static_cast<long double>(std::abs(v)));
        const long double h = 1e-4L * std::max(scale, 1e-3L);
        const Eigen::MatrixXd H1 = detail::central_hessian(fn, z, h);
        const Eigen::MatrixXd H2 = detail::central_hessian(fn, z, 2.0L * h);
        const Eigen::MatrixXd H = (4.0 * H1 - H2) / 3.0;

        const double hnorm = std::max(H.norm(), 1e-300);
        const double mismatch = (H1 - H2).norm() / hnorm;
        probe.max_step_inconsistency = std::max(probe.max_step_inconsistency, mismatch);
        if (mismatch > 1e-3)
            probe.smoothness_warning = true;

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(H);
        const auto s = svd.singularValues();
        std::vector<double> sv(s.data(), s.data() + s.size());
        std::sort(sv.begin(), sv.end(), std::greater<>());
        int rank = 0;
        for (double v : sv)
            if (v > probe.threshold * sv.front())
                ++rank;
        probe.singular_values.push_back(std::move(sv));
        probe.ranks.push_back(rank);
        probe.min_rank = std::min(probe.min_rank, rank);
    }
    return probe;
}

// Default sample set: `count` quasi-uniform points on the unit sphere of the
// differentiated block.
inline RankProbe probe_hessian_rank(const Symbol& phi, const HessianMode& mode = HessianMode::full(),
                                    std::size_t count = 64) {
    const int free_dims =
        mode.frozen_eta ? phi.dim() - static_cast<int>(mode.frozen_eta->size()) : phi.dim();
    return probe_hessian_rank(phi, mode, sphere_points(free_dims, count));
}

} // namespace dispersive
