#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dispersive/core/fft.hpp"
#include "dispersive/core/propagator.hpp"
#include "dispersive/core/rescale.hpp"
#include "dispersive/norms/mixed_norm.hpp"

using namespace dispersive;

namespace {

Field random_field(const GridSpec& g, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    std::vector<cplx> v(g.size());
    for (auto& x : v)
        x = {n(rng), n(rng)};
    return Field(g, std::move(v));
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST(GridSpec, RejectsBadShapes) {
    EXPECT_THROW(GridSpec(2, 0, 1.0, 16), StructuralError);
    EXPECT_THROW(GridSpec(2, 3, 1.0, 16), StructuralError);
    EXPECT_THROW(GridSpec(2, 1, 1.0, 12), StructuralError);
    EXPECT_THROW(GridSpec(2, 1, 1.0, 4), StructuralError);
    EXPECT_THROW(GridSpec(2, 1, -1.0, 16), StructuralError);
}

TEST(GridSpec, FrequencyLatticeIsSymmetricExceptNyquist) {
    GridSpec g(1, 1, 3.0, 16);
    std::vector<long> k;
    for (std::size_t i = 0; i < 16; ++i)
        k.push_back(g.wavenumber(i));
    std::sort(k.begin(), k.end());
    EXPECT_EQ(k.front(), -8);
    EXPECT_EQ(k.back(), 7);
    EXPECT_DOUBLE_EQ(g.frequency(1), std::numbers::pi / 3.0);
    EXPECT_DOUBLE_EQ(g.spacing(), 6.0 / 16.0);
}

TEST(Transform, DeltaHasConstantSpectrum) {
    GridSpec g(2, 1, 4.0, 16);
    std::vector<cplx> v(g.size());
    v[8 * 16 + 8] = 1.0; // X = 0
    auto F = forward_transform(Field(g, v));
    for (const auto& c : F.values())
        EXPECT_NEAR(std::abs(c - cplx(1.0 / 256.0)), 0.0, 1e-15);
}

TEST(Transform, RoundTripOnRandomField) {
    std::mt19937_64 rng(7);
    GridSpec g(3, 1, 2.0, 16);
    auto f = random_field(g, rng);
    auto back = inverse_transform(forward_transform(f));
    EXPECT_LE(l2_norm(back - f) / l2_norm(f), 1e-12);
}

TEST(Transform, PlaneWaveHasOneCoefficient) {
    GridSpec g(2, 1, 5.0, 32);
    const double k0 = g.frequency(3), k1 = g.frequency(29);
    auto f = Field::sample(g, [&](std::span<const double> x) { return std::polar(1.0, k0 * x[0] + k1 * x[1]); });
    auto F = forward_transform(f);
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double expect = (i == 3 * 32 + 29) ? 1.0 : 0.0;
        EXPECT_NEAR(std::abs(F[i]), expect, 1e-13);
    }
}

TEST(Transform, ParsevalUnderGridNormalization) {
    std::mt19937_64 rng(3);
    GridSpec g(2, 1, 3.0, 32);
    auto f = random_field(g, rng);
    auto F = forward_transform(f);
    double s = 0.0;
    for (const auto& c : F.values())
        s += std::norm(c);
    const double spectral = std::sqrt(std::pow(2.0 * g.half_length(), 2) * s);
    EXPECT_NEAR(spectral / l2_norm(f), 1.0, 1e-13);
}

TEST(Transform, DimensionMismatchIsStructural) {
    GridSpec g(2, 1, 3.0, 16);
    EXPECT_THROW(Field(g, std::vector<cplx>(10)), StructuralError);
}

TEST(Propagator, TimeZeroIsIdentity) {
    std::mt19937_64 rng(11);
    GridSpec g(2, 1, 3.0, 32);
    auto f = random_field(g, rng);
    auto u = apply_propagator(f, fractional_power_symbol(2.0, 2, 1), 0.0);
    EXPECT_LE(max_abs_diff(u, f), 1e-13);
}

TEST(Propagator, UnitarityAndGroupLaw) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ut(-3.0, 3.0);
    GridSpec g(2, 1, 6.0, 64);
    std::vector<Symbol> syms{fractional_power_symbol(2.0, 2, 1), wave_symbol(2, 1),
                             biharmonic_symbol(2, 1), fractional_power_symbol(1.5, 2, 1)};
    for (int c = 0; c < 10; ++c) {
        const auto& phi = syms[static_cast<std::size_t>(c) % syms.size()];
        Propagator prop(phi, g);
        auto f = random_field(g, rng);
        const double t1 = ut(rng), t2 = ut(rng);
        auto u1 = prop.apply(f, t1);
        EXPECT_NEAR(l2_norm(u1), l2_norm(f), 1e-12 * l2_norm(f));
        auto u12 = prop.apply(u1, t2);
        auto direct = prop.apply(f, t1 + t2);
        EXPECT_LE(l2_norm(u12 - direct), 1e-12 * l2_norm(f));
    }
}

TEST(Propagator, NonFiniteSymbolIsReported) {
    Symbol bad(SymbolKind::custom, "log", 1.0, 1, 1, 1, 0,
               [](std::span<const long double> z) { return std::log(std::abs(z[0]) - 2.0L); });
    GridSpec g(1, 1, 2.0, 16);
    EXPECT_THROW(apply_propagator(Field::zeros(g), bad, 1.0), SymbolEvaluationError);
}

namespace {

// u(t,x) = (2 pi)^{-1/2} int exp(i x xi + i t xi^2 - xi^2/2) dxi by composite Simpson.
cplx gaussian_flow_by_quadrature(double t, double x) {
    const int n = 4000;
    const double a = -14.0, b = 14.0, h = (b - a) / n;
    cplx s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double xi = a + h * i;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += w * std::exp(cplx(-0.5 * xi * xi, x * xi + t * xi * xi));
    }
    return s * h / 3.0 / std::sqrt(2.0 * std::numbers::pi);
}

} // namespace

TEST(Propagator, FreeGaussianMatchesQuadratureOracle) {
    GridSpec g(1, 1, 20.0, 512);
    auto f = Field::sample(g, [](std::span<const double> x) { return cplx(std::exp(-0.5 * x[0] * x[0])); });
    auto u = apply_propagator(f, fractional_power_symbol(2.0, 1, 1), 1.0);
    double err_closed = 0.0, err_oracle = 0.0;
    for (std::size_t i = 0; i < g.points(); ++i) {
        const double x = g.coordinate(i);
        // |u| = |1 - 2it|^{-1/2} exp(-x^2 / (2 (1 + 4t^2)))
        const double closed = std::pow(5.0, -0.25) * std::exp(-x * x / 10.0);
        err_closed = std::max(err_closed, std::abs(std::abs(u[i]) - closed));
        err_oracle = std::max(err_oracle, std::abs(u[i] - gaussian_flow_by_quadrature(1.0, x)));
    }
    EXPECT_LE(err_closed, 1e-6);
    EXPECT_LE(err_oracle, 1e-6);
}

TEST(Symbol, BuiltinsAreHomogeneousAndBounded) {
    for (const auto& phi : {fractional_power_symbol(2.0, 3, 1), wave_symbol(3, 1), biharmonic_symbol(3, 2),
                            fractional_power_symbol(3.0, 3, 2), fractional_power_symbol(0.5, 2, 1)}) {
        EXPECT_LE(homogeneity_defect(phi), 1e-10) << phi.name();
        EXPECT_LE(sphere_bound(phi), 1.0 + 1e-12) << phi.name();
    }
    EXPECT_EQ(wave_symbol(3, 1).hessian_rank(), 2);
    EXPECT_EQ(fractional_power_symbol(2.0, 3, 1).hessian_rank(), 3);
    EXPECT_EQ(biharmonic_symbol(3, 1).restricted_rank(), 2);
}

TEST(Rescale, IdentityAndNonDyadic) {
    std::mt19937_64 rng(2);
    GridSpec g(2, 1, 3.0, 16);
    auto f = random_field(g, rng);
    EXPECT_LE(max_abs_diff(rescale_field(f, 1.0), f), 0.0);
    EXPECT_THROW(rescale_field(f, 3.0), UnsupportedScaleError);
    EXPECT_THROW(rescale_field(f, 0.3), UnsupportedScaleError);
}

TEST(Rescale, MatchesAnalyticDilation) {
    GridSpec g(2, 1, 16.0, 128);
    auto bump = [](double a) {
        return [a](std::span<const double> x) {
            const double r2 = a * a * (x[0] * x[0] + x[1] * x[1]);
            return std::exp(cplx(-r2 / 2.0, a * 1.3 * x[0]));
        };
    };
    auto f = Field::sample(g, bump(1.0));
    for (double delta : {2.0, 0.5}) {
        auto expect = Field::sample(g, bump(delta));
        EXPECT_LE(max_abs_diff(rescale_field(f, delta), expect), 1e-10) << delta;
    }
}

TEST(Rescale, HomogeneousNormScalesDyadically) {
    // Mid-band bump: spectrum centred on |xi| ~ 1.
    GridSpec g(2, 1, 24.0, 256);
    auto f = Field::sample(g, [](std::span<const double> x) {
        return std::exp(cplx(-(x[0] * x[0] + x[1] * x[1]) / 8.0, 1.2 * x[0]));
    });
    const double delta = 2.0;
    for (double s : {0.0, 0.5, 1.0}) {
        const double ratio = hdot_norm(rescale_field(f, delta), s) / hdot_norm(f, s);
        EXPECT_NEAR(ratio / std::pow(delta, s - 1.0), 1.0, 0.02) << s;
    }
}
