#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dispersive/solver/picard.hpp"

using namespace dispersive;

namespace {

Field gaussian(const GridSpec& g, double amp) {
    return Field::sample(g, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (double v : x)
            r2 += v * v;
        return cplx(amp * std::exp(-0.5 * r2), 0.0);
    });
}

PicardSetup small_setup(double lambda = 1.0, std::size_t n = 16) {
    const auto ex = picard_exponents(3, 3.0, 1.0, 3.0);
    return PicardSetup{fractional_power_symbol(3.0, 3, 2), GridSpec(3, 2, 8.0, n),
                       NonlinearSpec(3.0, PowerForm::preserving, lambda), ex};
}

} // namespace

TEST(Nonlinearity, PointwiseValues) {
    const NonlinearSpec pres(3.0, PowerForm::preserving, 1.0), plain(2.5, PowerForm::plain, -1.0);
    const cplx z(3.0, 4.0);
    EXPECT_NEAR(std::abs(pres(z) - 25.0 * z), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(plain(z) - cplx(-std::pow(5.0, 2.5), 0.0)), 0.0, 1e-12);
    EXPECT_EQ(pres(0.0), cplx(0.0));
    EXPECT_EQ(NonlinearSpec(3.0, PowerForm::preserving, 0.0)(z), cplx(0.0));
    EXPECT_THROW(NonlinearSpec(1.0, PowerForm::plain, 1.0), StructuralError);
    EXPECT_THROW(NonlinearSpec(3.0, PowerForm::plain, 2.0), StructuralError);
}

// |F(u)| = |u|^p and |F(u) - F(v)| <= p max(|u|, |v|)^{p-1} |u - v|.
TEST(Nonlinearity, SizeAndDifferenceBounds) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> pd(1.1, 5.0);
    for (int i = 0; i < 5000; ++i) {
        const double p = pd(rng);
        const cplx u(n(rng), n(rng)), v(n(rng), n(rng));
        for (auto form : {PowerForm::preserving, PowerForm::plain}) {
            const NonlinearSpec F(p, form, i % 2 ? 1.0 : -1.0);
            EXPECT_NEAR(std::abs(F(u)), std::pow(std::abs(u), p), 1e-12 * (1.0 + std::pow(std::abs(u), p)));
            const double bound = p * std::pow(std::max(std::abs(u), std::abs(v)), p - 1.0) * std::abs(u - v);
            EXPECT_LE(std::abs(F(u) - F(v)), bound * (1.0 + 1e-12) + 1e-15);
        }
    }
}

TEST(Duhamel, RejectsBadTimeGrids) {
    const GridSpec g(1, 1, 8.0, 32);
    const Propagator prop(fractional_power_symbol(2.0, 1, 1), g);
    const auto f = gaussian(g, 1.0);
    const NonlinearSpec F(3.0, PowerForm::preserving, 1.0);
    auto few = uniform_times(1.0, 5);
    EXPECT_THROW(duhamel_map(linear_flow(f, prop, few), f, prop, F, few), StructuralError);
    auto bent = uniform_times(1.0, 9);
    bent[4] += 0.01;
    EXPECT_THROW(duhamel_map(linear_flow(f, prop, bent), f, prop, F, bent), StructuralError);
}

TEST(Duhamel, WithoutNonlinearityIsTheLinearFlow) {
    const GridSpec g(2, 1, 8.0, 32);
    const Propagator prop(fractional_power_symbol(2.0, 2, 1), g);
    const auto f = gaussian(g, 1.0);
    const auto t = uniform_times(0.5, 9);
    const auto lin = linear_flow(f, prop, t);
    const auto out = duhamel_map(lin, f, prop, NonlinearSpec(3.0, PowerForm::preserving, 0.0), t);
    for (std::size_t i = 0; i < t.size(); ++i) {
        EXPECT_LE(sup_norm(out[i] - lin[i]), 1e-14);
        EXPECT_NEAR(l2_norm(lin[i]), l2_norm(f), 1e-12 * l2_norm(f));
    }
}

// Self-convergence of the cumulative trapezoid: successive differences shrink
// by 2^order with order close to 2.
TEST(Duhamel, TrapezoidIsSecondOrder) {
    const GridSpec g(1, 1, 8.0, 64);
    const Propagator prop(fractional_power_symbol(2.0, 1, 1), g);
    const auto f = gaussian(g, 1.0);
    const NonlinearSpec F(3.0, PowerForm::preserving, 1.0);
    const double T = 0.05;
    std::vector<Field> end;
    for (std::size_t n : {9, 17, 33, 65, 129}) {
        const auto t = uniform_times(T, n);
        end.push_back(duhamel_map(linear_flow(f, prop, t), f, prop, F, t).back());
    }
    for (std::size_t i = 0; i + 2 < end.size(); ++i) {
        const double a = l2_norm(end[i] - end[i + 1]), b = l2_norm(end[i + 1] - end[i + 2]);
        EXPECT_GE(std::log2(a / b), 1.9) << "refinement " << i;
    }
}

TEST(Picard, ZeroDataIsDegenerate) {
    const auto S = small_setup();
    const auto rep = picard_solve(Field::zeros(S.grid), S, 1.0);
    EXPECT_TRUE(rep.degenerate);
    EXPECT_TRUE(rep.converged);
    EXPECT_TRUE(std::isnan(rep.rho_hat));
    EXPECT_EQ(rep.A, 0.0);
}

TEST(Picard, LinearProblemIsAFixedPointAtOnce) {
    const auto S = small_setup(0.0);
    const auto rep = picard_solve(gaussian(S.grid, 3.0), S, 8.0);
    EXPECT_TRUE(rep.converged);
    ASSERT_EQ(rep.differences.size(), 1u);
    EXPECT_LE(rep.differences[0], 1e-13 * rep.A);
    EXPECT_TRUE(rep.stayed_in_ball);
}

TEST(Picard, SmallDataContractsAndConservesMass) {
    for (double lambda : {1.0, -1.0}) {
        const auto S = small_setup(lambda);
        const auto f = gaussian(S.grid, 1.0);
        const auto rep = picard_solve(f, S, 0.25);
        EXPECT_TRUE(rep.converged);
        EXPECT_LE(rep.rho_hat, 0.5);
        EXPECT_TRUE(rep.halving);
        EXPECT_TRUE(rep.monotone);
        EXPECT_TRUE(rep.stayed_in_ball);
        EXPECT_GT(rep.chain_rule_ratio, 0.0);
        // The gauge-invariant equation conserves L^2 up to quadrature error.
        EXPECT_NEAR(l2_norm(rep.solution.back()), l2_norm(f), 1e-3 * l2_norm(f));
    }
}

TEST(Picard, LargeDataDivergesWithoutThrowing) {
    const auto S = small_setup();
    const auto rep = picard_solve(gaussian(S.grid, 1e3), S, 4.0);
    EXPECT_FALSE(rep.converged);
    EXPECT_TRUE(rep.diverged_at.has_value());
}

TEST(Picard, ContractionFactorGrowsWithT) {
    const auto S = small_setup();
    const auto f = gaussian(S.grid, 2.0);
    double prev = 0.0;
    for (double T : {0.0625, 0.125, 0.25}) {
        const auto rep = picard_solve(f, S, T);
        ASSERT_TRUE(rep.converged) << T;
        EXPECT_GT(rep.rho_hat, prev);
        prev = rep.rho_hat;
    }
}

TEST(Picard, ExistenceSearchAndTScaling) {
    const auto S = small_setup();
    const auto f = gaussian(S.grid, 4.0);
    const auto res = existence_time_search(f, S, -10, 4);
    ASSERT_TRUE(res.found);
    EXPECT_LT(res.T_star, 16.0);
    EXPECT_LE(res.probes.size(), 12u);
    for (const auto& p : res.probes)
        if (p.exponent <= std::log2(res.T_star)) {
            EXPECT_TRUE(p.success);
        }
    const auto c = t_scaling_check(f, S, res.T_star);
    EXPECT_DOUBLE_EQ(c.required_exponent, 0.7 * S.exponents.beta1);
    EXPECT_TRUE(c.pass) << c.measured_exponent;
}

TEST(Picard, InfeasibleExponentsAreRejected) {
    auto S = small_setup();
    S.exponents.feasible = false;
    EXPECT_THROW(picard_solve(gaussian(S.grid, 1.0), S, 1.0), StructuralError);
    auto T = small_setup();
    EXPECT_THROW(picard_solve(gaussian(GridSpec(3, 2, 8.0, 32), 1.0), T, 1.0), StructuralError);
}
