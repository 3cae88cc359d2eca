#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

#include "dispersive/core/error.hpp"

namespace dispersive {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1] by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(std::size_t n) {
    if (n == 0)
        throw StructuralError("quadrature needs at least one node");
    QuadratureRule q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double pi = std::numbers::pi;
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double dk = static_cast<double>(k);
                const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            dp = dn * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        q.weights[i] = q.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

namespace detail {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, weights
// mu0 times the squared first eigenvector components.
inline QuadratureRule golub_welsch(const std::vector<double>& diag, const std::vector<double>& off, double mu0) {
    const auto n = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        J(i, i) = diag[static_cast<std::size_t>(i)];
        if (i + 1 < n)
            J(i, i + 1) = J(i + 1, i) = off[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadratureRule q;
    q.nodes.resize(static_cast<std::size_t>(n));
    q.weights.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        q.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        q.weights[static_cast<std::size_t>(i)] = mu0 * v * v;
    }
    return q;
}

} // namespace detail

// Gauss-Jacobi on [-1, 1] for the weight (1-x)^alpha (1+x)^beta, alpha, beta > -1.
inline QuadratureRule gauss_jacobi(std::size_t n, double alpha, double beta) {
    if (n == 0)
        throw StructuralError("quadrature needs at least one node");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw DomainError("Jacobi weight exponents must exceed -1");
    std::vector<double> a(n), b(n > 0 ? n - 1 : 0);
    const double ab = alpha + beta;
    a[0] = (beta - alpha) / (ab + 2.0);
    for (std::size_t k = 1; k < n; ++k) {
        const double dk = static_cast<double>(k);
        const double s = 2.0 * dk + ab;
        a[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    for (std::size_t k = 1; k < n; ++k) {
        const double dk = static_cast<double>(k);
        const double s = 2.0 * dk + ab;
        double b2;
        if (k == 1)
            b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            b2 = 4.0 * dk * (dk + alpha) * (dk + beta) * (dk + ab) / (s * s * (s + 1.0) * (s - 1.0));
        b[k - 1] = std::sqrt(b2);
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                                std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    return detail::golub_welsch(a, b, mu0);
}

// Generalized Gauss-Laguerre on [0, inf) for the weight x^alpha e^{-x}, alpha > -1.
inline QuadratureRule gauss_laguerre(std::size_t n, double alpha) {
    if (n == 0)
        throw StructuralError("quadrature needs at least one node");
    if (!(alpha > -1.0))
        throw DomainError("Laguerre weight exponent must exceed -1");
    std::vector<double> a(n), b(n - 1);
    for (std::size_t k = 0; k < n; ++k)
        a[k] = 2.0 * static_cast<double>(k) + alpha + 1.0;
    for (std::size_t k = 1; k < n; ++k)
        b[k - 1] = std::sqrt(static_cast<double>(k) * (static_cast<double>(k) + alpha));
    return detail::golub_welsch(a, b, std::tgamma(alpha + 1.0));
}

} // namespace dispersive
