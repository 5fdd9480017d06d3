#include "quadcurl/quadrature.hpp"

#include "quadcurl/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>

namespace quadcurl {

void gauss_jacobi(int n, double alpha, double beta, std::vector<double>& nodes, std::vector<double>& weights)
{
    // Golub-Welsch on the symmetric Jacobi matrix of the monic Jacobi recurrence.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double k = i;
        const double s = 2.0 * k + alpha + beta;
        double a = 0.0;
        if (std::abs(s * (s + 2.0)) > 0.0) {
            a = (beta * beta - alpha * alpha) / (s * (s + 2.0));
        } else {
            a = (beta - alpha) / (alpha + beta + 2.0);
        }
        J(i, i) = a;
        if (i + 1 < n) {
            const double k1 = k + 1.0;
            const double s1 = 2.0 * k1 + alpha + beta;
            const double b2 = 4.0 * k1 * (k1 + alpha) * (k1 + beta) * (k1 + alpha + beta) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0));
            J(i, i + 1) = J(i + 1, i) = std::sqrt(b2);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::pow(2.0, alpha + beta + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
                       std::tgamma(alpha + beta + 2.0);
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    // One Newton polish per node against the three-term recurrence keeps the nodes at full precision.
    for (int i = 0; i < n; ++i) {
        double x = nodes[static_cast<std::size_t>(i)];
        for (int it = 0; it < 3; ++it) {
            double p0 = 1.0;
            double p1 = 0.5 * (alpha - beta + (alpha + beta + 2.0) * x);
            double d0 = 0.0;
            double d1 = 0.5 * (alpha + beta + 2.0);
            if (n == 1) {
                p0 = p1;
                d0 = d1;
            } else {
                for (int k = 2; k <= n; ++k) {
                    const double s = 2.0 * k + alpha + beta;
                    const double a1 = 2.0 * k * (k + alpha + beta) * (s - 2.0);
                    const double a2 = (s - 1.0) * (alpha * alpha - beta * beta);
                    const double a3 = (s - 2.0) * (s - 1.0) * s;
                    const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
                    const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
                    const double d2 = ((a2 + a3 * x) * d1 + a3 * p1 - a4 * d0) / a1;
                    p0 = p1;
                    p1 = p2;
                    d0 = d1;
                    d1 = d2;
                }
                p0 = p1;
                d0 = d1;
            }
            if (d0 == 0.0) {
                break;
            }
            x -= p0 / d0;
        }
        nodes[static_cast<std::size_t>(i)] = x;
    }
}

namespace {

QuadratureRule build_rule(int dimension, int degree)
{
    QuadratureRule rule;
    rule.dimension = dimension;
    std::vector<double> x0, w0, x1, w1, x2, w2;
    if (dimension == 1) {
        const int n = (degree + 2) / 2;
        gauss_jacobi(n, 0.0, 0.0, x0, w0);
        for (int i = 0; i < n; ++i) {
            rule.points.push_back({0.5 * (x0[i] + 1.0), 0.0, 0.0});
            rule.weights.push_back(0.5 * w0[i]);
        }
        rule.exactness_degree = 2 * n - 1;
    } else if (dimension == 2) {
        const int n = (degree + 2) / 2;
        gauss_jacobi(n, 1.0, 0.0, x0, w0);  // collapsed direction carries (1-u)
        gauss_jacobi(n, 0.0, 0.0, x1, w1);
        for (int i = 0; i < n; ++i) {
            const double u = 0.5 * (x0[i] + 1.0);
            for (int j = 0; j < n; ++j) {
                const double v = 0.5 * (x1[j] + 1.0);
                rule.points.push_back({u, v * (1.0 - u), 0.0});
                rule.weights.push_back(0.25 * w0[i] * 0.5 * w1[j]);
            }
        }
        rule.exactness_degree = 2 * n - 1;
    } else if (dimension == 3) {
        const int n = (degree + 2) / 2;
        gauss_jacobi(n, 2.0, 0.0, x0, w0);
        gauss_jacobi(n, 1.0, 0.0, x1, w1);
        gauss_jacobi(n, 0.0, 0.0, x2, w2);
        for (int i = 0; i < n; ++i) {
            const double u = 0.5 * (x0[i] + 1.0);
            for (int j = 0; j < n; ++j) {
                const double v = 0.5 * (x1[j] + 1.0);
                for (int l = 0; l < n; ++l) {
                    const double w = 0.5 * (x2[l] + 1.0);
                    rule.points.push_back({u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v)});
                    rule.weights.push_back(0.125 * w0[i] * 0.25 * w1[j] * 0.5 * w2[l]);
                }
            }
        }
        rule.exactness_degree = 2 * n - 1;
    } else {
        throw UsageError("rule_for: dimension must be 1, 2 or 3");
    }
    for (double w : rule.weights) {
        if (!(w > 0.0)) {
            throw Error("rule_for: non-positive quadrature weight");
        }
    }
    return rule;
}

}  // namespace

const QuadratureRule& rule_for(int dimension, int degree)
{
    if (degree > kMaxQuadratureDegree) {
        throw UnsupportedDegree("rule_for: degree " + std::to_string(degree) + " exceeds " +
                                std::to_string(kMaxQuadratureDegree));
    }
    if (degree < 0) {
        degree = 0;
    }
    static std::mutex mutex;
    static std::map<std::pair<int, int>, QuadratureRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find({dimension, degree});
    if (it == cache.end()) {
        it = cache.emplace(std::pair{dimension, degree}, build_rule(dimension, degree)).first;
    }
    return it->second;
}

Rational exact_monomial_integral(SimplexDomain domain, const std::array<int, 3>& e)
{
    switch (domain) {
        case SimplexDomain::Edge:
            return Rational(1, static_cast<unsigned long>(e[0] + 1));
        case SimplexDomain::Triangle:
            return factorial<Rational>(e[0]) * factorial<Rational>(e[1]) / factorial<Rational>(e[0] + e[1] + 2);
        case SimplexDomain::Tetrahedron:
            return factorial<Rational>(e[0]) * factorial<Rational>(e[1]) * factorial<Rational>(e[2]) /
                   factorial<Rational>(e[0] + e[1] + e[2] + 3);
    }
    return Rational(0);
}

}  // namespace quadcurl
