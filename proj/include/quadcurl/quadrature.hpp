/**
 * @file quadrature.hpp
 * @brief Gauss rules on the unit interval and collapsed (Stroud conical product)
 *        rules on the reference triangle and tetrahedron.
 */
#pragma once

#include "quadcurl/scalar.hpp"

#include <array>
#include <vector>

namespace quadcurl {

inline constexpr int kMaxQuadratureDegree = 20;
inline constexpr int kDefaultQuadratureDegree = 14;

struct QuadratureRule {
    int dimension = 0;
    int exactness_degree = 0;
    /// Reference coordinates; unused trailing entries are zero.
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const { return weights.size(); }
};

/// Gauss-Jacobi nodes/weights on [-1,1] for weight (1-x)^alpha (1+x)^beta.
void gauss_jacobi(int n, double alpha, double beta, std::vector<double>& nodes, std::vector<double>& weights);

/// Rule of the given dimension exact for total degree >= `degree`. Cached; thread-safe after first use.
[[nodiscard]] const QuadratureRule& rule_for(int dimension, int degree);

enum class SimplexDomain { Edge, Triangle, Tetrahedron };

/// Exact integral of x^a y^b z^c over the reference edge [0,1], triangle, or tetrahedron.
[[nodiscard]] Rational exact_monomial_integral(SimplexDomain domain, const std::array<int, 3>& exponents);

}  // namespace quadcurl
