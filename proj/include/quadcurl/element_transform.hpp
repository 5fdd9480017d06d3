/**
 * @file element_transform.hpp
 * @brief Basis functions on a general element from the reference basis through the
 *        factorization C = D E, where D relates pulled-back reference functionals to an
 *        enlarged functional set and E expresses that set through the element functionals.
 */
#pragma once

#include "quadcurl/functionals.hpp"
#include "quadcurl/reference_element.hpp"

#include <Eigen/Dense>

#include <array>

namespace quadcurl {

inline constexpr int kLocalDofs = 315;
inline constexpr int kStarFunctionals = 383;

/// Offsets of the blocks in the element functional list (k = 7).
struct LocalLayout {
    static constexpr int vertex_curl = 0;
    static constexpr int vertex_grad = 12;
    static constexpr int vertex_hess = 44;
    static constexpr int edge_value = 104;
    static constexpr int edge_deriv = 122;
    static constexpr int face_curl = 182;
    static constexpr int tail = 190;
    static constexpr int edge_moment = 190;
    static constexpr int face_moment = 232;
    static constexpr int interior = 292;
};

/// Offsets of the blocks in the enlarged functional list.
struct StarLayout {
    static constexpr int vertex_curl = 0;
    static constexpr int vertex_grad = 12;
    static constexpr int vertex_hess = 48;
    static constexpr int edge_value = 120;
    static constexpr int edge_deriv = 138;
    static constexpr int face_curl = 246;
    static constexpr int tail = 258;
};

struct TransformBlocks {
    Mat3 curl_block;                       // det(B) B^{-1}
    Eigen::Matrix<double, 8, 9> W;
    Eigen::Matrix<double, 6, 6> H;
    Eigen::Matrix<double, 15, 18> V;
    std::array<Eigen::Matrix<double, 5, 9>, 6> G;  // one per edge, shared by both nodes
    std::array<Eigen::Matrix<double, 2, 3>, 4> Cf;  // one per face
};

[[nodiscard]] Eigen::Matrix<double, 6, 6> second_derivative_transform(const Mat3& B);
[[nodiscard]] TransformBlocks build_blocks(const ElementGeometry& geom);

/// 315 x 383, block diagonal with an identity tail.
[[nodiscard]] Eigen::MatrixXd build_D(const ElementGeometry& geom);
[[nodiscard]] Eigen::MatrixXd build_D(const TransformBlocks& blocks);

/// Weights w with phi'(s) = w . (phi(0), phi(1), phi(1/2), phi'(0), phi'(1), phi''(0), phi''(1))
/// for every phi of degree <= 6. s must be 1/3 or 2/3.
[[nodiscard]] std::array<Rational, 7> hermite_derivative_weights(int node);

/// 383 x 315.
[[nodiscard]] Eigen::MatrixXd build_E(const ElementGeometry& geom);

/// C = D E.
[[nodiscard]] Eigen::MatrixXd transform_matrix(const ElementGeometry& geom);

/// M(i, k) = L_i(push N̂_k), the element functionals applied to the pushed reference basis.
[[nodiscard]] Eigen::MatrixXd pushed_vandermonde(const ElementGeometry& geom, const ReferenceBasis& basis,
                                                 int quad_degree = kDefaultQuadratureDegree);

/// C from a direct inversion of the pushed Vandermonde in extended precision.
[[nodiscard]] Eigen::MatrixXd direct_transform_matrix(const Eigen::MatrixXd& pushed);

/// max |M C - I|.
[[nodiscard]] double duality_residual(const Eigen::MatrixXd& pushed, const Eigen::MatrixXd& C);

struct ElementBasis {
    ElementGeometry geom;
    Eigen::MatrixXd C;      // N_j∘F = B^{-T} sum_k C(k, j) N̂_k
    double residual = -1.0;  // duality residual when checked, -1 otherwise
    bool used_fallback = false;
};

/// Builds C = D E; with check = true also measures the duality residual and, above
/// tolerance, reports a ConsistencyFailure diagnostic and falls back to the direct solve.
[[nodiscard]] ElementBasis element_basis(const ElementGeometry& geom, const ReferenceBasis& basis, bool check = false,
                                         double tolerance = 1e-6);

/// Monomial coefficients of the reference field behind sum_j u_j N_j on the element.
[[nodiscard]] Eigen::VectorXd reference_coefficients(const ElementBasis& eb, const ReferenceBasis& basis,
                                                     const Eigen::VectorXd& local);

}  // namespace quadcurl
