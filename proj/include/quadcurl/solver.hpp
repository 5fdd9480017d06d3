/**
 * @file solver.hpp
 * @brief Assembly of a(u, v) = (curl curl u, curl curl v) + (u, v) and (f, v), symmetric
 *        elimination of the constrained DOFs, and the sparse Cholesky solve.
 */
#pragma once

#include "quadcurl/interpolation.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <map>

namespace quadcurl {

using SourceFunction = std::function<Vec3(const Vec3&)>;

struct SparseSystem {
    Eigen::SparseMatrix<double> A;  // upper triangle of a symmetric matrix
    Eigen::VectorXd b;
    std::vector<long> constrained;  // global indices still to be eliminated
    std::vector<long> free_to_global;  // identity before elimination
};

/// Element stiffness plus mass in the local basis, before the transform: the matrix of a
/// over the pushed reference basis. Symmetric by construction up to rounding.
[[nodiscard]] Eigen::MatrixXd reference_element_matrix(const ReferenceTabulation& tab, const AffineMap& map);

/// Local matrix of a in the element basis.
[[nodiscard]] Eigen::MatrixXd element_matrix(const Discretization& disc, std::size_t t);

/// Local load vector (f, N_j).
[[nodiscard]] Eigen::VectorXd element_load(const Discretization& disc, std::size_t t, const SourceFunction& f);

[[nodiscard]] SparseSystem assemble(const Discretization& disc, const SourceFunction& f);

/// Removes the constrained rows and columns (homogeneous constraints, so no lifting).
[[nodiscard]] SparseSystem apply_boundary_conditions(const SparseSystem& full);

struct SolveReport {
    double relative_residual = 0.0;
    int refinement_steps = 0;
    long unknowns = 0;
};

/// Solves a constrained system and expands the result to a global field. Throws SolverFailure
/// when the factorization fails or the relative residual stays above tol.
[[nodiscard]] DiscreteField solve(const SparseSystem& system, const Discretization& disc, double tol = 1e-10,
                                  SolveReport* report = nullptr);

/// Assemble, constrain, and solve.
[[nodiscard]] DiscreteField solve_problem(const Discretization& disc, const SourceFunction& f, double tol = 1e-10,
                                          SolveReport* report = nullptr);

/// Constant source (1, 1, 1).
[[nodiscard]] SourceFunction unit_source();

/// y = A x for a system storing only the upper triangle.
[[nodiscard]] Eigen::VectorXd symmetric_multiply(const Eigen::SparseMatrix<double>& upper, const Eigen::VectorXd& x);

}  // namespace quadcurl
