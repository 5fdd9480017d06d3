/**
 * @file test_solver.cpp
 * @brief Assembly, constraint elimination, and the Cholesky solve on small meshes.
 */
#include "quadcurl/errors.hpp"
#include "quadcurl/solver.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <random>

namespace quadcurl {
namespace {

const Discretization& cube1()
{
    static const Discretization d(cube_mesh(1));
    return d;
}

TEST(ElementMatrix, SymmetricPositiveSemidefinite)
{
    const Eigen::MatrixXd A = element_matrix(cube1(), 0);
    EXPECT_LE((A - A.transpose()).cwiseAbs().maxCoeff(), 1e-12 * A.cwiseAbs().maxCoeff());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10 * es.eigenvalues().maxCoeff());
}

TEST(Assemble, ConstantFieldMassAndLoad)
{
    // u = (1, 0, 0): a(u, u) = |cube| = 1 and (f, u) = 1 for f = (1, 1, 1)
    const Discretization& d = cube1();
    VectorPolynomial<double> c(0);
    c.comp[0] = Poly3<double>::constant(1.0);
    const DiscreteField u = interpolate(PolynomialField(c), d);
    const SparseSystem sys = assemble(d, unit_source());
    const Eigen::VectorXd Au = symmetric_multiply(sys.A, u.coeffs);
    EXPECT_NEAR(u.coeffs.dot(Au), 1.0, 1e-8);
    EXPECT_NEAR(u.coeffs.dot(sys.b), 1.0, 1e-10);
}

TEST(Assemble, EliminationKeepsFreeRows)
{
    const Discretization& d = cube1();
    const SparseSystem full = assemble(d, unit_source());
    const SparseSystem red = apply_boundary_conditions(full);
    EXPECT_EQ(red.A.rows(), d.dofs().ndofs - static_cast<long>(d.dofs().boundary_dofs.size()));
    EXPECT_EQ(static_cast<long>(red.free_to_global.size()), red.A.rows());
    for (long g : red.free_to_global) {
        EXPECT_FALSE(d.dofs().constrained[static_cast<std::size_t>(g)]);
    }
}

TEST(Assemble, ConstrainedSystemIsSPD)
{
    const SparseSystem red = apply_boundary_conditions(assemble(cube1(), unit_source()));
    const Eigen::SparseMatrix<double> full = red.A.selfadjointView<Eigen::Upper>();
    const Eigen::MatrixXd A(full);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
}

TEST(Solve, ZeroRightHandSide)
{
    const Discretization& d = cube1();
    const DiscreteField u = solve_problem(d, [](const Vec3&) { return Vec3::Zero(); });
    EXPECT_EQ(u.coeffs.norm(), 0.0);
}

TEST(Solve, GalerkinOrthogonality)
{
    const Discretization& d = cube1();
    SolveReport rep;
    const DiscreteField uh = solve_problem(d, unit_source(), 1e-10, &rep);
    EXPECT_LE(rep.relative_residual, 1e-10);
    const SparseSystem full = assemble(d, unit_source());
    const Eigen::VectorXd Au = symmetric_multiply(full.A, uh.coeffs);
    const double fnorm = std::sqrt(3.0);
    std::mt19937 rng(5);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd v(d.dofs().ndofs);
        for (long i = 0; i < v.size(); ++i) {
            v[i] = d.dofs().constrained[static_cast<std::size_t>(i)] ? 0.0 : g(rng);
        }
        const double vnorm = std::sqrt(v.dot(symmetric_multiply(full.A, v)));
        EXPECT_LE(std::abs(v.dot(Au) - v.dot(full.b)), 1e-9 * fnorm * vnorm);
    }
    for (long c : d.dofs().boundary_dofs) {
        EXPECT_EQ(uh.coeffs[c], 0.0);
    }
}

TEST(Solve, IndefiniteSystemFails)
{
    const Discretization& d = cube1();
    SparseSystem s;
    s.A.resize(2, 2);
    s.A.insert(0, 0) = 1.0;
    s.A.insert(0, 1) = 2.0;
    s.A.insert(1, 1) = 1.0;
    s.A.makeCompressed();
    s.b = Eigen::VectorXd::Ones(2);
    s.free_to_global = {0, 1};
    EXPECT_THROW((void)solve(s, d), SolverFailure);
}

TEST(Solve, UnitSourceIsConstant)
{
    EXPECT_EQ(unit_source()(Vec3(0.3, 0.1, 0.9)), Vec3(1, 1, 1));
}

}  // namespace
}  // namespace quadcurl
