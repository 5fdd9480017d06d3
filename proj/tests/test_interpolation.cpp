/**
 * @file test_interpolation.cpp
 * @brief Global interpolation, polynomial reproduction, and discrete norms.
 */
#include "quadcurl/errors.hpp"
#include "quadcurl/interpolation.hpp"
#include "quadcurl/polyspace.hpp"

#include <gtest/gtest.h>

#include <random>

namespace quadcurl {
namespace {

const Discretization& cube1()
{
    static const Discretization d(cube_mesh(1));
    return d;
}

VectorPolynomial<double> random_R7(std::mt19937& rng)
{
    static const SpaceBasis r = build_Rk(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VectorPolynomial<double> p(7);
    for (const auto& m : r.members) {
        p += m.cast<double>().with_degree_bound(7) * u(rng);
    }
    return p;
}

std::vector<Vec3> sample_points(const Discretization& d, std::size_t t)
{
    const auto& map = d.geometry(t).map;
    std::vector<Vec3> out;
    for (const Vec3& xh : {Vec3(0.1, 0.2, 0.3), Vec3(0.25, 0.25, 0.25), Vec3(0.6, 0.1, 0.2), Vec3(0.0, 0.5, 0.5)}) {
        out.push_back(map.forward(xh));
    }
    return out;
}

TEST(Discretization, SharesTransformsAcrossTranslates)
{
    const Discretization& d = cube1();
    EXPECT_EQ(d.num_shapes(), 6u);
    EXPECT_FALSE(d.any_fallback());
    EXPECT_LE(d.max_transform_residual(), 1e-7);
    const Discretization d2(cube_mesh(2), BoundaryMode::Trace, kDefaultQuadratureDegree, false);
    EXPECT_EQ(d2.num_shapes(), 6u);
}

TEST(Tabulation, JacobianOptional)
{
    const std::vector<std::array<double, 3>> pts{{0.1, 0.2, 0.3}};
    const PointTabulation a = tabulate_points(cube1().basis(), pts, false);
    const PointTabulation b = tabulate_points(cube1().basis(), pts, true);
    EXPECT_EQ(a.curl_jac.size(), 0);
    EXPECT_EQ(b.curl_jac.rows(), 9);
    EXPECT_EQ(a.value, b.value);
}

TEST(Tabulation, DualityAtReferenceVertex)
{
    // The first three basis functions are dual to the curl values at vertex 0
    const PointTabulation t = tabulate_points(cube1().basis(), {{0.0, 0.0, 0.0}});
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 12; ++j) {
            EXPECT_NEAR(t.curl(i, j), (i == j) ? 1.0 : 0.0, 1e-9) << i << "," << j;
        }
    }
}

TEST(CurlCurlMap, IdentityMapReadsAxialPart)
{
    AffineMap id;
    const auto M = curl_curl_map(id);
    // J(i, j) = d_j c_i; curl c = (J21 - J12, J02 - J20, J10 - J01)
    Eigen::Matrix<double, 9, 1> J;
    J << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    const Vec3 cc = M * J;
    EXPECT_LT((cc - Vec3(8 - 6, 3 - 7, 4 - 2)).norm(), 1e-15);
}

TEST(Interpolate, ReproducesR7Members)
{
    const Discretization& d = cube1();
    std::mt19937 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
        const PolynomialField p(random_R7(rng));
        const DiscreteField ph = interpolate(p, d);
        for (std::size_t t = 0; t < d.mesh().num_tets(); ++t) {
            const auto ft = ph.element_field(t);
            for (const Vec3& x : sample_points(d, t)) {
                const double scale = std::max(1.0, p.value(x).norm());
                EXPECT_LE((ft.value(x) - p.value(x)).norm(), 1e-7 * scale);
                EXPECT_LE((ft.curl(x) - p.curl(x)).norm(), 1e-7 * std::max(1.0, p.curl(x).norm()));
            }
            const Eigen::VectorXd back = local_dofs(ft, d, t);
            const Eigen::VectorXd coeffs = d.gather(t, ph.coeffs);
            EXPECT_LE((back - coeffs).cwiseAbs().maxCoeff(), 1e-7 * std::max(1.0, coeffs.cwiseAbs().maxCoeff()));
        }
        const NormTriple e = error_norms(ph, p);
        EXPECT_LE(e.l2, 1e-8);
        EXPECT_LE(e.curl, 1e-7);
    }
}

TEST(Interpolate, SharedDofsAgreeAcrossElements)
{
    const Discretization& d = cube1();
    std::mt19937 rng(3);
    const PolynomialField p(random_R7(rng));
    const DiscreteField ph = interpolate(p, d);
    for (std::size_t t = 0; t < d.mesh().num_tets(); ++t) {
        const Eigen::VectorXd mine = local_dofs(p, d, t);
        const Eigen::VectorXd global = d.gather(t, ph.coeffs);
        EXPECT_LE((mine - global).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, global.cwiseAbs().maxCoeff()));
    }
}

TEST(Norms, ConstantField)
{
    VectorPolynomial<double> c(0);
    c.comp[0] = Poly3<double>::constant(2.0);
    const DiscreteField ch = interpolate(PolynomialField(c), cube1());
    const NormTriple n = field_norms(ch);
    EXPECT_NEAR(n.l2, 2.0, 1e-10);
    EXPECT_NEAR(n.curl, 0.0, 1e-8);
    EXPECT_NEAR(n.curl2, 0.0, 1e-6);
    EXPECT_NEAR(energy_squared(n), 4.0, 1e-8);
}

TEST(Norms, EnergyDifference)
{
    NormTriple a;
    a.l2 = 3.0;
    NormTriple b;
    b.l2 = 5.0;
    EXPECT_DOUBLE_EQ(energy_norm_difference(a, b), 4.0);
    EXPECT_THROW((void)energy_norm_difference(b, a), NegativeDifference);
    NormTriple c = a;
    c.l2 = 3.0 - 1e-14;
    EXPECT_EQ(energy_norm_difference(a, c), 0.0);
}

}  // namespace
}  // namespace quadcurl
