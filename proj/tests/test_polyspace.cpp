/**
 * @file test_polyspace.cpp
 * @brief Monomial ordering, polynomial algebra, and exact dimension checks of R_k.
 */
#include "quadcurl/errors.hpp"
#include "quadcurl/polyspace.hpp"

#include <gtest/gtest.h>

namespace quadcurl {
namespace {

TEST(Monomials, GradedLexOrderInThreeVariables)
{
    const auto m = monomials_up_to<3>(2);
    ASSERT_EQ(m.size(), 10u);
    EXPECT_EQ(m[4], (Exponent<3>{2, 0, 0}));
    EXPECT_EQ(m[5], (Exponent<3>{1, 1, 0}));
    EXPECT_EQ(m[9], (Exponent<3>{0, 0, 2}));
    for (std::size_t i = 0; i < m.size(); ++i) {
        EXPECT_EQ(monomial_index<3>(m[i]), static_cast<int>(i));
    }
}

TEST(Monomials, IndexRoundTripsAtDegreeSeven)
{
    const auto& m = monomial_table<3>(7);
    ASSERT_EQ(m.size(), 120u);
    for (std::size_t i = 0; i < m.size(); ++i) {
        EXPECT_EQ(monomial_index<3>(m[i]), static_cast<int>(i));
    }
}

TEST(Polynomial, ProductAndDerivative)
{
    const auto x = Poly3<Rational>::variable(0);
    const auto y = Poly3<Rational>::variable(1);
    const auto p = x * x * y;  // x^2 y
    EXPECT_EQ(p.derivative(0), Rational(2) * x * y);
    EXPECT_EQ(p.derivative(2).is_zero_polynomial(), true);
    EXPECT_EQ(p.evaluate({Rational(3), Rational(2), Rational(7)}), Rational(18));
}

TEST(Polynomial, ReferenceSimplexIntegral)
{
    // int_T x y z = 1/720 on the unit tetrahedron
    const auto p = Poly3<Rational>::monomial({1, 1, 1});
    EXPECT_EQ(p.integrate_reference_simplex(), Rational(1, 720));
}

TEST(Polynomial, CurlOfGradientVanishes)
{
    const auto x = Poly3<Rational>::variable(0);
    const auto z = Poly3<Rational>::variable(2);
    const auto q = x * x * z * z * z + x * z;
    EXPECT_TRUE(curl(gradient(q)).is_zero_polynomial());
    EXPECT_TRUE(divergence(curl(position_times(q))).is_zero_polynomial());
}

TEST(SpaceDims, ClosedForms)
{
    EXPECT_EQ(dim_Rk(7), 315);
    EXPECT_EQ(dim_Sk(7), 63);
    EXPECT_EQ(dim_Rk(1), 6);
}

TEST(SpaceDims, SkIsOrthogonalToPosition)
{
    for (int k = 1; k <= 4; ++k) {
        const SpaceBasis s = build_Sk(k);
        EXPECT_EQ(static_cast<int>(s.size()), dim_Sk(k)) << "k=" << k;
        for (const auto& p : s.members) {
            EXPECT_TRUE(position_dot(p).is_zero_polynomial());
        }
    }
}

TEST(SpaceDims, RkHasFullRank)
{
    for (int k = 1; k <= 3; ++k) {
        const SpaceBasis r = build_Rk(k);
        EXPECT_EQ(static_cast<int>(r.size()), dim_Rk(k));
        EXPECT_EQ(static_cast<int>(exact_rank(r.members)), dim_Rk(k));
    }
}

TEST(SpaceDims, R7Dimension)
{
    const SpaceBasis r = build_Rk(7);
    EXPECT_EQ(r.size(), 315u);
}

TEST(SpaceDims, LowestOrderNedelecMembersHaveCurlStructure)
{
    // R_1 = {a + b x x}: every S_1 member is b x x for a constant b
    const SpaceBasis s = build_Sk(1);
    ASSERT_EQ(s.size(), 3u);
    for (const auto& p : s.members) {
        EXPECT_EQ(p.degree(), 1);
        EXPECT_TRUE(divergence(p).is_zero_polynomial());
    }
}

TEST(Decompositions, BothDirectSumsHold)
{
    for (int k = 1; k <= 4; ++k) {
        const DecompositionReport r = verify_decompositions(k);
        EXPECT_TRUE(r.first_direct) << "k=" << k;
        EXPECT_TRUE(r.second_direct) << "k=" << k;
        EXPECT_EQ(r.dim_grad + r.dim_x_cross, r.dim_Pk_vec);
        EXPECT_EQ(r.dim_curl_R + r.dim_x_scalar, r.dim_Pk_vec);
    }
}

TEST(ExactLinalg, NullspaceAndDeterminant)
{
    RationalMatrix m(2, 3);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(0, 2) = 3;
    m(1, 0) = 2;
    m(1, 1) = 4;
    m(1, 2) = 7;
    EXPECT_EQ(rank(m), 2u);
    const auto ns = nullspace(m);
    ASSERT_EQ(ns.size(), 1u);
    EXPECT_EQ(ns[0][0] * 1 + ns[0][1] * 2 + ns[0][2] * 3, Rational(0));

    RationalMatrix a(2, 2);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(1, 0) = 3;
    a(1, 1) = 4;
    const InverseResult inv = invert(a);
    EXPECT_EQ(inv.determinant, Rational(-2));
    EXPECT_TRUE((a * inv.inverse).is_identity());
}

TEST(ExactLinalg, SingularMatrixThrows)
{
    RationalMatrix a(2, 2);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(1, 0) = 2;
    a(1, 1) = 4;
    EXPECT_THROW((void)invert(a), SingularVandermonde);
}

}  // namespace
}  // namespace quadcurl
