/**
 * @file test_dofs.cpp
 * @brief DOF enumeration, entity counts, and the one-dimensional helper identities.
 */
#include "quadcurl/dofs.hpp"
#include "quadcurl/element_transform.hpp"
#include "quadcurl/errors.hpp"
#include "quadcurl/polyspace.hpp"

#include <gtest/gtest.h>

namespace quadcurl {
namespace {

TEST(DofCounts, OrderSevenClasses)
{
    const DofCounts c = dof_counts_formula(7);
    EXPECT_EQ(c.vertex, 104);
    EXPECT_EQ(c.edge, 120);
    EXPECT_EQ(c.face, 68);
    EXPECT_EQ(c.interior, 23);
    EXPECT_EQ(c.total(), 315);
}

TEST(DofCounts, FormulaMatchesSpaceDimension)
{
    for (int k = 7; k <= 10; ++k) {
        const DofCounts c = dof_counts_formula(k);
        EXPECT_EQ(c.total(), dim_Rk(k)) << "k=" << k;
        const auto dofs = enumerate_dofs(k);
        const DofCounts e = count_by_entity(dofs);
        EXPECT_EQ(e.vertex, c.vertex);
        EXPECT_EQ(e.edge, c.edge);
        EXPECT_EQ(e.face, c.face);
        EXPECT_EQ(e.interior, c.interior);
    }
}

TEST(DofCounts, PerEntityCounts)
{
    EXPECT_EQ(per_entity_counts(7), (std::array<int, 4>{26, 20, 17, 23}));
}

TEST(Enumerate, LowOrderRejected)
{
    EXPECT_THROW((void)enumerate_dofs(6), BadOrder);
}

TEST(Enumerate, LocalIndicesAndBlocks)
{
    const auto dofs = enumerate_dofs(7);
    ASSERT_EQ(dofs.size(), 315u);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
        EXPECT_EQ(dofs[i].local_index, static_cast<int>(i));
    }
    EXPECT_EQ(dofs[LocalLayout::vertex_curl].kind, DofKind::VertexCurl);
    EXPECT_EQ(dofs[LocalLayout::vertex_grad].kind, DofKind::VertexCurlGrad);
    EXPECT_EQ(dofs[LocalLayout::vertex_hess].kind, DofKind::VertexCurlHess);
    EXPECT_EQ(dofs[LocalLayout::edge_value].kind, DofKind::EdgeCurlValue);
    EXPECT_EQ(dofs[LocalLayout::edge_moment].kind, DofKind::EdgeTangMoment);
    EXPECT_EQ(dofs[LocalLayout::interior].entity_type, EntityType::Interior);
}

TEST(Enumerate, StarSetSize)
{
    const auto star = enumerate_star_functionals();
    EXPECT_EQ(static_cast<int>(star.size()), kStarFunctionals);
    int tangential = 0;
    for (const auto& d : star) {
        tangential += d.kind == DofKind::EdgeCurlDirDeriv_tau ? 1 : 0;
    }
    EXPECT_GT(tangential, 0);
}

TEST(Legendre, ShiftedOrthogonality)
{
    for (int r = 0; r <= 5; ++r) {
        for (int s = 0; s <= 5; ++s) {
            const Rational v = (shifted_legendre<Rational>(r) * shifted_legendre<Rational>(s)).integrate_reference_simplex();
            EXPECT_EQ(v, r == s ? Rational(1, 2 * r + 1) : Rational(0)) << r << "," << s;
        }
    }
}

TEST(Hermite, DerivativeWeightsExactOnDegreeSix)
{
    const std::array<Rational, 2> nodes{Rational(1, 3), Rational(2, 3)};
    for (int node = 0; node < 2; ++node) {
        const auto w = hermite_derivative_weights(node);
        const Rational s = nodes[static_cast<std::size_t>(node)];
        for (int n = 0; n <= 6; ++n) {
            const auto phi = Poly1<Rational>::monomial({n});
            const auto d1 = phi.derivative(0);
            const auto d2 = d1.derivative(0);
            auto at = [](const Poly1<Rational>& p, const Rational& t) { return p.evaluate({t}); };
            const Rational rhs = w[0] * at(phi, 0) + w[1] * at(phi, 1) + w[2] * at(phi, Rational(1, 2)) +
                                 w[3] * at(d1, 0) + w[4] * at(d1, 1) + w[5] * at(d2, 0) + w[6] * at(d2, 1);
            EXPECT_EQ(rhs, at(d1, s)) << "node " << node << " t^" << n;
        }
    }
    EXPECT_THROW((void)hermite_derivative_weights(2), UsageError);
}

TEST(EdgeNodes, InteriorAndDistinct)
{
    const auto v = edge_value_nodes(7);
    const auto d = edge_derivative_nodes(7);
    EXPECT_EQ(v.size(), 1u);
    EXPECT_EQ(d.size(), 2u);
    for (const auto& t : d) {
        EXPECT_GT(t, 0);
        EXPECT_LT(t, 1);
    }
}

}  // namespace
}  // namespace quadcurl
