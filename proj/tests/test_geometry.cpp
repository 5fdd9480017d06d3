/**
 * @file test_geometry.cpp
 * @brief Affine maps, covariant Piola transforms, and canonical entity frames.
 */
#include "quadcurl/errors.hpp"
#include "quadcurl/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace quadcurl {
namespace {

std::array<Vec3, 4> sample_tet()
{
    return {Vec3(0.1, 0.2, 0.0), Vec3(1.2, 0.1, 0.3), Vec3(0.3, 0.9, 0.1), Vec3(0.2, 0.4, 1.1)};
}

TEST(AffineMap, MapsReferenceVertices)
{
    const auto v = sample_tet();
    const AffineMap m = affine_from_vertices(v);
    for (int i = 0; i < 4; ++i) {
        EXPECT_LT((m.forward(ReferenceTet::vertex(i)) - v[static_cast<std::size_t>(i)]).norm(), 1e-15);
    }
    EXPECT_NEAR(m.detB, m.B.determinant(), 1e-15);
    EXPECT_LT((m.B * m.Binv - Mat3::Identity()).norm(), 1e-14);
    const Vec3 x(0.3, 0.35, 0.4);
    EXPECT_LT((m.forward(m.inverse(x)) - x).norm(), 1e-15);
}

TEST(AffineMap, FlatElementThrows)
{
    std::array<Vec3, 4> v{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)};
    EXPECT_THROW((void)affine_from_vertices(v), DegenerateElement);
}

TEST(ReferenceTet, OutwardNormals)
{
    EXPECT_LT((ReferenceTet::outward_normal(3) - Vec3(0, 0, -1)).norm(), 1e-15);
    EXPECT_LT((ReferenceTet::outward_normal(0) - Vec3(1, 1, 1).normalized()).norm(), 1e-15);
}

TEST(Piola, PreservesTangentialComponentAlongMappedEdge)
{
    // u·τ on the physical edge equals û·τ̂ for the unnormalized tangents
    const AffineMap m = affine_from_vertices(sample_tet());
    VectorPolynomial<double> uhat(1);
    uhat.comp[0] = Poly3<double>::affine(1.0, {0.5, -1.0, 2.0});
    uhat.comp[1] = Poly3<double>::affine(-0.3, {0.0, 0.7, 0.1});
    uhat.comp[2] = Poly3<double>::affine(2.0, {1.0, 0.0, -0.4});
    const auto u = piola_covariant(uhat, m);
    const Vec3 xhat(0.2, 0.3, 0.1);
    const Vec3 tauhat(1.0, -1.0, 0.5);
    const auto uh = uhat.evaluate({xhat[0], xhat[1], xhat[2]});
    EXPECT_NEAR(u(m.forward(xhat)).dot(m.B * tauhat), to_vec(uh).dot(tauhat), 1e-13);
}

TEST(Piola, CurlTransformsContravariantly)
{
    // u = B^{-T} û with û = (0, 0, x̂) has curl̂ û = (0, -1, 0); check against finite differences
    const AffineMap m = affine_from_vertices(sample_tet());
    VectorPolynomial<double> uhat(1);
    uhat.comp[2] = Poly3<double>::variable(0);
    const auto u = piola_covariant(uhat, m);
    const Vec3 expect = piola_curl(m, Vec3(0, -1, 0));
    const Vec3 x(0.4, 0.4, 0.3);
    const double e = 1e-6;
    Mat3 J;
    for (int j = 0; j < 3; ++j) {
        Vec3 d = Vec3::Zero();
        d[j] = e;
        J.col(j) = (u(x + d) - u(x - d)) / (2 * e);
    }
    const Vec3 c(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
    EXPECT_LT((c - expect).norm(), 1e-8);
}

TEST(Frames, EdgeFrameIsOrthonormalAndOriented)
{
    const EdgeFrame f = canonical_edge_frame(Vec3(0, 0, 0), Vec3(1, 1, 0));
    const Vec3 t = to_vec(f.tau);
    const Vec3 n = to_vec(f.n);
    const Vec3 b = to_vec(f.m);
    EXPECT_NEAR(t.norm(), 1.0, 1e-15);
    EXPECT_NEAR(n.norm(), 1.0, 1e-15);
    EXPECT_NEAR(b.norm(), 1.0, 1e-15);
    EXPECT_NEAR(t.dot(n), 0.0, 1e-15);
    EXPECT_NEAR(t.dot(b), 0.0, 1e-15);
    EXPECT_NEAR(n.dot(b), 0.0, 1e-15);
    EXPECT_GT(t.dot(Vec3(1, 1, 0)), 0.0);
}

TEST(Frames, HelperAxisLeastAligned)
{
    EXPECT_EQ(helper_axis({1.0, 0.2, 0.5}), 1);
    EXPECT_EQ(helper_axis({0.0, 1.0, 1.0}), 0);
    EXPECT_EQ(helper_axis({1.0, 1.0, 1.0}), 0);
}

TEST(Frames, FaceFrameNormalIsRightHanded)
{
    const FaceFrame f = canonical_face_frame(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0));
    EXPECT_LT((to_vec(f.nu) - Vec3(0, 0, 1)).norm(), 1e-15);
    EXPECT_LT((to_vec(f.t1) - Vec3(1, 0, 0)).norm(), 1e-15);
    EXPECT_LT((to_vec(f.t2) - Vec3(0, 1, 0)).norm(), 1e-15);
}

TEST(Frames, RawFramesAreParallelToUnitFrames)
{
    const Triple<Rational> a{Rational(0), Rational(1, 2), Rational(0)};
    const Triple<Rational> b{Rational(1, 2), Rational(1), Rational(1, 2)};
    const auto raw = raw_edge_frame(a, b);
    const EdgeFrame unit = canonical_edge_frame(Vec3(0, 0.5, 0), Vec3(0.5, 1, 0.5));
    const Vec3 rn(raw.n[0].get_d(), raw.n[1].get_d(), raw.n[2].get_d());
    EXPECT_NEAR(rn.normalized().dot(to_vec(unit.n)), 1.0, 1e-15);
    EXPECT_NEAR(norm3(raw.tau), std::sqrt(0.75), 1e-15);
}

}  // namespace
}  // namespace quadcurl
