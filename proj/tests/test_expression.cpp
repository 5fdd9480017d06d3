/**
 * @file test_expression.cpp
 * @brief Symbolic expression pool, tapes, and the manufactured source term.
 */
#include "quadcurl/expression.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace quadcurl::sym {
namespace {

TEST(Pool, HashConsingAndFolding)
{
    Pool p;
    const Id x = p.var(0);
    const Id y = p.var(1);
    EXPECT_EQ(p.add(x, y), p.add(x, y));
    EXPECT_EQ(p.mul(x, p.constant(1.0)), x);
    EXPECT_TRUE(p.is_const(p.mul(x, p.constant(0.0)), 0.0));
    EXPECT_TRUE(p.is_const(p.add(p.constant(2.0), p.constant(3.0)), 5.0));
}

TEST(Pool, DerivativesOfElementaryFunctions)
{
    Pool p;
    const Id x = p.var(0);
    const Id y = p.var(1);
    const Id e = p.mul(p.sin(x), p.pow(y, 3));  // sin(x) y^3
    const Vec3 pt(0.3, 0.7, 0.1);
    EXPECT_NEAR(p.evaluate(p.diff(e, 0), pt), std::cos(0.3) * std::pow(0.7, 3), 1e-15);
    EXPECT_NEAR(p.evaluate(p.diff(e, 1), pt), std::sin(0.3) * 3 * 0.49, 1e-15);
    EXPECT_TRUE(p.is_const(p.diff(e, 2), 0.0));
    EXPECT_EQ(p.diff(e, 0), p.diff(e, 0));
}

TEST(Tape, MatchesDirectEvaluation)
{
    Pool p;
    const Id x = p.var(0);
    const Id z = p.var(2);
    const Id a = p.add(p.cos(p.mul(x, z)), p.pow(p.sub(x, z), 2));
    const Id b = p.diff(a, 2);
    const Tape t(p, {a, b});
    double out[2];
    const Vec3 pt(0.4, -0.2, 0.9);
    t.evaluate(pt, out);
    EXPECT_DOUBLE_EQ(out[0], p.evaluate(a, pt));
    EXPECT_DOUBLE_EQ(out[1], p.evaluate(b, pt));
    EXPECT_EQ(t.num_roots(), 2u);
}

TEST(SymbolicField, ZeroFieldHasZeroSource)
{
    auto pool = std::make_shared<Pool>();
    const Id zero = pool->constant(0.0);
    const SymbolicField u(pool, {zero, zero, zero});
    EXPECT_EQ(u.source(Vec3(0.1, 0.2, 0.3)), Vec3::Zero());
}

TEST(SymbolicField, PolynomialAgreesWithPolynomialField)
{
    VectorPolynomial<double> q(3);
    q.comp[0] = Poly3<double>::monomial({1, 2, 0}, 2.0) + Poly3<double>::monomial({0, 0, 3}).with_degree_bound(3);
    q.comp[1] = Poly3<double>::monomial({3, 0, 0}, -1.0);
    q.comp[2] = Poly3<double>::monomial({1, 1, 1}, 0.5);
    auto pool = std::make_shared<Pool>();
    const SymbolicField s(pool, polynomial_field(*pool, q));
    const PolynomialField r(q);
    const Vec3 x(0.3, -0.4, 0.8);
    EXPECT_LT((s.value(x) - r.value(x)).norm(), 1e-14);
    EXPECT_LT((s.curl(x) - r.curl(x)).norm(), 1e-14);
    EXPECT_LT((s.curl_jacobian(x) - r.curl_jacobian(x)).norm(), 1e-14);
    const auto hs = s.curl_hessian(x);
    const auto hr = r.curl_hessian(x);
    for (int i = 0; i < 3; ++i) {
        EXPECT_LT((hs[static_cast<std::size_t>(i)] - hr[static_cast<std::size_t>(i)]).norm(), 1e-13);
    }
    // (curl)^4 of a cubic vanishes, so the source is the field itself
    EXPECT_LT((s.source(x) - r.value(x)).norm(), 1e-14);
}

TEST(SymbolicField, Example1SourceAgainstFiniteDifferences)
{
    auto pool = std::make_shared<Pool>();
    const auto u = std::make_shared<SymbolicField>(pool, example1_field(*pool));
    // (curl)^4 u = curl curl (w) with w = curl curl u, differentiated numerically
    auto w = [&](const Vec3& x) { return u->curl_curl(x); };
    auto curl_fd = [](const auto& f, const Vec3& x) {
        const double e = 1e-4;
        Mat3 J;
        for (int j = 0; j < 3; ++j) {
            Vec3 d = Vec3::Zero();
            d[j] = e;
            J.col(j) = (f(x + d) - f(x - d)) / (2 * e);
        }
        return Vec3(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
    };
    auto curl_w = [&](const Vec3& x) { return curl_fd(w, x); };
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.05, 0.95);
    for (int i = 0; i < 10; ++i) {
        const Vec3 x(dist(rng), dist(rng), dist(rng));
        const Vec3 fd = curl_fd(curl_w, x) + u->value(x);
        const Vec3 f = u->source(x);
        EXPECT_LE((fd - f).norm(), 1e-5 * std::max(1.0, f.norm())) << "point " << i;
    }
}

TEST(SymbolicField, Example1CurlIsDivergenceFree)
{
    auto pool = std::make_shared<Pool>();
    const SymbolicField u(pool, example1_field(*pool));
    std::vector<Vec3> pts;
    for (int i = 0; i < 20; ++i) {
        pts.emplace_back(0.05 * i, 0.3 + 0.02 * i, 0.9 - 0.04 * i);
    }
    EXPECT_LT(max_div_curl(u, pts), 1e-10);
}

TEST(SymbolicField, Example1ValueMatchesFormula)
{
    auto pool = std::make_shared<Pool>();
    const SymbolicField u(pool, example1_field(*pool));
    const double pi = std::numbers::pi;
    const Vec3 x(0.2, 0.35, 0.6);
    auto s = [&](double t) { return std::sin(pi * t); };
    auto c = [&](double t) { return std::cos(pi * t); };
    const Vec3 expect(0.0, 3 * pi * std::pow(s(x.x()), 3) * std::pow(s(x.y()), 3) * s(x.z()) * s(x.z()) * c(x.z()),
                      -3 * pi * std::pow(s(x.x()), 3) * std::pow(s(x.z()), 3) * s(x.y()) * s(x.y()) * c(x.y()));
    EXPECT_LT((u.value(x) - expect).norm(), 1e-14);
}

TEST(ManufacturedRhs, MatchesSource)
{
    auto pool = std::make_shared<Pool>();
    const auto u = std::make_shared<SymbolicField>(pool, example1_field(*pool));
    const auto f = manufactured_rhs(u);
    const Vec3 x(0.3, 0.6, 0.2);
    EXPECT_EQ(f(x), u->source(x));
}

}  // namespace
}  // namespace quadcurl::sym
