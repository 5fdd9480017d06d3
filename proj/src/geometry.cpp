#include "quadcurl/geometry.hpp"

#include "quadcurl/errors.hpp"

#include <cmath>

namespace quadcurl {

Vec3 ReferenceTet::outward_normal(int face)
{
    switch (face) {
        case 0: return Vec3(1, 1, 1).normalized();
        case 1: return Vec3(-1, 0, 0);
        case 2: return Vec3(0, -1, 0);
        case 3: return Vec3(0, 0, -1);
        default: throw UsageError("ReferenceTet::outward_normal: face index out of range");
    }
}

AffineMap affine_from_vertices(const std::array<Vec3, 4>& v)
{
    AffineMap map;
    for (int c = 0; c < 3; ++c) {
        map.B.col(c) = v[static_cast<std::size_t>(c) + 1] - v[0];
    }
    map.b = v[0];
    map.detB = map.B.determinant();
    double longest = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            longest = std::max(longest, (v[i] - v[j]).norm());
        }
    }
    if (!(std::abs(map.detB) >= 1e-14 * longest * longest * longest) || longest == 0.0) {
        throw DegenerateElement("affine_from_vertices: degenerate tetrahedron");
    }
    map.Binv = map.B.inverse();
    return map;
}

std::function<Vec3(const Vec3&)> piola_covariant(const VectorPolynomial<double>& uhat, const AffineMap& map)
{
    const Mat3 BinvT = map.Binv.transpose();
    return [uhat, map, BinvT](const Vec3& x) {
        const Vec3 xhat = map.inverse(x);
        const auto u = uhat.evaluate({xhat[0], xhat[1], xhat[2]});
        return Vec3(BinvT * Vec3(u[0], u[1], u[2]));
    };
}

Vec3 map_normal(const AffineMap& map, const Vec3& nhat)
{
    return (map.Binv.transpose() * nhat).normalized();
}

Vec3 map_tangent(const AffineMap& map, const Vec3& tauhat)
{
    return (map.B * tauhat).normalized();
}

int helper_axis(const Triple<double>& d)
{
    const double scale = std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
    int best = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::abs(d[static_cast<std::size_t>(i)]) < std::abs(d[static_cast<std::size_t>(best)]) - 1e-12 * scale) {
            best = i;
        }
    }
    return best;
}

EdgeFrame canonical_edge_frame(const Vec3& xp, const Vec3& xq)
{
    const Vec3 tau = (xq - xp).normalized();
    Vec3 axis = Vec3::Zero();
    axis[helper_axis(to_triple(tau))] = 1.0;
    const Vec3 n = tau.cross(axis).normalized();
    const Vec3 m = tau.cross(n);
    return {to_triple(tau), to_triple(n), to_triple(m)};
}

EdgeFrameT<Rational> raw_edge_frame(const Triple<Rational>& xp, const Triple<Rational>& xq)
{
    EdgeFrameT<Rational> f;
    f.tau = sub3(xq, xp);
    Triple<Rational> axis{Rational(0), Rational(0), Rational(0)};
    axis[static_cast<std::size_t>(helper_axis({to_double(f.tau[0]), to_double(f.tau[1]), to_double(f.tau[2])}))] = 1;
    f.n = cross3(f.tau, axis);
    f.m = cross3(f.tau, f.n);
    return f;
}

FaceFrame canonical_face_frame(const Vec3& p0, const Vec3& p1, const Vec3& p2)
{
    const Vec3 t1 = (p1 - p0).normalized();
    const Vec3 nu = (p1 - p0).cross(p2 - p0).normalized();
    const Vec3 t2 = nu.cross(t1);
    return {to_triple(t1), to_triple(t2), to_triple(nu)};
}

FaceFrameT<Rational> raw_face_frame(const Triple<Rational>& p0, const Triple<Rational>& p1, const Triple<Rational>& p2)
{
    FaceFrameT<Rational> f;
    f.t1 = sub3(p1, p0);
    f.nu = cross3(f.t1, sub3(p2, p0));
    f.t2 = cross3(f.nu, f.t1);
    return f;
}

double norm3(const Triple<Rational>& v)
{
    return std::sqrt(to_double(dot3(v, v)));
}

}  // namespace quadcurl
