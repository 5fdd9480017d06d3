/**
 * @file geometry.hpp
 * @brief Reference tetrahedron, affine element maps, covariant Piola maps, and
 *        the canonical edge and face frames shared by all elements touching an entity.
 */
#pragma once

#include "quadcurl/polynomial.hpp"
#include "quadcurl/scalar.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>

namespace quadcurl {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

template <typename T>
using Triple = std::array<T, 3>;

template <typename T>
[[nodiscard]] Triple<T> sub3(const Triple<T>& a, const Triple<T>& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <typename T>
[[nodiscard]] Triple<T> cross3(const Triple<T>& a, const Triple<T>& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <typename T>
[[nodiscard]] T dot3(const Triple<T>& a, const Triple<T>& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

[[nodiscard]] inline Vec3 to_vec(const Triple<double>& a) { return {a[0], a[1], a[2]}; }
[[nodiscard]] inline Triple<double> to_triple(const Vec3& v) { return {v[0], v[1], v[2]}; }

/// The unit reference tetrahedron with library-canonical edge and face numbering.
struct ReferenceTet {
    static constexpr std::array<std::array<int, 3>, 4> vertices{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    /// Local edges as (p, q) with p < q.
    static constexpr std::array<std::array<int, 2>, 6> edges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    /// Face i is opposite vertex i; vertex triples are ascending.
    static constexpr std::array<std::array<int, 3>, 4> faces{{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

    [[nodiscard]] static Vec3 vertex(int i)
    {
        const auto& v = vertices[static_cast<std::size_t>(i)];
        return {double(v[0]), double(v[1]), double(v[2])};
    }
    [[nodiscard]] static Triple<Rational> vertex_exact(int i)
    {
        const auto& v = vertices[static_cast<std::size_t>(i)];
        return {Rational(v[0]), Rational(v[1]), Rational(v[2])};
    }
    /// Outward unit normal of face i.
    [[nodiscard]] static Vec3 outward_normal(int face);
};

struct AffineMap {
    Mat3 B = Mat3::Identity();
    Vec3 b = Vec3::Zero();
    double detB = 1.0;
    Mat3 Binv = Mat3::Identity();

    [[nodiscard]] Vec3 forward(const Vec3& xhat) const { return B * xhat + b; }
    [[nodiscard]] Vec3 inverse(const Vec3& x) const { return Binv * (x - b); }
};

/// F(x̂) = B x̂ + b with F(reference vertex i) = v[i]. Throws DegenerateElement for flat elements.
[[nodiscard]] AffineMap affine_from_vertices(const std::array<Vec3, 4>& v);

/// u(x) = B^{-T} û(F^{-1}(x)).
[[nodiscard]] std::function<Vec3(const Vec3&)> piola_covariant(const VectorPolynomial<double>& uhat, const AffineMap& map);

/// (curl u)(F(x̂)) = B curl̂ û(x̂) / det B.
[[nodiscard]] inline Vec3 piola_curl(const AffineMap& map, const Vec3& curl_hat) { return map.B * curl_hat / map.detB; }

/// Normalized B^{-T} n̂.
[[nodiscard]] Vec3 map_normal(const AffineMap& map, const Vec3& nhat);
/// Normalized B τ̂.
[[nodiscard]] Vec3 map_tangent(const AffineMap& map, const Vec3& tauhat);

template <typename T>
struct EdgeFrameT {
    Triple<T> tau;
    Triple<T> n;
    Triple<T> m;
};
using EdgeFrame = EdgeFrameT<double>;

template <typename T>
struct FaceFrameT {
    Triple<T> t1;
    Triple<T> t2;
    Triple<T> nu;
};
using FaceFrame = FaceFrameT<double>;

/// Coordinate axis least aligned with d; near-ties go to the lower index.
[[nodiscard]] int helper_axis(const Triple<double>& d);

/// Orthonormal frame of the edge from xp to xq (xp is the endpoint with the lower global id).
[[nodiscard]] EdgeFrame canonical_edge_frame(const Vec3& xp, const Vec3& xq);
/// Same directions without normalization: tau = xq - xp, n = tau × axis, m = tau × n.
[[nodiscard]] EdgeFrameT<Rational> raw_edge_frame(const Triple<Rational>& xp, const Triple<Rational>& xq);

/// Frame of the face with vertices P0 < P1 < P2 by global id.
[[nodiscard]] FaceFrame canonical_face_frame(const Vec3& p0, const Vec3& p1, const Vec3& p2);
/// t1 = P1 - P0, nu = (P1 - P0) × (P2 - P0), t2 = nu × t1.
[[nodiscard]] FaceFrameT<Rational> raw_face_frame(const Triple<Rational>& p0, const Triple<Rational>& p1,
                                                  const Triple<Rational>& p2);

[[nodiscard]] double norm3(const Triple<Rational>& v);

}  // namespace quadcurl
