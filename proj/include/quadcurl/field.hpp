/**
 * @file field.hpp
 * @brief Vector fields that the element functionals can be applied to: anything that
 *        reports u, curl u, and the first and second derivatives of curl u at a point.
 */
#pragma once

#include "quadcurl/geometry.hpp"
#include "quadcurl/polynomial.hpp"

#include <array>

namespace quadcurl {

class VectorField {
public:
    virtual ~VectorField() = default;

    [[nodiscard]] virtual Vec3 value(const Vec3& x) const = 0;
    [[nodiscard]] virtual Vec3 curl(const Vec3& x) const = 0;
    /// J(i, j) = d_j (curl u)_i
    [[nodiscard]] virtual Mat3 curl_jacobian(const Vec3& x) const = 0;
    /// H[i](o, s) = d_o d_s (curl u)_i
    [[nodiscard]] virtual std::array<Mat3, 3> curl_hessian(const Vec3& x) const = 0;
    /// curl curl u; by default read off the antisymmetric part of the curl Jacobian.
    [[nodiscard]] virtual Vec3 curl_curl(const Vec3& x) const;
};

[[nodiscard]] Vec3 curl_from_jacobian(const Mat3& J);

/// A polynomial field given in Cartesian coordinates.
class PolynomialField : public VectorField {
public:
    explicit PolynomialField(VectorPolynomial<double> u);

    [[nodiscard]] Vec3 value(const Vec3& x) const override;
    [[nodiscard]] Vec3 curl(const Vec3& x) const override;
    [[nodiscard]] Mat3 curl_jacobian(const Vec3& x) const override;
    [[nodiscard]] std::array<Mat3, 3> curl_hessian(const Vec3& x) const override;

    [[nodiscard]] const VectorPolynomial<double>& polynomial() const { return u_; }

private:
    VectorPolynomial<double> u_;
    VectorPolynomial<double> c_;
    std::array<VectorPolynomial<double>, 3> dc_;                 // d_j c
    std::array<std::array<VectorPolynomial<double>, 3>, 3> ddc_;  // d_o d_s c
};

/// The covariant pushforward u(x) = B^{-T} ŵ(F^{-1} x) of a reference polynomial field.
class PushedPolynomialField : public VectorField {
public:
    PushedPolynomialField(VectorPolynomial<double> what, const AffineMap& map);

    [[nodiscard]] Vec3 value(const Vec3& x) const override;
    [[nodiscard]] Vec3 curl(const Vec3& x) const override;
    [[nodiscard]] Mat3 curl_jacobian(const Vec3& x) const override;
    [[nodiscard]] std::array<Mat3, 3> curl_hessian(const Vec3& x) const override;

private:
    PolynomialField ref_;
    AffineMap map_;
    Mat3 M_;  // B / det B
};

/// The zero field.
class ZeroField : public VectorField {
public:
    [[nodiscard]] Vec3 value(const Vec3&) const override { return Vec3::Zero(); }
    [[nodiscard]] Vec3 curl(const Vec3&) const override { return Vec3::Zero(); }
    [[nodiscard]] Mat3 curl_jacobian(const Vec3&) const override { return Mat3::Zero(); }
    [[nodiscard]] std::array<Mat3, 3> curl_hessian(const Vec3&) const override
    {
        return {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    }
};

}  // namespace quadcurl
