#include "quadcurl/field.hpp"

namespace quadcurl {

Vec3 curl_from_jacobian(const Mat3& J)
{
    return {J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1)};
}

Vec3 VectorField::curl_curl(const Vec3& x) const
{
    return curl_from_jacobian(curl_jacobian(x));
}

namespace {

Triple<double> tri(const Vec3& x) { return {x[0], x[1], x[2]}; }

VectorPolynomial<double> partial(const VectorPolynomial<double>& v, int var)
{
    return {v.comp[0].derivative(var), v.comp[1].derivative(var), v.comp[2].derivative(var)};
}

}  // namespace

PolynomialField::PolynomialField(VectorPolynomial<double> u) : u_(std::move(u)), c_(quadcurl::curl(u_))
{
    for (int j = 0; j < 3; ++j) {
        dc_[static_cast<std::size_t>(j)] = partial(c_, j);
    }
    for (int o = 0; o < 3; ++o) {
        for (int s = 0; s < 3; ++s) {
            ddc_[static_cast<std::size_t>(o)][static_cast<std::size_t>(s)] = partial(dc_[static_cast<std::size_t>(s)], o);
        }
    }
}

Vec3 PolynomialField::value(const Vec3& x) const
{
    return to_vec(u_.evaluate(tri(x)));
}

Vec3 PolynomialField::curl(const Vec3& x) const
{
    return to_vec(c_.evaluate(tri(x)));
}

Mat3 PolynomialField::curl_jacobian(const Vec3& x) const
{
    Mat3 J;
    for (int j = 0; j < 3; ++j) {
        J.col(j) = to_vec(dc_[static_cast<std::size_t>(j)].evaluate(tri(x)));
    }
    return J;
}

std::array<Mat3, 3> PolynomialField::curl_hessian(const Vec3& x) const
{
    std::array<Mat3, 3> H;
    for (int o = 0; o < 3; ++o) {
        for (int s = 0; s < 3; ++s) {
            const auto v = ddc_[static_cast<std::size_t>(o)][static_cast<std::size_t>(s)].evaluate(tri(x));
            for (std::size_t i = 0; i < 3; ++i) {
                H[i](o, s) = v[i];
            }
        }
    }
    return H;
}

PushedPolynomialField::PushedPolynomialField(VectorPolynomial<double> what, const AffineMap& map)
    : ref_(std::move(what)), map_(map), M_(map.B / map.detB)
{
}

Vec3 PushedPolynomialField::value(const Vec3& x) const
{
    return map_.Binv.transpose() * ref_.value(map_.inverse(x));
}

Vec3 PushedPolynomialField::curl(const Vec3& x) const
{
    return M_ * ref_.curl(map_.inverse(x));
}

Mat3 PushedPolynomialField::curl_jacobian(const Vec3& x) const
{
    return M_ * ref_.curl_jacobian(map_.inverse(x)) * map_.Binv;
}

std::array<Mat3, 3> PushedPolynomialField::curl_hessian(const Vec3& x) const
{
    const auto Hh = ref_.curl_hessian(map_.inverse(x));
    std::array<Mat3, 3> H;
    for (int i = 0; i < 3; ++i) {
        Mat3 acc = Mat3::Zero();
        for (int r = 0; r < 3; ++r) {
            acc += M_(i, r) * Hh[static_cast<std::size_t>(r)];
        }
        H[static_cast<std::size_t>(i)] = map_.Binv.transpose() * acc * map_.Binv;
    }
    return H;
}

}  // namespace quadcurl
