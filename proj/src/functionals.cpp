#include "quadcurl/functionals.hpp"

#include "quadcurl/errors.hpp"
#include "quadcurl/polyspace.hpp"

#include <map>
#include <mutex>
#include <optional>

namespace quadcurl {

Vec3 ElementGeometry::edge_point(int e, double t) const
{
    const auto& pq = ReferenceTet::edges[static_cast<std::size_t>(e)];
    return x[static_cast<std::size_t>(pq[0])] + t * (x[static_cast<std::size_t>(pq[1])] - x[static_cast<std::size_t>(pq[0])]);
}

Vec3 ElementGeometry::face_point(int f, double s, double t) const
{
    const auto& v = ReferenceTet::faces[static_cast<std::size_t>(f)];
    const Vec3& p0 = x[static_cast<std::size_t>(v[0])];
    return p0 + s * (x[static_cast<std::size_t>(v[1])] - p0) + t * (x[static_cast<std::size_t>(v[2])] - p0);
}

ElementGeometry make_element_geometry(const std::array<Vec3, 4>& x)
{
    ElementGeometry g;
    g.x = x;
    g.map = affine_from_vertices(x);
    for (std::size_t e = 0; e < 6; ++e) {
        const auto& pq = ReferenceTet::edges[e];
        const Vec3& p = x[static_cast<std::size_t>(pq[0])];
        const Vec3& q = x[static_cast<std::size_t>(pq[1])];
        g.edge[e] = canonical_edge_frame(p, q);
        g.edge_length[e] = (q - p).norm();
    }
    for (std::size_t f = 0; f < 4; ++f) {
        const auto& v = ReferenceTet::faces[f];
        const Vec3& p0 = x[static_cast<std::size_t>(v[0])];
        const Vec3& p1 = x[static_cast<std::size_t>(v[1])];
        const Vec3& p2 = x[static_cast<std::size_t>(v[2])];
        g.face[f] = canonical_face_frame(p0, p1, p2);
        g.face_area[f] = 0.5 * (p1 - p0).cross(p2 - p0).norm();
    }
    return g;
}

const ElementGeometry& reference_geometry()
{
    static const ElementGeometry g = make_element_geometry(
        {ReferenceTet::vertex(0), ReferenceTet::vertex(1), ReferenceTet::vertex(2), ReferenceTet::vertex(3)});
    return g;
}

const std::vector<VectorPolynomial<double>>& interior_curl_tests(int k)
{
    static std::mutex mutex;
    static std::map<int, std::vector<VectorPolynomial<double>>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(k);
    if (it == cache.end()) {
        std::vector<VectorPolynomial<double>> tests;
        for (const auto& q : x_cross_basis(k - 7).members) {
            tests.push_back(q.cast<double>());
        }
        it = cache.emplace(k, std::move(tests)).first;
    }
    return it->second;
}

namespace {

Vec3 frame_vector(const EdgeFrame& f, int dir)
{
    switch (dir) {
        case Tau: return to_vec(f.tau);
        case Normal: return to_vec(f.n);
        default: return to_vec(f.m);
    }
}

double monomial2(int r, double s, double t)
{
    const auto& e = monomial_table<2>(12)[static_cast<std::size_t>(r)];
    return std::pow(s, e[0]) * std::pow(t, e[1]);
}

double monomial3(int r, const Vec3& x)
{
    const auto& e = monomial_table<3>(12)[static_cast<std::size_t>(r)];
    return std::pow(x[0], e[0]) * std::pow(x[1], e[1]) * std::pow(x[2], e[2]);
}

double derivative_of_curl(const DofDescriptor& d, const VectorField& field, const Vec3& p)
{
    const int order = d.deriv[0] + d.deriv[1] + d.deriv[2];
    const auto c = static_cast<std::size_t>(d.component);
    if (order == 0) {
        return field.curl(p)[static_cast<Eigen::Index>(c)];
    }
    if (order == 1) {
        const int o = d.deriv[0] == 1 ? 0 : (d.deriv[1] == 1 ? 1 : 2);
        return field.curl_jacobian(p)(static_cast<Eigen::Index>(c), o);
    }
    int idx[2];
    int n = 0;
    for (int v = 0; v < 3; ++v) {
        for (int j = 0; j < d.deriv[static_cast<std::size_t>(v)]; ++j) {
            idx[n++] = v;
        }
    }
    return field.curl_hessian(p)[c](idx[0], idx[1]);
}

/// Field samples on the quadrature points of one entity, computed on first use.
struct Samples {
    std::vector<Vec3> u;
    std::vector<Vec3> curl;
};

class Evaluator {
public:
    Evaluator(const ElementGeometry& g, const VectorField& field, int qd)
        : g_(g), field_(field), rule1_(rule_for(1, qd)), rule2_(rule_for(2, qd)), rule3_(rule_for(3, qd))
    {
    }

    double apply(const DofDescriptor& d)
    {
        switch (d.kind) {
            case DofKind::VertexCurl:
            case DofKind::VertexCurlGrad:
            case DofKind::VertexCurlHess:
                return derivative_of_curl(d, field_, g_.x[static_cast<std::size_t>(d.entity)]);
            case DofKind::EdgeCurlValue:
                return field_.curl(g_.edge_point(d.entity, to_double(d.node_param)))[d.component];
            case DofKind::EdgeCurlDirDeriv_n:
            case DofKind::EdgeCurlDirDeriv_m:
            case DofKind::EdgeCurlDirDeriv_tau: {
                const auto& f = g_.edge[static_cast<std::size_t>(d.entity)];
                const Mat3 J = field_.curl_jacobian(g_.edge_point(d.entity, to_double(d.node_param)));
                return frame_vector(f, d.dir_a).dot(J * frame_vector(f, d.dir_b));
            }
            case DofKind::EdgeTangMoment: {
                const auto& s = edge_samples(d.entity);
                const auto& pq = ReferenceTet::edges[static_cast<std::size_t>(d.entity)];
                const Vec3 dir = g_.x[static_cast<std::size_t>(pq[1])] - g_.x[static_cast<std::size_t>(pq[0])];
                const auto L = shifted_legendre<double>(d.test);
                double sum = 0.0;
                for (std::size_t q = 0; q < rule1_.size(); ++q) {
                    sum += rule1_.weights[q] * s.u[q].dot(dir) * L.evaluate({rule1_.points[q][0]});
                }
                return sum;
            }
            case DofKind::FaceUMoment: {
                const auto& s = face_samples(d.entity);
                const auto& v = ReferenceTet::faces[static_cast<std::size_t>(d.entity)];
                const Vec3& p0 = g_.x[static_cast<std::size_t>(v[0])];
                double sum = 0.0;
                for (std::size_t q = 0; q < rule2_.size(); ++q) {
                    const double ss = rule2_.points[q][0];
                    const double tt = rule2_.points[q][1];
                    const Vec3 G = g_.face_point(d.entity, ss, tt);
                    sum += rule2_.weights[q] * s.u[q].dot(G - p0) * monomial2(d.test, ss, tt);
                }
                return 2.0 * sum;
            }
            case DofKind::FaceCurlTangMoment:
            case DofKind::FaceCurlNormMoment: {
                const auto& s = face_samples(d.entity);
                const auto& f = g_.face[static_cast<std::size_t>(d.entity)];
                const Vec3 dir = d.kind == DofKind::FaceCurlNormMoment ? to_vec(f.nu)
                                                                      : (d.component == 0 ? to_vec(f.t1) : to_vec(f.t2));
                double sum = 0.0;
                for (std::size_t q = 0; q < rule2_.size(); ++q) {
                    sum += rule2_.weights[q] * s.curl[q].dot(dir) * monomial2(d.test, rule2_.points[q][0], rule2_.points[q][1]);
                }
                return 2.0 * sum;
            }
            case DofKind::InteriorUMoment: {
                const auto& s = interior_samples();
                double sum = 0.0;
                for (std::size_t q = 0; q < rule3_.size(); ++q) {
                    const Vec3 xh(rule3_.points[q][0], rule3_.points[q][1], rule3_.points[q][2]);
                    sum += rule3_.weights[q] * (g_.map.B.transpose() * s.u[q]).dot(xh) * monomial3(d.test, xh);
                }
                return sum;
            }
            case DofKind::InteriorCurlMoment: {
                const auto& s = interior_samples();
                const auto& test = interior_curl_tests(d.order)[static_cast<std::size_t>(d.test)];
                const Mat3 M = g_.map.detB * g_.map.Binv;
                double sum = 0.0;
                for (std::size_t q = 0; q < rule3_.size(); ++q) {
                    const Vec3 xh(rule3_.points[q][0], rule3_.points[q][1], rule3_.points[q][2]);
                    sum += rule3_.weights[q] * (M * s.curl[q]).dot(to_vec(test.evaluate({xh[0], xh[1], xh[2]})));
                }
                return sum;
            }
        }
        throw Error("apply_dof: unknown functional kind");
    }

private:
    const Samples& edge_samples(int e)
    {
        auto& slot = edges_[static_cast<std::size_t>(e)];
        if (!slot) {
            Samples s;
            for (const auto& p : rule1_.points) {
                s.u.push_back(field_.value(g_.edge_point(e, p[0])));
            }
            slot = std::move(s);
        }
        return *slot;
    }

    const Samples& face_samples(int f)
    {
        auto& slot = faces_[static_cast<std::size_t>(f)];
        if (!slot) {
            Samples s;
            for (const auto& p : rule2_.points) {
                const Vec3 G = g_.face_point(f, p[0], p[1]);
                s.u.push_back(field_.value(G));
                s.curl.push_back(field_.curl(G));
            }
            slot = std::move(s);
        }
        return *slot;
    }

    const Samples& interior_samples()
    {
        if (!interior_) {
            Samples s;
            for (const auto& p : rule3_.points) {
                const Vec3 X = g_.map.forward(Vec3(p[0], p[1], p[2]));
                s.u.push_back(field_.value(X));
                s.curl.push_back(field_.curl(X));
            }
            interior_ = std::move(s);
        }
        return *interior_;
    }

    const ElementGeometry& g_;
    const VectorField& field_;
    const QuadratureRule& rule1_;
    const QuadratureRule& rule2_;
    const QuadratureRule& rule3_;
    std::array<std::optional<Samples>, 6> edges_;
    std::array<std::optional<Samples>, 4> faces_;
    std::optional<Samples> interior_;
};

}  // namespace

double apply_dof(const DofDescriptor& d, const ElementGeometry& geom, const VectorField& field, int quad_degree)
{
    Evaluator ev(geom, field, quad_degree);
    return ev.apply(d);
}

std::vector<double> apply_dofs(const std::vector<DofDescriptor>& dofs, const ElementGeometry& geom,
                               const VectorField& field, int quad_degree)
{
    Evaluator ev(geom, field, quad_degree);
    std::vector<double> out;
    out.reserve(dofs.size());
    for (const auto& d : dofs) {
        out.push_back(ev.apply(d));
    }
    return out;
}

}  // namespace quadcurl
