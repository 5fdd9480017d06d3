/**
 * @file interpolation.cpp
 * @brief Discretization context, global interpolation, and error norms.
 */
#include "quadcurl/interpolation.hpp"

#include "quadcurl/errors.hpp"

#include <cmath>

namespace quadcurl {

namespace {

constexpr int kEps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                              {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                              {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};

double ipow(double x, int n)
{
    double r = 1.0;
    for (int i = 0; i < n; ++i) {
        r *= x;
    }
    return r;
}

/// d^{d} x^e / dx^{d} evaluated at x.
double dpow(double x, int e, int d)
{
    if (d > e) {
        return 0.0;
    }
    double c = 1.0;
    for (int i = 0; i < d; ++i) {
        c *= e - i;
    }
    return c * ipow(x, e - d);
}

/// Partial derivative of the monomial with exponent e, of multi-order o.
double monomial_derivative(const Exponent<3>& e, const std::array<int, 3>& o, const Vec3& x)
{
    return dpow(x[0], e[0], o[0]) * dpow(x[1], e[1], o[1]) * dpow(x[2], e[2], o[2]);
}

}  // namespace

PointTabulation tabulate_points(const ReferenceBasis& basis, const std::vector<std::array<double, 3>>& points,
                                bool with_jacobian)
{
    using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using RowL = Eigen::Matrix<long double, 1, Eigen::Dynamic>;
    const auto nq = static_cast<Eigen::Index>(points.size());
    const auto& table = monomial_table<3>(basis.k);
    const auto nm = static_cast<Eigen::Index>(table.size());
    // P[c] (nm x 315): coefficients of the c-th component of every basis function.
    std::array<MatL, 3> P;
    for (int c = 0; c < 3; ++c) {
        P[static_cast<std::size_t>(c)] = basis.coefficients_ld.middleCols(c * nm, nm).transpose();
    }
    PointTabulation tab;
    const Eigen::Index nb = basis.coefficients_ld.rows();
    tab.value.resize(3 * nq, nb);
    tab.curl.resize(3 * nq, nb);
    if (with_jacobian) {
        tab.curl_jac.resize(9 * nq, nb);
    }
    RowL mv(nm);
    std::array<RowL, 3> g;
    std::array<std::array<RowL, 3>, 3> h;
    for (auto& r : g) {
        r.resize(nm);
    }
    for (auto& row : h) {
        for (auto& r : row) {
            r.resize(nm);
        }
    }
    for (Eigen::Index q = 0; q < nq; ++q) {
        const auto& p = points[static_cast<std::size_t>(q)];
        const Vec3 x(p[0], p[1], p[2]);
        for (Eigen::Index m = 0; m < nm; ++m) {
            const auto& e = table[static_cast<std::size_t>(m)];
            mv[m] = monomial_derivative(e, {0, 0, 0}, x);
            for (int j = 0; j < 3; ++j) {
                std::array<int, 3> o{0, 0, 0};
                o[static_cast<std::size_t>(j)] = 1;
                g[static_cast<std::size_t>(j)][m] = monomial_derivative(e, o, x);
                for (int l = j; l < 3 && with_jacobian; ++l) {
                    std::array<int, 3> o2 = o;
                    o2[static_cast<std::size_t>(l)] += 1;
                    h[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)][m] = monomial_derivative(e, o2, x);
                }
            }
        }
        // Component c of u, and d_j of component c.
        std::array<RowL, 3> u;
        std::array<std::array<RowL, 3>, 3> du;
        for (int c = 0; c < 3; ++c) {
            const auto& Pc = P[static_cast<std::size_t>(c)];
            u[static_cast<std::size_t>(c)] = mv * Pc;
            for (int j = 0; j < 3; ++j) {
                du[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] = g[static_cast<std::size_t>(j)] * Pc;
            }
        }
        for (int i = 0; i < 3; ++i) {
            tab.value.row(3 * q + i) = u[static_cast<std::size_t>(i)].cast<double>();
            RowL ci = RowL::Zero(nb);
            for (int j = 0; j < 3; ++j) {
                for (int c = 0; c < 3; ++c) {
                    if (kEps[i][j][c] != 0) {
                        ci += static_cast<long double>(kEps[i][j][c]) * du[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
                    }
                }
            }
            tab.curl.row(3 * q + i) = ci.cast<double>();
        }
        if (!with_jacobian) {
            continue;
        }
        // d_l d_j of component c.
        std::array<std::array<std::array<RowL, 3>, 3>, 3> ddu;
        for (int c = 0; c < 3; ++c) {
            const auto& Pc = P[static_cast<std::size_t>(c)];
            for (int j = 0; j < 3; ++j) {
                for (int l = j; l < 3; ++l) {
                    auto& slot = ddu[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
                    slot = h[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] * Pc;
                    ddu[static_cast<std::size_t>(c)][static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] = slot;
                }
            }
        }
        for (int i = 0; i < 3; ++i) {
            for (int l = 0; l < 3; ++l) {
                RowL d = RowL::Zero(nb);
                for (int j = 0; j < 3; ++j) {
                    for (int c = 0; c < 3; ++c) {
                        if (kEps[i][j][c] != 0) {
                            d += static_cast<long double>(kEps[i][j][c]) *
                                 ddu[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
                        }
                    }
                }
                tab.curl_jac.row(9 * q + 3 * i + l) = d.cast<double>();
            }
        }
    }
    return tab;
}

ReferenceTabulation tabulate_reference(const ReferenceBasis& basis, int quad_degree)
{
    ReferenceTabulation tab;
    tab.rule = rule_for(3, quad_degree);
    PointTabulation pt = tabulate_points(basis, tab.rule.points);
    tab.value = std::move(pt.value);
    tab.curl = std::move(pt.curl);
    tab.curl_jac = std::move(pt.curl_jac);
    return tab;
}

Eigen::Matrix<double, 3, 9> curl_curl_map(const AffineMap& map)
{
    // Physical curl Jacobian J = M Ĵ B^{-1} with M = B / det B; curl curl is its axial part.
    const Mat3 M = map.B / map.detB;
    Eigen::Matrix<double, 9, 9> toJ = Eigen::Matrix<double, 9, 9>::Zero();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int r = 0; r < 3; ++r) {
                for (int s = 0; s < 3; ++s) {
                    toJ(3 * i + j, 3 * r + s) = M(i, r) * map.Binv(s, j);
                }
            }
        }
    }
    Eigen::Matrix<double, 3, 9> axial = Eigen::Matrix<double, 3, 9>::Zero();
    axial(0, 3 * 2 + 1) = 1.0;
    axial(0, 3 * 1 + 2) = -1.0;
    axial(1, 3 * 0 + 2) = 1.0;
    axial(1, 3 * 2 + 0) = -1.0;
    axial(2, 3 * 1 + 0) = 1.0;
    axial(2, 3 * 0 + 1) = -1.0;
    return axial * toJ;
}

std::array<long long, 9> shape_key(const AffineMap& map, double scale)
{
    std::array<long long, 9> key{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            key[static_cast<std::size_t>(3 * i + j)] = std::llround(map.B(i, j) / scale * 1e9);
        }
    }
    return key;
}

Discretization::Discretization(MeshComplex mesh, BoundaryMode mode, int quad_degree, bool check_transforms)
    : mesh_(std::move(mesh)),
      dofs_(build_dof_map(mesh_, mode)),
      basis_(&reference_basis()),
      quad_degree_(quad_degree),
      tab_(tabulate_reference(*basis_, quad_degree))
{
    std::map<std::array<long long, 9>, std::size_t> index;
    geoms_.reserve(mesh_.num_tets());
    shape_of_.reserve(mesh_.num_tets());
    for (std::size_t t = 0; t < mesh_.num_tets(); ++t) {
        geoms_.push_back(mesh_.geometry(t));
        const auto key = shape_key(geoms_.back().map, mesh_.h);
        auto [it, inserted] = index.try_emplace(key, shapes_.size());
        if (inserted) {
            shapes_.push_back(element_basis(geoms_.back(), *basis_, check_transforms));
        }
        shape_of_.push_back(it->second);
    }
}

double Discretization::max_transform_residual() const
{
    double r = -1.0;
    for (const auto& s : shapes_) {
        r = std::max(r, s.residual);
    }
    return r;
}

bool Discretization::any_fallback() const
{
    return std::any_of(shapes_.begin(), shapes_.end(), [](const ElementBasis& s) { return s.used_fallback; });
}

Eigen::VectorXd Discretization::gather(std::size_t t, const Eigen::VectorXd& global) const
{
    Eigen::VectorXd local(kLocalDofs);
    const auto& g = dofs_.gather[t];
    for (int i = 0; i < kLocalDofs; ++i) {
        local[i] = global[g[static_cast<std::size_t>(i)]];
    }
    return local;
}

PushedPolynomialField DiscreteField::element_field(std::size_t t) const
{
    const Eigen::VectorXd local = disc->gather(t, coeffs);
    const Eigen::VectorXd ref = disc->basis().coefficients.transpose() * (disc->transform(t) * local);
    const auto& table = monomial_table<3>(disc->basis().k);
    const auto nm = table.size();
    VectorPolynomial<double> what(disc->basis().k);
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t m = 0; m < nm; ++m) {
            what.comp[c][m] = ref[static_cast<Eigen::Index>(c * nm + m)];
        }
    }
    return PushedPolynomialField(std::move(what), disc->geometry(t).map);
}

Eigen::VectorXd local_dofs(const VectorField& field, const Discretization& disc, std::size_t t)
{
    static const std::vector<DofDescriptor> dofs = enumerate_dofs(7);
    const auto v = apply_dofs(dofs, disc.geometry(t), field, disc.quad_degree());
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

DiscreteField interpolate(const VectorField& field, const Discretization& disc)
{
    DiscreteField out{&disc, Eigen::VectorXd::Zero(disc.dofs().ndofs)};
    std::vector<char> written(static_cast<std::size_t>(disc.dofs().ndofs), 0);
    for (std::size_t t = 0; t < disc.mesh().num_tets(); ++t) {
        const Eigen::VectorXd local = local_dofs(field, disc, t);
        const auto& g = disc.dofs().gather[t];
        for (int i = 0; i < kLocalDofs; ++i) {
            const auto gi = static_cast<std::size_t>(g[static_cast<std::size_t>(i)]);
            if (!written[gi]) {
                out.coeffs[static_cast<Eigen::Index>(gi)] = local[i];
                written[gi] = 1;
            }
        }
    }
    return out;
}

namespace {

NormTriple norms_impl(const DiscreteField& fh, const VectorField* exact)
{
    const Discretization& disc = *fh.disc;
    const auto& tab = disc.tabulation();
    const auto nq = static_cast<Eigen::Index>(tab.num_points());
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t t = 0; t < disc.mesh().num_tets(); ++t) {
        const auto& geom = disc.geometry(t);
        const auto& map = geom.map;
        const Eigen::VectorXd ref = disc.transform(t) * disc.gather(t, fh.coeffs);
        const Eigen::VectorXd v = tab.value * ref;
        const Eigen::VectorXd c = tab.curl * ref;
        const Eigen::VectorXd j = tab.curl_jac * ref;
        const Mat3 BinvT = map.Binv.transpose();
        const Mat3 M = map.B / map.detB;
        const Eigen::Matrix<double, 3, 9> ccmap = curl_curl_map(map);
        const double vol = std::abs(map.detB);
        for (Eigen::Index q = 0; q < nq; ++q) {
            const double w = tab.rule.weights[static_cast<std::size_t>(q)] * vol;
            Vec3 uh = BinvT * v.segment<3>(3 * q);
            Vec3 ch = M * c.segment<3>(3 * q);
            Vec3 cch = ccmap * j.segment<9>(9 * q);
            if (exact != nullptr) {
                const auto& p = tab.rule.points[static_cast<std::size_t>(q)];
                const Vec3 x = map.forward(Vec3(p[0], p[1], p[2]));
                uh -= exact->value(x);
                ch -= exact->curl(x);
                cch -= exact->curl_curl(x);
            }
            s0 += w * uh.squaredNorm();
            s1 += w * ch.squaredNorm();
            s2 += w * cch.squaredNorm();
        }
    }
    return {std::sqrt(s0), std::sqrt(s1), std::sqrt(s2)};
}

}  // namespace

NormTriple error_norms(const DiscreteField& fh, const VectorField& exact) { return norms_impl(fh, &exact); }

NormTriple field_norms(const DiscreteField& fh) { return norms_impl(fh, nullptr); }

double energy_norm_difference(const NormTriple& coarse, const NormTriple& fine)
{
    const double d = energy_squared(fine) - energy_squared(coarse);
    if (d < -1e-12) {
        throw NegativeDifference("energy_norm_difference: |||u_fine|||^2 - |||u_coarse|||^2 = " + std::to_string(d));
    }
    return std::sqrt(std::max(d, 0.0));
}

double energy_norm_difference(const DiscreteField& coarse, const DiscreteField& fine)
{
    return energy_norm_difference(field_norms(coarse), field_norms(fine));
}

}  // namespace quadcurl
