#include "quadcurl/element_transform.hpp"

#include "quadcurl/errors.hpp"

#include <iostream>

namespace quadcurl {

namespace {

using Row = Eigen::RowVectorXd;

/// Position of d_o d_p in the order xx, yy, zz, xz, xy, yz.
int second_index(int o, int p)
{
    if (o == p) {
        return o;
    }
    const int lo = std::min(o, p);
    const int hi = std::max(o, p);
    if (lo == 0 && hi == 2) {
        return 3;
    }
    if (lo == 0 && hi == 1) {
        return 4;
    }
    return 5;
}

std::pair<int, int> second_pair(int s)
{
    static const std::array<std::pair<int, int>, 6> pairs{{{0, 0}, {1, 1}, {2, 2}, {0, 2}, {0, 1}, {1, 2}}};
    return pairs[static_cast<std::size_t>(s)];
}

int l_grad(int v, int c, int o) { return LocalLayout::vertex_grad + v * 8 + c * 3 + o; }
int l_hess(int v, int c, int s) { return LocalLayout::vertex_hess + v * 15 + c * 5 + (s < c ? s : s - 1); }
int s_grad(int v, int c, int o) { return StarLayout::vertex_grad + v * 9 + c * 3 + o; }
int s_hess(int v, int c, int s) { return StarLayout::vertex_hess + v * 18 + c * 6 + s; }

constexpr std::array<std::pair<int, int>, 5> kEdgePairs{{{Tau, Normal}, {Normal, Normal}, {Binormal, Normal}, {Tau, Binormal}, {Normal, Binormal}}};

Mat3 frame_matrix(const EdgeFrame& f)
{
    Mat3 F;
    F.row(0) = to_vec(f.tau).transpose();
    F.row(1) = to_vec(f.n).transpose();
    F.row(2) = to_vec(f.m).transpose();
    return F;
}

Vec3 frame_dir(const EdgeFrame& f, int dir)
{
    return dir == Tau ? to_vec(f.tau) : (dir == Normal ? to_vec(f.n) : to_vec(f.m));
}

int local_edge(int i, int j)
{
    for (int e = 0; e < 6; ++e) {
        const auto& pq = ReferenceTet::edges[static_cast<std::size_t>(e)];
        if (pq[0] == std::min(i, j) && pq[1] == std::max(i, j)) {
            return e;
        }
    }
    throw std::logic_error("local_edge: not an edge");
}

}  // namespace

Eigen::Matrix<double, 6, 6> second_derivative_transform(const Mat3& B)
{
    Eigen::Matrix<double, 6, 6> H;
    for (int row = 0; row < 6; ++row) {
        const auto [o, r] = second_pair(row);
        for (int col = 0; col < 6; ++col) {
            const auto [p, s] = second_pair(col);
            double v = B(p, o) * B(s, r);
            if (p != s) {
                v += B(s, o) * B(p, r);
            }
            H(row, col) = v;
        }
    }
    return H;
}

TransformBlocks build_blocks(const ElementGeometry& geom)
{
    const Mat3& B = geom.map.B;
    TransformBlocks t;
    t.curl_block = geom.map.detB * geom.map.Binv;
    Eigen::Matrix<double, 9, 9> kw;
    for (int i = 0; i < 3; ++i) {
        for (int r = 0; r < 3; ++r) {
            kw.block<3, 3>(3 * i, 3 * r) = t.curl_block(i, r) * B.transpose();
        }
    }
    t.W = kw.topRows<8>();
    t.H = second_derivative_transform(B);
    int out = 0;
    for (int i = 0; i < 3; ++i) {
        for (int s = 0; s < 6; ++s) {
            if (s == i) {
                continue;
            }
            for (int r = 0; r < 3; ++r) {
                t.V.block<1, 6>(out, 6 * r) = t.curl_block(i, r) * t.H.row(s);
            }
            ++out;
        }
    }
    const auto& ref = reference_geometry();
    const Mat3 covariant = geom.map.detB * geom.map.Binv.transpose();
    for (std::size_t e = 0; e < 6; ++e) {
        const Mat3 F = frame_matrix(geom.edge[e]);
        for (int row = 0; row < 5; ++row) {
            const auto [a, b] = kEdgePairs[static_cast<std::size_t>(row)];
            const Vec3 A = F * (covariant * frame_dir(ref.edge[e], a));
            const Vec3 beta = F * (B * frame_dir(ref.edge[e], b));
            for (int j = 0; j < 3; ++j) {
                for (int i = 0; i < 3; ++i) {
                    t.G[e](row, 3 * j + i) = beta[j] * A[i];
                }
            }
        }
    }
    for (std::size_t f = 0; f < 4; ++f) {
        const auto& pf = geom.face[f];
        const auto& rf = ref.face[f];
        for (int i = 0; i < 2; ++i) {
            const Vec3 mapped = covariant * to_vec(i == 0 ? rf.t1 : rf.t2);
            t.Cf[f](i, 0) = to_vec(pf.t1).dot(mapped);
            t.Cf[f](i, 1) = to_vec(pf.t2).dot(mapped);
            t.Cf[f](i, 2) = to_vec(pf.nu).dot(mapped);
        }
    }
    return t;
}

Eigen::MatrixXd build_D(const TransformBlocks& t)
{
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(kLocalDofs, kStarFunctionals);
    for (int v = 0; v < 4; ++v) {
        D.block<3, 3>(LocalLayout::vertex_curl + 3 * v, StarLayout::vertex_curl + 3 * v) = t.curl_block;
        D.block<8, 9>(LocalLayout::vertex_grad + 8 * v, StarLayout::vertex_grad + 9 * v) = t.W;
        D.block<15, 18>(LocalLayout::vertex_hess + 15 * v, StarLayout::vertex_hess + 18 * v) = t.V;
    }
    for (int e = 0; e < 6; ++e) {
        D.block<3, 3>(LocalLayout::edge_value + 3 * e, StarLayout::edge_value + 3 * e) = t.curl_block;
        for (int node = 0; node < 2; ++node) {
            D.block<5, 9>(LocalLayout::edge_deriv + 10 * e + 5 * node, StarLayout::edge_deriv + 18 * e + 9 * node) =
                t.G[static_cast<std::size_t>(e)];
        }
    }
    for (int f = 0; f < 4; ++f) {
        D.block<2, 3>(LocalLayout::face_curl + 2 * f, StarLayout::face_curl + 3 * f) = t.Cf[static_cast<std::size_t>(f)];
    }
    const int tail = kLocalDofs - LocalLayout::tail;
    D.block(LocalLayout::tail, StarLayout::tail, tail, tail).setIdentity();
    return D;
}

Eigen::MatrixXd build_D(const ElementGeometry& geom)
{
    return build_D(build_blocks(geom));
}

std::array<Rational, 7> hermite_derivative_weights(int node)
{
    auto q = [](long n) { return make_fraction<Rational>(n, 81); };
    if (node == 0) {
        return {q(-248), q(-8), q(256), q(-40), q(1), q(-2), q(0)};
    }
    if (node == 1) {
        return {q(8), q(248), q(-256), q(1), q(-40), q(0), q(2)};
    }
    throw UsageError("hermite_derivative_weights: node must be 0 or 1");
}

Eigen::MatrixXd build_E(const ElementGeometry& geom)
{
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(kStarFunctionals, kLocalDofs);
    for (int i = 0; i < 12; ++i) {
        E(StarLayout::vertex_curl + i, LocalLayout::vertex_curl + i) = 1.0;
    }
    for (int v = 0; v < 4; ++v) {
        for (int c = 0; c < 3; ++c) {
            for (int o = 0; o < 3; ++o) {
                if (c == 2 && o == 2) {
                    E(s_grad(v, 2, 2), l_grad(v, 0, 0)) = -1.0;
                    E(s_grad(v, 2, 2), l_grad(v, 1, 1)) = -1.0;
                } else {
                    E(s_grad(v, c, o), l_grad(v, c, o)) = 1.0;
                }
            }
            for (int s = 0; s < 6; ++s) {
                if (s == c) {
                    for (int r = 0; r < 3; ++r) {
                        if (r != c) {
                            E(s_hess(v, c, s), l_hess(v, r, second_index(c, r))) = -1.0;
                        }
                    }
                } else {
                    E(s_hess(v, c, s), l_hess(v, c, s)) = 1.0;
                }
            }
        }
    }
    for (int i = 0; i < 18; ++i) {
        E(StarLayout::edge_value + i, LocalLayout::edge_value + i) = 1.0;
    }
    for (int e = 0; e < 6; ++e) {
        const auto& pq = ReferenceTet::edges[static_cast<std::size_t>(e)];
        const Vec3 d = geom.x[static_cast<std::size_t>(pq[1])] - geom.x[static_cast<std::size_t>(pq[0])];
        const double len = geom.edge_length[static_cast<std::size_t>(e)];
        const auto& frame = geom.edge[static_cast<std::size_t>(e)];
        for (int node = 0; node < 2; ++node) {
            const int base = StarLayout::edge_deriv + 18 * e + 9 * node;
            for (int p = 0; p < 5; ++p) {
                const auto [a, b] = kEdgePairs[static_cast<std::size_t>(p)];
                E(base + 3 * b + a, LocalLayout::edge_deriv + 10 * e + 5 * node + p) = 1.0;
            }
            const auto w = hermite_derivative_weights(node);
            for (int a = 0; a < 3; ++a) {
                const Vec3 av = frame_dir(frame, a);
                // phi(t) = a . curl u(x_p + t d) restricted to the edge
                std::array<Row, 7> phi;
                for (auto& r : phi) {
                    r = Row::Zero(kLocalDofs);
                }
                for (int end = 0; end < 2; ++end) {
                    const int v = pq[static_cast<std::size_t>(end)];
                    for (int r = 0; r < 3; ++r) {
                        phi[static_cast<std::size_t>(end)] += av[r] * E.row(StarLayout::vertex_curl + 3 * v + r);
                        for (int o = 0; o < 3; ++o) {
                            phi[static_cast<std::size_t>(3 + end)] += av[r] * d[o] * E.row(s_grad(v, r, o));
                            for (int s = 0; s < 3; ++s) {
                                phi[static_cast<std::size_t>(5 + end)] += av[r] * d[o] * d[s] * E.row(s_hess(v, r, second_index(o, s)));
                            }
                        }
                    }
                }
                for (int r = 0; r < 3; ++r) {
                    phi[2] += av[r] * E.row(StarLayout::edge_value + 3 * e + r);
                }
                Row derivative = Row::Zero(kLocalDofs);
                for (std::size_t k = 0; k < 7; ++k) {
                    derivative += to_double(w[k]) * phi[k];
                }
                E.row(base + 3 * Tau + a) = derivative / len;
            }
            E.row(base + 3 * Binormal + Binormal) = -E.row(base + 3 * Tau + Tau) - E.row(base + 3 * Normal + Normal);
        }
    }
    for (int f = 0; f < 4; ++f) {
        E(StarLayout::face_curl + 3 * f, LocalLayout::face_curl + 2 * f) = 1.0;
        E(StarLayout::face_curl + 3 * f + 1, LocalLayout::face_curl + 2 * f + 1) = 1.0;
        // mean normal curl = boundary circulation / area, circulating P0 -> P1 -> P2 -> P0
        const auto& tri = ReferenceTet::faces[static_cast<std::size_t>(f)];
        const std::array<std::pair<int, double>, 3> boundary{{{local_edge(tri[0], tri[1]), 1.0},
                                                              {local_edge(tri[1], tri[2]), 1.0},
                                                              {local_edge(tri[0], tri[2]), -1.0}}};
        for (const auto& [edge, sign] : boundary) {
            E(StarLayout::face_curl + 3 * f + 2, LocalLayout::edge_moment + 7 * edge) =
                sign / geom.face_area[static_cast<std::size_t>(f)];
        }
    }
    const int tail = kLocalDofs - LocalLayout::tail;
    E.block(StarLayout::tail, LocalLayout::tail, tail, tail).setIdentity();
    return E;
}

Eigen::MatrixXd transform_matrix(const ElementGeometry& geom)
{
    return build_D(geom) * build_E(geom);
}

Eigen::MatrixXd pushed_vandermonde(const ElementGeometry& geom, const ReferenceBasis& basis, int quad_degree)
{
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd M(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const PushedPolynomialField field(basis.basis_function(static_cast<std::size_t>(k)), geom.map);
        const auto values = apply_dofs(basis.dofs, geom, field, quad_degree);
        for (Eigen::Index i = 0; i < n; ++i) {
            M(i, k) = values[static_cast<std::size_t>(i)];
        }
    }
    return M;
}

Eigen::MatrixXd direct_transform_matrix(const Eigen::MatrixXd& pushed)
{
    using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const MatL M = pushed.cast<long double>();
    const MatL C = M.fullPivLu().inverse();
    return C.cast<double>();
}

double duality_residual(const Eigen::MatrixXd& pushed, const Eigen::MatrixXd& C)
{
    const Eigen::MatrixXd R = pushed * C - Eigen::MatrixXd::Identity(pushed.rows(), pushed.cols());
    return R.cwiseAbs().maxCoeff();
}

ElementBasis element_basis(const ElementGeometry& geom, const ReferenceBasis& basis, bool check, double tolerance)
{
    ElementBasis eb;
    eb.geom = geom;
    eb.C = transform_matrix(geom);
    if (check) {
        const auto M = pushed_vandermonde(geom, basis);
        eb.residual = duality_residual(M, eb.C);
        if (eb.residual > tolerance) {
            const ConsistencyFailure failure("element_basis: duality residual " + std::to_string(eb.residual) +
                                             " exceeds " + std::to_string(tolerance) + "; using the direct solve");
            std::cerr << "[quadcurl] " << failure.what() << "\n[quadcurl] vertices:";
            for (const auto& x : geom.x) {
                std::cerr << " (" << x.transpose() << ")";
            }
            std::cerr << '\n';
            eb.C = direct_transform_matrix(M);
            eb.residual = duality_residual(M, eb.C);
            eb.used_fallback = true;
        }
    }
    return eb;
}

Eigen::VectorXd reference_coefficients(const ElementBasis& eb, const ReferenceBasis& basis, const Eigen::VectorXd& local)
{
    return basis.coefficients.transpose() * (eb.C * local);
}

}  // namespace quadcurl
