#include "quadcurl/reference_element.hpp"

#include "quadcurl/errors.hpp"
#include "quadcurl/field.hpp"
#include "quadcurl/functionals.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <memory>
#include <sstream>

namespace quadcurl {

namespace {

template <int NV>
std::vector<Polynomial<Rational, NV>> powers_of(const Polynomial<Rational, NV>& form, int n)
{
    std::vector<Polynomial<Rational, NV>> pw;
    pw.push_back(Polynomial<Rational, NV>::constant(Rational(1)));
    for (int i = 1; i <= n; ++i) {
        pw.push_back(pw.back() * form);
    }
    return pw;
}

/// Restrictions of every scalar monomial of degree <= k to the affine image of the NV-dim parameter domain.
template <int NV>
std::vector<Polynomial<Rational, NV>> monomial_restrictions(const std::array<Polynomial<Rational, NV>, 3>& forms, int k)
{
    std::array<std::vector<Polynomial<Rational, NV>>, 3> pw;
    for (std::size_t i = 0; i < 3; ++i) {
        pw[i] = powers_of(forms[i], k);
    }
    std::vector<Polynomial<Rational, NV>> out;
    for (const auto& e : monomial_table<3>(k)) {
        out.push_back((pw[0][static_cast<std::size_t>(e[0])] * pw[1][static_cast<std::size_t>(e[1])]) *
                      pw[2][static_cast<std::size_t>(e[2])]);
    }
    return out;
}

const Triple<Rational>& frame_dir(const EdgeFrameT<Rational>& f, int dir)
{
    return dir == Tau ? f.tau : (dir == Normal ? f.n : f.m);
}

Triple<Rational> point_on_edge(const Triple<Rational>& p, const Triple<Rational>& q, const Rational& t)
{
    return {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]), p[2] + t * (q[2] - p[2])};
}

double log10_abs(const Rational& q)
{
    long en = 0;
    long ed = 0;
    const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
    return std::log10(std::abs(mn)) - std::log10(md) + static_cast<double>(en - ed) * std::log10(2.0);
}

}  // namespace

ExactReferenceFunctionals::ExactReferenceFunctionals(int k) : k_(k), nmono_(monomial_count<3>(k))
{
    for (int v = 0; v < 4; ++v) {
        vertices_.push_back(ReferenceTet::vertex_exact(v));
    }
    for (const auto& pq : ReferenceTet::edges) {
        const auto& p = vertices_[static_cast<std::size_t>(pq[0])];
        const auto& q = vertices_[static_cast<std::size_t>(pq[1])];
        edge_frames_.push_back(raw_edge_frame(p, q));
        std::array<Poly1<Rational>, 3> forms;
        for (std::size_t i = 0; i < 3; ++i) {
            forms[i] = Poly1<Rational>::affine(p[i], {q[i] - p[i]});
        }
        edge_restrictions_.push_back(monomial_restrictions<1>(forms, k));
    }
    for (const auto& tri : ReferenceTet::faces) {
        const auto& p0 = vertices_[static_cast<std::size_t>(tri[0])];
        const auto& p1 = vertices_[static_cast<std::size_t>(tri[1])];
        const auto& p2 = vertices_[static_cast<std::size_t>(tri[2])];
        face_frames_.push_back(raw_face_frame(p0, p1, p2));
        std::array<Poly2<Rational>, 3> forms;
        for (std::size_t i = 0; i < 3; ++i) {
            forms[i] = Poly2<Rational>::affine(p0[i], {p1[i] - p0[i], p2[i] - p0[i]});
        }
        face_restrictions_.push_back(monomial_restrictions<2>(forms, k));
    }
    const auto& table = monomial_table<3>(k);
    for (int c = 0; c < 3; ++c) {
        for (const auto& e : table) {
            column_curls_.push_back(curl(VectorPolynomial<Rational>::unit_monomial(c, e)));
        }
    }
    if (k >= 7) {
        interior_curl_tests_ = x_cross_basis(k - 7).members;
    }
}

Poly2<Rational> ExactReferenceFunctionals::restrict_to_face(int face, const Poly3<Rational>& p) const
{
    Poly2<Rational> out(p.degree_bound());
    const auto& rest = face_restrictions_[static_cast<std::size_t>(face)];
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!is_zero(p[i])) {
            out += rest[i] * p[i];
        }
    }
    return out;
}

Rational ExactReferenceFunctionals::curl_derivative_at(int column, int comp, const std::array<int, 3>& deriv,
                                                      const Triple<Rational>& x) const
{
    Poly3<Rational> p = column_curls_[static_cast<std::size_t>(column)].comp[static_cast<std::size_t>(comp)];
    for (int v = 0; v < 3; ++v) {
        for (int j = 0; j < deriv[static_cast<std::size_t>(v)]; ++j) {
            p = p.derivative(v);
        }
    }
    return p.evaluate(x);
}

Rational ExactReferenceFunctionals::apply_to_column(const DofDescriptor& d, int column) const
{
    const int c = column / nmono_;
    const auto idx = static_cast<std::size_t>(column % nmono_);
    const auto& table = monomial_table<3>(k_);
    switch (d.kind) {
        case DofKind::VertexCurl:
        case DofKind::VertexCurlGrad:
        case DofKind::VertexCurlHess:
            return curl_derivative_at(column, d.component, d.deriv, vertices_[static_cast<std::size_t>(d.entity)]);
        case DofKind::EdgeCurlValue: {
            const auto& pq = ReferenceTet::edges[static_cast<std::size_t>(d.entity)];
            const auto x = point_on_edge(vertices_[static_cast<std::size_t>(pq[0])], vertices_[static_cast<std::size_t>(pq[1])], d.node_param);
            return curl_derivative_at(column, d.component, {0, 0, 0}, x);
        }
        case DofKind::EdgeCurlDirDeriv_n:
        case DofKind::EdgeCurlDirDeriv_m:
        case DofKind::EdgeCurlDirDeriv_tau: {
            const auto& pq = ReferenceTet::edges[static_cast<std::size_t>(d.entity)];
            const auto x = point_on_edge(vertices_[static_cast<std::size_t>(pq[0])], vertices_[static_cast<std::size_t>(pq[1])], d.node_param);
            const auto& f = edge_frames_[static_cast<std::size_t>(d.entity)];
            const auto& a = frame_dir(f, d.dir_a);
            const auto& b = frame_dir(f, d.dir_b);
            Rational sum = 0;
            for (int i = 0; i < 3; ++i) {
                if (is_zero(a[static_cast<std::size_t>(i)])) {
                    continue;
                }
                for (int j = 0; j < 3; ++j) {
                    if (is_zero(b[static_cast<std::size_t>(j)])) {
                        continue;
                    }
                    std::array<int, 3> der{0, 0, 0};
                    der[static_cast<std::size_t>(j)] = 1;
                    sum += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] * curl_derivative_at(column, i, der, x);
                }
            }
            return sum;
        }
        case DofKind::EdgeTangMoment: {
            const auto& pq = ReferenceTet::edges[static_cast<std::size_t>(d.entity)];
            const Rational dc = vertices_[static_cast<std::size_t>(pq[1])][static_cast<std::size_t>(c)] -
                                vertices_[static_cast<std::size_t>(pq[0])][static_cast<std::size_t>(c)];
            if (is_zero(dc)) {
                return 0;
            }
            const auto& r = edge_restrictions_[static_cast<std::size_t>(d.entity)][idx];
            return dc * (r * shifted_legendre<Rational>(d.test)).integrate_reference_simplex();
        }
        case DofKind::FaceUMoment: {
            const auto& tri = ReferenceTet::faces[static_cast<std::size_t>(d.entity)];
            const auto& p0 = vertices_[static_cast<std::size_t>(tri[0])];
            const auto& p1 = vertices_[static_cast<std::size_t>(tri[1])];
            const auto& p2 = vertices_[static_cast<std::size_t>(tri[2])];
            const auto cc = static_cast<std::size_t>(c);
            const auto g = Poly2<Rational>::affine(Rational(0), {p1[cc] - p0[cc], p2[cc] - p0[cc]});
            const auto test = Poly2<Rational>::monomial(monomial_table<2>(k_)[static_cast<std::size_t>(d.test)]);
            const auto& r = face_restrictions_[static_cast<std::size_t>(d.entity)][idx];
            return Rational(2) * ((r * g) * test).integrate_reference_simplex();
        }
        case DofKind::FaceCurlTangMoment:
        case DofKind::FaceCurlNormMoment: {
            const auto& f = face_frames_[static_cast<std::size_t>(d.entity)];
            const auto& dir = d.kind == DofKind::FaceCurlNormMoment ? f.nu : (d.component == 0 ? f.t1 : f.t2);
            const auto& cu = column_curls_[static_cast<std::size_t>(column)];
            Poly3<Rational> normal_part(cu.degree_bound());
            for (std::size_t i = 0; i < 3; ++i) {
                if (!is_zero(dir[i])) {
                    normal_part += cu.comp[i] * dir[i];
                }
            }
            const auto test = Poly2<Rational>::monomial(monomial_table<2>(k_)[static_cast<std::size_t>(d.test)]);
            return Rational(2) * (restrict_to_face(d.entity, normal_part) * test).integrate_reference_simplex();
        }
        case DofKind::InteriorUMoment: {
            auto e = table[idx];
            e[static_cast<std::size_t>(c)] += 1;
            const auto& t = monomial_table<3>(k_)[static_cast<std::size_t>(d.test)];
            for (std::size_t i = 0; i < 3; ++i) {
                e[i] += t[i];
            }
            return Poly3<Rational>::simplex_monomial_integral(e);
        }
        case DofKind::InteriorCurlMoment: {
            const auto& q = interior_curl_tests_[static_cast<std::size_t>(d.test)];
            const auto& cu = column_curls_[static_cast<std::size_t>(column)];
            Poly3<Rational> dot(0);
            for (std::size_t i = 0; i < 3; ++i) {
                dot += cu.comp[i] * q.comp[i];
            }
            return dot.integrate_reference_simplex();
        }
    }
    throw Error("ExactReferenceFunctionals: unknown functional kind");
}

std::vector<Rational> ExactReferenceFunctionals::row(const DofDescriptor& d) const
{
    std::vector<Rational> r(static_cast<std::size_t>(coefficient_count()));
    for (int col = 0; col < coefficient_count(); ++col) {
        r[static_cast<std::size_t>(col)] = apply_to_column(d, col);
    }
    return r;
}

Rational ExactReferenceFunctionals::apply(const DofDescriptor& d, const VectorPolynomial<Rational>& p) const
{
    const auto coeffs = p.flatten(k_);
    Rational sum = 0;
    for (int col = 0; col < coefficient_count(); ++col) {
        if (!is_zero(coeffs[static_cast<std::size_t>(col)])) {
            sum += coeffs[static_cast<std::size_t>(col)] * apply_to_column(d, col);
        }
    }
    return sum;
}

double ExactReferenceFunctionals::raw_scale(const DofDescriptor& d) const
{
    switch (d.kind) {
        case DofKind::EdgeCurlDirDeriv_n:
        case DofKind::EdgeCurlDirDeriv_m:
        case DofKind::EdgeCurlDirDeriv_tau: {
            const auto& f = edge_frames_[static_cast<std::size_t>(d.entity)];
            return norm3(frame_dir(f, d.dir_a)) * norm3(frame_dir(f, d.dir_b));
        }
        case DofKind::FaceCurlTangMoment: {
            const auto& f = face_frames_[static_cast<std::size_t>(d.entity)];
            return norm3(d.component == 0 ? f.t1 : f.t2);
        }
        case DofKind::FaceCurlNormMoment:
            return norm3(face_frames_[static_cast<std::size_t>(d.entity)].nu);
        default:
            return 1.0;
    }
}

ExactReferenceBasis build_exact_reference_basis(int k)
{
    const auto start = std::chrono::steady_clock::now();
    ExactReferenceBasis out;
    out.k = k;
    out.dofs = enumerate_dofs(k);
    const ExactReferenceFunctionals funcs(k);
    const auto space = build_Rk(k);
    if (space.size() != out.dofs.size()) {
        throw RankDeficiency("build_exact_reference_basis: DOF count differs from dim R_k");
    }
    RationalMatrix L(0, 0);
    for (const auto& d : out.dofs) {
        L.append_row(funcs.row(d));
    }
    RationalMatrix P(0, 0);
    for (const auto& p : space.members) {
        P.append_row(p.flatten(k));
    }
    out.vandermonde = L * P.transpose();
    auto inv = invert(out.vandermonde);
    out.certificate.determinant_nonzero = !is_zero(inv.determinant);
    out.certificate.determinant_sign = sgn(inv.determinant);
    out.certificate.determinant_log10 = log10_abs(inv.determinant);
    out.coefficients = inv.inverse.transpose() * P;
    out.certificate.exact_duality = (out.vandermonde * inv.inverse).is_identity();
    out.certificate.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

VectorPolynomial<double> ReferenceBasis::basis_function(std::size_t j) const
{
    std::vector<double> c(static_cast<std::size_t>(coefficients.cols()));
    for (Eigen::Index i = 0; i < coefficients.cols(); ++i) {
        c[static_cast<std::size_t>(i)] = coefficients(static_cast<Eigen::Index>(j), i);
    }
    return VectorPolynomial<double>::unflatten(c, k);
}

ReferenceBasis to_float_basis(const ExactReferenceBasis& exact)
{
    ReferenceBasis b;
    b.k = exact.k;
    b.dofs = exact.dofs;
    b.certificate = exact.certificate;
    const ExactReferenceFunctionals funcs(exact.k);
    const auto n = static_cast<Eigen::Index>(exact.coefficients.rows());
    const auto m = static_cast<Eigen::Index>(exact.coefficients.cols());
    b.coefficients_ld.resize(n, m);
    for (Eigen::Index j = 0; j < n; ++j) {
        const long double s = funcs.raw_scale(exact.dofs[static_cast<std::size_t>(j)]);
        for (Eigen::Index i = 0; i < m; ++i) {
            const Rational& q = exact.coefficients(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
            // Two doubles carry more than the 64-bit long double mantissa.
            const double hi = q.get_d();
            const double lo = Rational(q - Rational(hi)).get_d();
            b.coefficients_ld(j, i) = s * (static_cast<long double>(hi) + static_cast<long double>(lo));
        }
    }
    b.coefficients = b.coefficients_ld.cast<double>();
    return b;
}

double float_duality_residual(const ReferenceBasis& basis, int quad_degree)
{
    const auto& geom = reference_geometry();
    double worst = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const PolynomialField field(basis.basis_function(j));
        const auto values = apply_dofs(basis.dofs, geom, field, quad_degree);
        for (std::size_t i = 0; i < values.size(); ++i) {
            worst = std::max(worst, std::abs(values[i] - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

namespace {

constexpr const char* kMagic = "quadcurl-reference-basis";
constexpr int kFormatVersion = 2;

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

std::string hex_long_double(long double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%La", x);
    return buf;
}

}  // namespace

void save_reference_basis(const ReferenceBasis& basis, const std::string& path)
{
    std::ostringstream body;
    for (Eigen::Index j = 0; j < basis.coefficients_ld.rows(); ++j) {
        for (Eigen::Index i = 0; i < basis.coefficients_ld.cols(); ++i) {
            body << (i ? " " : "") << hex_long_double(basis.coefficients_ld(j, i));
        }
        body << '\n';
    }
    const std::string data = body.str();
    std::ofstream out(path);
    if (!out) {
        throw ArtifactError("cannot write reference basis to " + path);
    }
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016" PRIx64, fnv1a(data));
    out << kMagic << ' ' << kFormatVersion << '\n'
        << "k " << basis.k << '\n'
        << "ndofs " << basis.coefficients_ld.rows() << '\n'
        << "ncoef " << basis.coefficients_ld.cols() << '\n'
        << "det_nonzero " << (basis.certificate.determinant_nonzero ? 1 : 0) << '\n'
        << "det_sign " << basis.certificate.determinant_sign << '\n'
        << "det_log10 " << hex_double(basis.certificate.determinant_log10) << '\n'
        << "exact_duality " << (basis.certificate.exact_duality ? 1 : 0) << '\n'
        << "build_seconds " << hex_double(basis.certificate.seconds) << '\n'
        << "hash " << hash << '\n'
        << "data\n"
        << data;
    if (!out) {
        throw ArtifactError("failed while writing " + path);
    }
}

ReferenceBasis load_reference_basis(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ArtifactError("reference basis artifact not found: " + path);
    }
    auto expect = [&](const std::string& key) {
        std::string word;
        in >> word;
        if (word != key) {
            throw ArtifactError("reference basis artifact: expected '" + key + "', got '" + word + "'");
        }
    };
    auto read_hex = [&]() {
        std::string w;
        in >> w;
        return std::strtod(w.c_str(), nullptr);
    };
    expect(kMagic);
    int version = 0;
    in >> version;
    if (version != kFormatVersion) {
        throw ArtifactError("reference basis artifact: unsupported version");
    }
    ReferenceBasis b;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    int flag = 0;
    std::string hash;
    expect("k");
    in >> b.k;
    expect("ndofs");
    in >> rows;
    expect("ncoef");
    in >> cols;
    expect("det_nonzero");
    in >> flag;
    b.certificate.determinant_nonzero = flag == 1;
    expect("det_sign");
    in >> b.certificate.determinant_sign;
    expect("det_log10");
    b.certificate.determinant_log10 = read_hex();
    expect("exact_duality");
    in >> flag;
    b.certificate.exact_duality = flag == 1;
    expect("build_seconds");
    b.certificate.seconds = read_hex();
    expect("hash");
    in >> hash;
    expect("data");
    in.get();
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    char computed[32];
    std::snprintf(computed, sizeof computed, "%016" PRIx64, fnv1a(data));
    if (hash != computed) {
        throw ArtifactError("reference basis artifact: content hash mismatch");
    }
    b.dofs = enumerate_dofs(b.k);
    if (rows != static_cast<Eigen::Index>(b.dofs.size()) || cols != 3 * monomial_count<3>(b.k)) {
        throw ArtifactError("reference basis artifact: dimension mismatch");
    }
    b.coefficients_ld.resize(rows, cols);
    std::istringstream body(data);
    for (Eigen::Index j = 0; j < rows; ++j) {
        for (Eigen::Index i = 0; i < cols; ++i) {
            std::string w;
            if (!(body >> w)) {
                throw ArtifactError("reference basis artifact: truncated data");
            }
            b.coefficients_ld(j, i) = std::strtold(w.c_str(), nullptr);
        }
    }
    b.coefficients = b.coefficients_ld.cast<double>();
    return b;
}

std::string default_reference_path()
{
    if (const char* env = std::getenv("QUADCURL_REFERENCE_PATH")) {
        return env;
    }
    return std::string(QUADCURL_DATA_DIR) + "/reference_basis_k7.txt";
}

const ReferenceBasis& reference_basis(bool rebuild)
{
    static std::mutex mutex;
    static std::unique_ptr<ReferenceBasis> cached;
    std::lock_guard lock(mutex);
    if (cached && !rebuild) {
        return *cached;
    }
    const std::string path = default_reference_path();
    if (!rebuild) {
        try {
            cached = std::make_unique<ReferenceBasis>(load_reference_basis(path));
            return *cached;
        } catch (const ArtifactError& e) {
            std::cerr << "[quadcurl] " << e.what() << "; rebuilding the reference basis exactly\n";
        }
    }
    cached = std::make_unique<ReferenceBasis>(to_float_basis(build_exact_reference_basis(7)));
    try {
        save_reference_basis(*cached, path);
    } catch (const ArtifactError& e) {
        std::cerr << "[quadcurl] " << e.what() << '\n';
    }
    return *cached;
}

}  // namespace quadcurl
