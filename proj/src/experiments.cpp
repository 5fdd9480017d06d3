/**
 * @file experiments.cpp
 * @brief Convergence and energy studies, element verification, and conformity checks.
 */
#include "quadcurl/experiments.hpp"

#include "quadcurl/errors.hpp"
#include "quadcurl/polyspace.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace quadcurl {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void note(const ExperimentConfig& c, const std::string& msg)
{
    if (c.log != nullptr) {
        *c.log << msg << std::endl;
    }
}

std::string fmt(const char* f, double v)
{
    if (std::isnan(v)) {
        return "";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string sci(double v) { return fmt("%.10e", v); }
std::string rate(double v) { return fmt("%.4f", v); }

}  // namespace

std::vector<int> default_sizes(const std::string& experiment)
{
    if (experiment == "example1") {
        return {2, 3, 4};
    }
    if (experiment == "example2") {
        return {1, 2, 4};
    }
    if (experiment == "example3") {
        return {2, 4};
    }
    if (experiment == "interp-study") {
        return {1, 2, 3};
    }
    if (experiment == "conformity") {
        return {2};
    }
    return {};
}

void validate(const ExperimentConfig& config)
{
    for (int n : config.sizes) {
        if (n < 1) {
            throw UsageError("mesh sizes must be positive, got " + std::to_string(n));
        }
        if (config.experiment == "example3" && n % 2 != 0) {
            throw UsageError("example3 needs even mesh sizes, got " + std::to_string(n));
        }
    }
    if (config.quad_degree < 1 || config.quad_degree > kMaxQuadratureDegree) {
        throw UsageError("quadrature degree must be in 1.." + std::to_string(kMaxQuadratureDegree));
    }
    if (config.tol <= 0.0) {
        throw UsageError("solver tolerance must be positive");
    }
    if (config.precision != "solve-float" && config.precision != "verify-exact") {
        throw UsageError("precision must be solve-float or verify-exact");
    }
}

double observed_rate(double h_coarse, double e_coarse, double h_fine, double e_fine)
{
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
        return kNoValue;
    }
    return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

std::shared_ptr<sym::SymbolicField> example1_solution()
{
    auto pool = std::make_shared<sym::Pool>();
    const auto u = sym::example1_field(*pool);
    return std::make_shared<sym::SymbolicField>(pool, u);
}

namespace {

void fill_error_rates(std::vector<ErrorRow>& rows)
{
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const auto& a = rows[i];
        const auto& b = rows[i + 1];
        rows[i].rate_l2 = observed_rate(a.h, a.err.l2, b.h, b.err.l2);
        rows[i].rate_curl = observed_rate(a.h, a.err.curl, b.h, b.err.curl);
        rows[i].rate_curl2 = observed_rate(a.h, a.err.curl2, b.h, b.err.curl2);
    }
}

}  // namespace

std::vector<ErrorRow> run_example1(const ExperimentConfig& config)
{
    const auto u = example1_solution();
    const SourceFunction f = sym::manufactured_rhs(u);
    std::vector<ErrorRow> rows;
    for (int n : config.sizes) {
        const auto t0 = std::chrono::steady_clock::now();
        Discretization disc(cube_mesh(n), config.bc, config.quad_degree);
        SolveReport rep;
        const DiscreteField uh = solve_problem(disc, f, config.tol, &rep);
        ErrorRow row;
        row.h = 1.0 / n;
        row.err = error_norms(uh, *u);
        row.unknowns = rep.unknowns;
        row.seconds = seconds_since(t0);
        rows.push_back(row);
        note(config, "example1 N=" + std::to_string(n) + ": " + std::to_string(rep.unknowns) + " unknowns, residual " +
                         sci(rep.relative_residual) + ", " + fmt("%.1f", row.seconds) + " s");
    }
    fill_error_rates(rows);
    return rows;
}

std::vector<ErrorRow> run_interp_study(const ExperimentConfig& config)
{
    const auto u = example1_solution();
    std::vector<ErrorRow> rows;
    for (int n : config.sizes) {
        const auto t0 = std::chrono::steady_clock::now();
        Discretization disc(cube_mesh(n), config.bc, config.quad_degree);
        const DiscreteField ih = interpolate(*u, disc);
        ErrorRow row;
        row.h = 1.0 / n;
        row.err = error_norms(ih, *u);
        row.unknowns = disc.dofs().ndofs;
        row.seconds = seconds_since(t0);
        rows.push_back(row);
        note(config, "interp-study N=" + std::to_string(n) + ": " + fmt("%.1f", row.seconds) + " s");
    }
    fill_error_rates(rows);
    return rows;
}

EnergyStudy run_energy_study(const ExperimentConfig& config, bool lshape)
{
    EnergyStudy study;
    for (int n : config.sizes) {
        const auto t0 = std::chrono::steady_clock::now();
        study.discretizations.push_back(
            std::make_unique<Discretization>(lshape ? lshape_mesh(n) : cube_mesh(n), config.bc, config.quad_degree));
        SolveReport rep;
        study.solutions.push_back(solve_problem(*study.discretizations.back(), unit_source(), config.tol, &rep));
        EnergyRow row;
        row.h = 1.0 / n;
        row.norms = field_norms(study.solutions.back());
        row.unknowns = rep.unknowns;
        row.seconds = seconds_since(t0);
        study.rows.push_back(row);
        note(config, std::string(lshape ? "example3" : "example2") + " N=" + std::to_string(n) + ": " +
                         std::to_string(rep.unknowns) + " unknowns, residual " + sci(rep.relative_residual) + ", " +
                         fmt("%.1f", row.seconds) + " s");
    }
    auto& rows = study.rows;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (energy_squared(rows[i + 1].norms) < energy_squared(rows[i].norms)) {
            study.monotone = false;
        }
        try {
            rows[i].energy_err = energy_norm_difference(rows[i].norms, rows[i + 1].norms);
        } catch (const NegativeDifference& e) {
            study.negative_note += std::string(e.what()) + "; ";
        }
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        rows[i].rate = observed_rate(rows[i].h, rows[i].energy_err, rows[i + 1].h, rows[i + 1].energy_err);
    }
    return study;
}

void write_error_csv(const std::vector<ErrorRow>& rows, std::ostream& out)
{
    out << "h,err_l2,rate_l2,err_curl,rate_curl,err_curl2,rate_curl2\n";
    for (const auto& r : rows) {
        out << sci(r.h) << ',' << sci(r.err.l2) << ',' << rate(r.rate_l2) << ',' << sci(r.err.curl) << ','
            << rate(r.rate_curl) << ',' << sci(r.err.curl2) << ',' << rate(r.rate_curl2) << '\n';
    }
}

void write_energy_csv(const std::vector<EnergyRow>& rows, std::ostream& out)
{
    out << "h,norm_l2,norm_curl,norm_curl2,energy_err,rate\n";
    for (const auto& r : rows) {
        out << sci(r.h) << ',' << sci(r.norms.l2) << ',' << sci(r.norms.curl) << ',' << sci(r.norms.curl2) << ','
            << sci(r.energy_err) << ',' << rate(r.rate) << '\n';
    }
}

void print_error_table(const std::vector<ErrorRow>& rows, std::ostream& out)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-8s %-17s %-8s %-17s %-8s %-17s %-8s\n", "h", "|u-uh|", "rate", "|curl(u-uh)|",
                  "rate", "|curl2(u-uh)|", "rate");
    out << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "1/%-6d %-17s %-8s %-17s %-8s %-17s %-8s\n", static_cast<int>(std::lround(1.0 / r.h)),
                      sci(r.err.l2).c_str(), rate(r.rate_l2).c_str(), sci(r.err.curl).c_str(), rate(r.rate_curl).c_str(),
                      sci(r.err.curl2).c_str(), rate(r.rate_curl2).c_str());
        out << buf;
    }
}

void print_energy_table(const std::vector<EnergyRow>& rows, std::ostream& out)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-8s %-17s %-17s %-17s %-17s %-8s\n", "h", "|uh|", "|curl uh|", "|curl2 uh|",
                  "|||u-uh|||", "rate");
    out << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "1/%-6d %-17s %-17s %-17s %-17s %-8s\n", static_cast<int>(std::lround(1.0 / r.h)),
                      sci(r.norms.l2).c_str(), sci(r.norms.curl).c_str(), sci(r.norms.curl2).c_str(),
                      sci(r.energy_err).c_str(), rate(r.rate).c_str());
        out << buf;
    }
}

namespace {

/// Physical values and curls of the 315 local basis functions at physical points of element t.
struct LocalSamples {
    Eigen::MatrixXd value;  // 3 np x 315
    Eigen::MatrixXd curl;   // 3 np x 315
};

LocalSamples sample_local_basis(const Discretization& disc, std::size_t t, const std::vector<Vec3>& x)
{
    const auto& map = disc.geometry(t).map;
    std::vector<std::array<double, 3>> ref;
    ref.reserve(x.size());
    for (const auto& p : x) {
        ref.push_back(to_triple(map.inverse(p)));
    }
    const PointTabulation tab = tabulate_points(disc.basis(), ref, false);
    const Eigen::MatrixXd& C = disc.transform(t);
    const Mat3 BinvT = map.Binv.transpose();
    const Mat3 M = map.B / map.detB;
    LocalSamples s;
    s.value = tab.value * C;
    s.curl = tab.curl * C;
    for (std::size_t q = 0; q < x.size(); ++q) {
        const auto r = static_cast<Eigen::Index>(3 * q);
        s.value.middleRows<3>(r) = BinvT * s.value.middleRows<3>(r);
        s.curl.middleRows<3>(r) = M * s.curl.middleRows<3>(r);
    }
    return s;
}

/// Max over volume quadrature points of |N_j| and |curl N_j|, per local function, per shape.
std::vector<Eigen::VectorXd> shape_scales(const Discretization& disc)
{
    std::vector<Eigen::VectorXd> scales(disc.num_shapes());
    std::vector<char> have(disc.num_shapes(), 0);
    const auto& tab = disc.tabulation();
    for (std::size_t t = 0; t < disc.mesh().num_tets(); ++t) {
        const std::size_t s = disc.shape_of(t);
        if (have[s]) {
            continue;
        }
        have[s] = 1;
        const auto& map = disc.geometry(t).map;
        const Mat3 BinvT = map.Binv.transpose();
        const Mat3 M = map.B / map.detB;
        const Eigen::MatrixXd V = tab.value * disc.transform(t);
        const Eigen::MatrixXd Cu = tab.curl * disc.transform(t);
        Eigen::VectorXd m = Eigen::VectorXd::Zero(kLocalDofs);
        for (std::size_t q = 0; q < tab.num_points(); ++q) {
            const auto r = static_cast<Eigen::Index>(3 * q);
            const Eigen::MatrixXd v = BinvT * V.middleRows<3>(r);
            const Eigen::MatrixXd c = M * Cu.middleRows<3>(r);
            m = m.cwiseMax(v.colwise().norm().transpose()).cwiseMax(c.colwise().norm().transpose());
        }
        scales[s] = m;
    }
    return scales;
}

std::vector<Vec3> face_points(const MeshComplex& mesh, std::size_t f, int degree)
{
    const auto& rule = rule_for(2, degree);
    const auto& fv = mesh.faces[f];
    const Vec3& p0 = mesh.vertices[static_cast<std::size_t>(fv[0])];
    const Vec3& p1 = mesh.vertices[static_cast<std::size_t>(fv[1])];
    const Vec3& p2 = mesh.vertices[static_cast<std::size_t>(fv[2])];
    std::vector<Vec3> x;
    for (const auto& p : rule.points) {
        x.push_back(p0 + p[0] * (p1 - p0) + p[1] * (p2 - p0));
    }
    return x;
}

Vec3 face_normal(const MeshComplex& mesh, std::size_t f)
{
    const auto& fv = mesh.faces[f];
    const Vec3& p0 = mesh.vertices[static_cast<std::size_t>(fv[0])];
    return (mesh.vertices[static_cast<std::size_t>(fv[1])] - p0).cross(mesh.vertices[static_cast<std::size_t>(fv[2])] - p0).normalized();
}

ConformityReport jumps_impl(const Discretization& disc, const Eigen::VectorXd* coeffs)
{
    const MeshComplex& mesh = disc.mesh();
    ConformityReport rep;
    std::vector<Eigen::VectorXd> scales;
    double field_scale = 0.0;
    if (coeffs == nullptr) {
        scales = shape_scales(disc);
    } else {
        const auto& tab = disc.tabulation();
        for (std::size_t t = 0; t < mesh.num_tets(); ++t) {
            const auto& map = disc.geometry(t).map;
            const Eigen::VectorXd ref = disc.transform(t) * disc.gather(t, *coeffs);
            const Eigen::VectorXd v = tab.value * ref;
            const Eigen::VectorXd c = tab.curl * ref;
            for (std::size_t q = 0; q < tab.num_points(); ++q) {
                const auto r = static_cast<Eigen::Index>(3 * q);
                field_scale = std::max(field_scale, (map.Binv.transpose() * v.segment<3>(r)).norm());
                field_scale = std::max(field_scale, (map.B / map.detB * c.segment<3>(r)).norm());
            }
        }
        rep.functions = 1;
    }
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& ft = mesh.face_tets[f];
        if (ft[1] < 0) {
            continue;
        }
        ++rep.faces;
        const auto t1 = static_cast<std::size_t>(ft[0]);
        const auto t2 = static_cast<std::size_t>(ft[1]);
        const std::vector<Vec3> x = face_points(mesh, f, disc.quad_degree());
        const Vec3 nu = face_normal(mesh, f);
        const LocalSamples s1 = sample_local_basis(disc, t1, x);
        const LocalSamples s2 = sample_local_basis(disc, t2, x);
        const auto np = static_cast<Eigen::Index>(x.size());
        if (coeffs != nullptr) {
            const Eigen::VectorXd l1 = disc.gather(t1, *coeffs);
            const Eigen::VectorXd l2 = disc.gather(t2, *coeffs);
            const Eigen::VectorXd dv = s1.value * l1 - s2.value * l2;
            const Eigen::VectorXd dc = s1.curl * l1 - s2.curl * l2;
            for (Eigen::Index q = 0; q < np; ++q) {
                rep.max_tangential_jump = std::max(rep.max_tangential_jump, nu.cross(Vec3(dv.segment<3>(3 * q))).norm() / field_scale);
                rep.max_curl_jump = std::max(rep.max_curl_jump, dc.segment<3>(3 * q).norm() / field_scale);
            }
            continue;
        }
        // Every global function supported on either side: its restriction is a local basis
        // function there, or zero.
        std::map<long, std::pair<int, int>> funcs;
        for (int a = 0; a < kLocalDofs; ++a) {
            funcs[disc.dofs().gather[t1][static_cast<std::size_t>(a)]].first = a + 1;
            funcs[disc.dofs().gather[t2][static_cast<std::size_t>(a)]].second = a + 1;
        }
        const auto& sc1 = scales[disc.shape_of(t1)];
        const auto& sc2 = scales[disc.shape_of(t2)];
        for (const auto& [g, ab] : funcs) {
            const int a = ab.first - 1;
            const int b = ab.second - 1;
            double scale = 0.0;
            if (a >= 0) {
                scale = std::max(scale, sc1[a]);
            }
            if (b >= 0) {
                scale = std::max(scale, sc2[b]);
            }
            for (Eigen::Index q = 0; q < np; ++q) {
                Vec3 dv = Vec3::Zero();
                Vec3 dc = Vec3::Zero();
                if (a >= 0) {
                    dv += s1.value.block<3, 1>(3 * q, a);
                    dc += s1.curl.block<3, 1>(3 * q, a);
                }
                if (b >= 0) {
                    dv -= s2.value.block<3, 1>(3 * q, b);
                    dc -= s2.curl.block<3, 1>(3 * q, b);
                }
                rep.max_tangential_jump = std::max(rep.max_tangential_jump, nu.cross(dv).norm() / scale);
                rep.max_curl_jump = std::max(rep.max_curl_jump, dc.norm() / scale);
            }
        }
        rep.functions += funcs.size();
    }
    return rep;
}

}  // namespace

ConformityReport conformity_jumps(const Discretization& disc) { return jumps_impl(disc, nullptr); }

ConformityReport field_jumps(const DiscreteField& fh) { return jumps_impl(*fh.disc, &fh.coeffs); }

TraceReport boundary_traces(const DiscreteField& fh)
{
    const Discretization& disc = *fh.disc;
    const MeshComplex& mesh = disc.mesh();
    const auto& tab = disc.tabulation();
    double scale = 0.0;
    for (std::size_t t = 0; t < mesh.num_tets(); ++t) {
        const auto& map = disc.geometry(t).map;
        const Eigen::VectorXd ref = disc.transform(t) * disc.gather(t, fh.coeffs);
        const Eigen::VectorXd v = tab.value * ref;
        const Eigen::VectorXd c = tab.curl * ref;
        for (std::size_t q = 0; q < tab.num_points(); ++q) {
            const auto r = static_cast<Eigen::Index>(3 * q);
            scale = std::max(scale, (map.Binv.transpose() * v.segment<3>(r)).norm());
            scale = std::max(scale, (map.B / map.detB * c.segment<3>(r)).norm());
        }
    }
    TraceReport rep;
    if (scale == 0.0) {
        return rep;
    }
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        if (!mesh.boundary_face[f]) {
            continue;
        }
        const auto t = static_cast<std::size_t>(mesh.face_tets[f][0]);
        const std::vector<Vec3> x = face_points(mesh, f, disc.quad_degree());
        const Vec3 nu = face_normal(mesh, f);
        const LocalSamples s = sample_local_basis(disc, t, x);
        const Eigen::VectorXd local = disc.gather(t, fh.coeffs);
        const Eigen::VectorXd v = s.value * local;
        const Eigen::VectorXd c = s.curl * local;
        for (std::size_t q = 0; q < x.size(); ++q) {
            const auto r = static_cast<Eigen::Index>(3 * q);
            rep.tangential = std::max(rep.tangential, nu.cross(Vec3(v.segment<3>(r))).norm() / scale);
            rep.curl = std::max(rep.curl, c.segment<3>(r).norm() / scale);
        }
    }
    return rep;
}

double nestedness_defect(const DiscreteField& coarse, const Discretization& fine)
{
    const Discretization& cd = *coarse.disc;
    const MeshComplex& cm = cd.mesh();
    const MeshComplex& fm = fine.mesh();
    auto locate = [&](const Vec3& x) {
        for (std::size_t t = 0; t < cm.num_tets(); ++t) {
            const Vec3 xh = cd.geometry(t).map.inverse(x);
            if (xh.minCoeff() > -1e-10 && xh.sum() < 1.0 + 1e-10) {
                return t;
            }
        }
        throw std::logic_error("nestedness_defect: point outside the coarse mesh");
    };
    std::vector<std::size_t> parent(fm.num_tets());
    std::vector<char> written(static_cast<std::size_t>(fine.dofs().ndofs), 0);
    DiscreteField injected{&fine, Eigen::VectorXd::Zero(fine.dofs().ndofs)};
    for (std::size_t t = 0; t < fm.num_tets(); ++t) {
        Vec3 centroid = Vec3::Zero();
        for (const auto& v : fine.geometry(t).x) {
            centroid += v / 4.0;
        }
        parent[t] = locate(centroid);
        const PushedPolynomialField piece = coarse.element_field(parent[t]);
        const Eigen::VectorXd local = local_dofs(piece, fine, t);
        const auto& g = fine.dofs().gather[t];
        for (int i = 0; i < kLocalDofs; ++i) {
            const auto gi = static_cast<std::size_t>(g[static_cast<std::size_t>(i)]);
            if (!written[gi]) {
                injected.coeffs[static_cast<Eigen::Index>(gi)] = local[i];
                written[gi] = 1;
            }
        }
    }
    const auto& tab = fine.tabulation();
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t t = 0; t < fm.num_tets(); ++t) {
        const auto& map = fine.geometry(t).map;
        const PushedPolynomialField piece = coarse.element_field(parent[t]);
        const Eigen::VectorXd v = tab.value * (fine.transform(t) * fine.gather(t, injected.coeffs));
        for (std::size_t q = 0; q < tab.num_points(); ++q) {
            const auto& p = tab.rule.points[q];
            const Vec3 x = map.forward(Vec3(p[0], p[1], p[2]));
            const Vec3 uc = piece.value(x);
            const Vec3 uf = map.Binv.transpose() * v.segment<3>(static_cast<Eigen::Index>(3 * q));
            diff = std::max(diff, (uc - uf).norm());
            scale = std::max(scale, uc.norm());
        }
    }
    return scale > 0.0 ? diff / scale : diff;
}

std::vector<CheckResult> run_verification(const VerificationOptions& options)
{
    std::vector<CheckResult> out;
    auto add = [&out](std::string name, bool pass, std::string detail) {
        out.push_back({std::move(name), pass, std::move(detail)});
    };
    std::ostringstream d;

    // Unisolvence in exact arithmetic.
    UnisolvenceCertificate cert;
    if (options.rebuild_exact) {
        cert = build_exact_reference_basis(7).certificate;
    } else {
        cert = reference_basis().certificate;
    }
    d << "det " << (cert.determinant_sign < 0 ? "-" : "+") << "10^" << fmt("%.3f", cert.determinant_log10)
      << ", exact duality " << (cert.exact_duality ? "yes" : "no") << ", " << fmt("%.1f", cert.seconds) << " s";
    add("exact-unisolvence", cert.determinant_nonzero && cert.exact_duality, d.str());

    const ReferenceBasis& basis = reference_basis();
    const double fres = float_duality_residual(basis);
    add("float-duality", fres <= 1e-8, "max |L_i(N_j) - delta_ij| = " + sci(fres));

    // DOF counts.
    {
        const auto c = count_by_entity(enumerate_dofs(7));
        bool ok = c.vertex == 104 && c.edge == 120 && c.face == 68 && c.interior == 23 && c.total() == dim_Rk(7);
        std::ostringstream s;
        s << c.vertex << "/" << c.edge << "/" << c.face << "/" << c.interior << " = " << c.total();
        for (int k = 7; k <= 10; ++k) {
            const auto f = dof_counts_formula(k);
            const auto e = count_by_entity(enumerate_dofs(k));
            const bool match = f.total() == dim_Rk(k) && f.vertex == e.vertex && f.edge == e.edge && f.face == e.face &&
                               f.interior == e.interior;
            ok = ok && match;
            s << "; k=" << k << " " << f.total() << (match ? "" : " MISMATCH");
        }
        add("dof-counts", ok, s.str());
    }

    // Space decompositions.
    {
        bool ok = true;
        std::ostringstream s;
        for (int k = 1; k <= 4; ++k) {
            const auto r = verify_decompositions(k);
            ok = ok && r.first_direct && r.second_direct;
            s << "k=" << k << (r.first_direct && r.second_direct ? " ok " : " FAIL ");
        }
        const bool rk = static_cast<int>(build_Rk(7).size()) == dim_Rk(7);
        ok = ok && rk;
        s << "dim R_7 " << build_Rk(7).size();
        add("space-decompositions", ok, s.str());
    }

    // Derivative reconstruction at the edge third points.
    {
        bool ok = true;
        for (int node = 0; node < 2; ++node) {
            const auto w = hermite_derivative_weights(node);
            const Rational s = node == 0 ? Rational(1, 3) : Rational(2, 3);
            for (int p = 0; p <= 6; ++p) {
                auto val = [p](const Rational& t) {
                    Rational r(1);
                    for (int i = 0; i < p; ++i) {
                        r *= t;
                    }
                    return r;
                };
                auto der = [p](const Rational& t, int order) {
                    if (order > p) {
                        return Rational(0);
                    }
                    Rational c(1);
                    for (int i = 0; i < order; ++i) {
                        c *= p - i;
                    }
                    Rational r(1);
                    for (int i = 0; i < p - order; ++i) {
                        r *= t;
                    }
                    return Rational(c * r);
                };
                const std::array<Rational, 7> data{val(0), val(1), val(Rational(1, 2)), der(0, 1), der(1, 1), der(0, 2), der(1, 2)};
                Rational lhs(0);
                for (std::size_t i = 0; i < 7; ++i) {
                    lhs += w[i] * data[i];
                }
                ok = ok && lhs == der(s, 1);
            }
        }
        add("derivative-reconstruction", ok, "phi'(1/3), phi'(2/3) exact on t^0..t^6");
    }

    // Transform on the reference element.
    {
        const Eigen::MatrixXd C = transform_matrix(reference_geometry());
        const double e = (C - Eigen::MatrixXd::Identity(kLocalDofs, kLocalDofs)).cwiseAbs().maxCoeff();
        add("transform-reference", e <= 1e-12, "max |C - I| = " + sci(e));
    }

    // C = D E against the direct solve on random elements.
    {
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double worst = 0.0;
        double worst_diff = 0.0;
        int done = 0;
        int negative = 0;
        while (done < options.random_tets) {
            std::array<Vec3, 4> x;
            for (auto& v : x) {
                v = Vec3(U(rng), U(rng), U(rng));
            }
            const double det = (x[1] - x[0]).cross(x[2] - x[0]).dot(x[3] - x[0]);
            if (std::abs(det) < 0.05) {
                continue;
            }
            negative += det < 0.0 ? 1 : 0;
            const ElementGeometry g = make_element_geometry(x);
            Eigen::MatrixXd E = build_E(g);
            if (options.perturb_e_row) {
                E.row(StarLayout::edge_deriv + 3) *= 1.01;
            }
            const Eigen::MatrixXd C = build_D(g) * E;
            const Eigen::MatrixXd M = pushed_vandermonde(g, basis);
            worst = std::max(worst, duality_residual(M, C));
            const Eigen::MatrixXd Cd = direct_transform_matrix(M);
            worst_diff = std::max(worst_diff, (C - Cd).cwiseAbs().maxCoeff() / std::max(1.0, Cd.cwiseAbs().maxCoeff()));
            ++done;
        }
        add("transform-oracle", worst <= 1e-7,
            std::to_string(done) + " random elements (" + std::to_string(negative) + " with det B < 0), max residual " +
                sci(worst) + ", max rel |C - C_direct| " + sci(worst_diff));
    }

    // Two-element conformity.
    {
        Discretization disc(two_element_mesh());
        const ConformityReport r = conformity_jumps(disc);
        add("two-element-conformity", r.max_tangential_jump <= 1e-7 && r.max_curl_jump <= 1e-7,
            std::to_string(r.functions) + " function-face pairs, max jump u x nu " + sci(r.max_tangential_jump) +
                ", curl u " + sci(r.max_curl_jump));
    }
    return out;
}

std::vector<CheckResult> run_conformity(const ExperimentConfig& config)
{
    std::vector<CheckResult> out;
    auto check = [&out](const std::string& name, const Discretization& disc) {
        const ConformityReport r = conformity_jumps(disc);
        out.push_back({name, r.max_tangential_jump <= 1e-7 && r.max_curl_jump <= 1e-7,
                       std::to_string(r.faces) + " interior faces, " + std::to_string(r.functions) +
                           " function-face pairs, max jump u x nu " + sci(r.max_tangential_jump) + ", curl u " +
                           sci(r.max_curl_jump)});
    };
    check("two-element", Discretization(two_element_mesh(), config.bc, config.quad_degree));
    for (int n : config.sizes) {
        check("cube_mesh(" + std::to_string(n) + ")", Discretization(cube_mesh(n), config.bc, config.quad_degree));
    }
    return out;
}

void print_checks(const std::vector<CheckResult>& checks, std::ostream& out)
{
    for (const auto& c : checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
}

}  // namespace quadcurl
