/**
 * @file solver.cpp
 * @brief Tabulated assembly, constraint elimination, and the CHOLMOD solve.
 */
#include "quadcurl/solver.hpp"

#include "quadcurl/errors.hpp"

#include <Eigen/CholmodSupport>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace quadcurl {

Eigen::MatrixXd reference_element_matrix(const ReferenceTabulation& tab, const AffineMap& map)
{
    const auto nq = static_cast<Eigen::Index>(tab.num_points());
    const Mat3 BinvT = map.Binv.transpose();
    const Eigen::Matrix<double, 3, 9> cc = curl_curl_map(map);
    const double vol = std::abs(map.detB);
    Eigen::MatrixXd V(3 * nq, kLocalDofs);
    Eigen::MatrixXd W(3 * nq, kLocalDofs);
    for (Eigen::Index q = 0; q < nq; ++q) {
        const double s = std::sqrt(tab.rule.weights[static_cast<std::size_t>(q)] * vol);
        V.middleRows<3>(3 * q).noalias() = s * BinvT * tab.value.middleRows<3>(3 * q);
        W.middleRows<3>(3 * q).noalias() = s * cc * tab.curl_jac.middleRows<9>(9 * q);
    }
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(kLocalDofs, kLocalDofs);
    A.selfadjointView<Eigen::Lower>().rankUpdate(V.transpose());
    A.selfadjointView<Eigen::Lower>().rankUpdate(W.transpose());
    return A.selfadjointView<Eigen::Lower>();
}

Eigen::MatrixXd element_matrix(const Discretization& disc, std::size_t t)
{
    const Eigen::MatrixXd& C = disc.transform(t);
    const Eigen::MatrixXd Aref = reference_element_matrix(disc.tabulation(), disc.geometry(t).map);
    return C.transpose() * Aref * C;
}

Eigen::VectorXd element_load(const Discretization& disc, std::size_t t, const SourceFunction& f)
{
    const auto& tab = disc.tabulation();
    const auto& map = disc.geometry(t).map;
    const auto nq = static_cast<Eigen::Index>(tab.num_points());
    const double vol = std::abs(map.detB);
    Eigen::VectorXd g(3 * nq);
    for (Eigen::Index q = 0; q < nq; ++q) {
        const auto& p = tab.rule.points[static_cast<std::size_t>(q)];
        const Vec3 fx = f(map.forward(Vec3(p[0], p[1], p[2])));
        // (f, B^{-T} N̂) = (B^{-1} f, N̂)
        g.segment<3>(3 * q) = tab.rule.weights[static_cast<std::size_t>(q)] * vol * (map.Binv * fx);
    }
    const Eigen::VectorXd ref = tab.value.transpose() * g;
    return disc.transform(t).transpose() * ref;
}

namespace {

/// Upper-triangular CSC pattern over the given numbering (entries < 0 are dropped).
Eigen::SparseMatrix<double> build_pattern(const Discretization& disc, const std::vector<long>& number, long n)
{
    const auto& gather = disc.dofs().gather;
    std::vector<std::vector<int>> elements_of(static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < gather.size(); ++t) {
        for (long g : gather[t]) {
            const long i = number[static_cast<std::size_t>(g)];
            if (i >= 0 && (elements_of[static_cast<std::size_t>(i)].empty() || elements_of[static_cast<std::size_t>(i)].back() != static_cast<int>(t))) {
                elements_of[static_cast<std::size_t>(i)].push_back(static_cast<int>(t));
            }
        }
    }
    std::vector<int> outer(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> inner;
    std::vector<int> rows;
    for (long j = 0; j < n; ++j) {
        rows.clear();
        for (int t : elements_of[static_cast<std::size_t>(j)]) {
            for (long g : gather[static_cast<std::size_t>(t)]) {
                const long i = number[static_cast<std::size_t>(g)];
                if (i >= 0 && i <= j) {
                    rows.push_back(static_cast<int>(i));
                }
            }
        }
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        inner.insert(inner.end(), rows.begin(), rows.end());
        outer[static_cast<std::size_t>(j) + 1] = static_cast<int>(inner.size());
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.resizeNonZeros(static_cast<Eigen::Index>(inner.size()));
    std::copy(outer.begin(), outer.end(), A.outerIndexPtr());
    std::copy(inner.begin(), inner.end(), A.innerIndexPtr());
    std::fill_n(A.valuePtr(), inner.size(), 0.0);
    return A;
}

void scatter(Eigen::SparseMatrix<double>& A, const std::array<long, kLocalDofs>& g, const std::vector<long>& number,
             const Eigen::MatrixXd& Ak)
{
    int* outer = A.outerIndexPtr();
    int* inner = A.innerIndexPtr();
    double* val = A.valuePtr();
    for (int b = 0; b < kLocalDofs; ++b) {
        const long j = number[static_cast<std::size_t>(g[static_cast<std::size_t>(b)])];
        if (j < 0) {
            continue;
        }
        int* begin = inner + outer[j];
        int* end = inner + outer[j + 1];
        for (int a = 0; a < kLocalDofs; ++a) {
            const long i = number[static_cast<std::size_t>(g[static_cast<std::size_t>(a)])];
            if (i < 0 || i > j) {
                continue;
            }
            int* pos = std::lower_bound(begin, end, static_cast<int>(i));
            val[pos - inner] += Ak(a, b);
        }
    }
}

}  // namespace

SparseSystem assemble(const Discretization& disc, const SourceFunction& f)
{
    const long n = disc.dofs().ndofs;
    std::vector<long> identity(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        identity[static_cast<std::size_t>(i)] = i;
    }
    SparseSystem sys;
    sys.A = build_pattern(disc, identity, n);
    sys.b = Eigen::VectorXd::Zero(n);
    sys.constrained = disc.dofs().boundary_dofs;
    sys.free_to_global = identity;

    std::vector<Eigen::MatrixXd> shape_matrix(disc.num_shapes());
    std::vector<char> have(disc.num_shapes(), 0);
    for (std::size_t t = 0; t < disc.mesh().num_tets(); ++t) {
        const std::size_t s = disc.shape_of(t);
        if (!have[s]) {
            shape_matrix[s] = element_matrix(disc, t);
            have[s] = 1;
        }
        scatter(sys.A, disc.dofs().gather[t], identity, shape_matrix[s]);
        const Eigen::VectorXd bk = element_load(disc, t, f);
        const auto& g = disc.dofs().gather[t];
        for (int a = 0; a < kLocalDofs; ++a) {
            sys.b[g[static_cast<std::size_t>(a)]] += bk[a];
        }
    }
    return sys;
}

SparseSystem apply_boundary_conditions(const SparseSystem& full)
{
    const auto n = static_cast<long>(full.free_to_global.size());
    std::vector<long> local(static_cast<std::size_t>(n), 0);
    for (long c : full.constrained) {
        local[static_cast<std::size_t>(c)] = -1;
    }
    SparseSystem out;
    long m = 0;
    for (long i = 0; i < n; ++i) {
        if (local[static_cast<std::size_t>(i)] == 0) {
            local[static_cast<std::size_t>(i)] = m++;
            out.free_to_global.push_back(full.free_to_global[static_cast<std::size_t>(i)]);
        }
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(full.A.nonZeros()));
    for (int j = 0; j < full.A.outerSize(); ++j) {
        const long lj = local[static_cast<std::size_t>(j)];
        if (lj < 0) {
            continue;
        }
        for (Eigen::SparseMatrix<double>::InnerIterator it(full.A, j); it; ++it) {
            const long li = local[static_cast<std::size_t>(it.row())];
            if (li >= 0) {
                trip.emplace_back(static_cast<int>(li), static_cast<int>(lj), it.value());
            }
        }
    }
    out.A.resize(m, m);
    out.A.setFromTriplets(trip.begin(), trip.end());
    out.b.resize(m);
    for (long i = 0; i < n; ++i) {
        if (local[static_cast<std::size_t>(i)] >= 0) {
            out.b[local[static_cast<std::size_t>(i)]] = full.b[i];
        }
    }
    return out;
}

Eigen::VectorXd symmetric_multiply(const Eigen::SparseMatrix<double>& upper, const Eigen::VectorXd& x)
{
    return upper.selfadjointView<Eigen::Upper>() * x;
}

DiscreteField solve(const SparseSystem& system, const Discretization& disc, double tol, SolveReport* report)
{
    DiscreteField out{&disc, Eigen::VectorXd::Zero(disc.dofs().ndofs)};
    const long m = system.A.rows();
    SolveReport rep;
    rep.unknowns = m;
    const double bnorm = system.b.norm();
    if (m == 0 || bnorm == 0.0) {
        if (report != nullptr) {
            *report = rep;
        }
        return out;
    }
    Eigen::CholmodSupernodalLLT<Eigen::SparseMatrix<double>, Eigen::Upper> llt;
    llt.compute(system.A);
    if (llt.info() != Eigen::Success) {
        throw SolverFailure("solve: Cholesky factorization failed (matrix not positive definite?)");
    }
    Eigen::VectorXd u = llt.solve(system.b);
    Eigen::VectorXd r = system.b - symmetric_multiply(system.A, u);
    rep.relative_residual = r.norm() / bnorm;
    while (rep.relative_residual > tol && rep.refinement_steps < 3) {
        u += llt.solve(r);
        r = system.b - symmetric_multiply(system.A, u);
        rep.relative_residual = r.norm() / bnorm;
        ++rep.refinement_steps;
    }
    if (!std::isfinite(rep.relative_residual) || rep.relative_residual > tol) {
        std::ostringstream msg;
        msg << "solve: relative residual " << rep.relative_residual << " exceeds " << tol << " after "
            << rep.refinement_steps << " refinement steps (" << m << " unknowns)";
        throw SolverFailure(msg.str());
    }
    for (long i = 0; i < m; ++i) {
        out.coeffs[system.free_to_global[static_cast<std::size_t>(i)]] = u[i];
    }
    if (report != nullptr) {
        *report = rep;
    }
    return out;
}

DiscreteField solve_problem(const Discretization& disc, const SourceFunction& f, double tol, SolveReport* report)
{
    return solve(apply_boundary_conditions(assemble(disc, f)), disc, tol, report);
}

SourceFunction unit_source()
{
    return [](const Vec3&) { return Vec3(1.0, 1.0, 1.0); };
}

}  // namespace quadcurl
