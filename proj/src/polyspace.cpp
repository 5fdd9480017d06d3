#include "quadcurl/polyspace.hpp"

#include "quadcurl/errors.hpp"

#include <algorithm>

namespace quadcurl {

namespace {

int common_degree(std::span<const VectorPolynomial<Rational>> family)
{
    int d = 0;
    for (const auto& p : family) {
        d = std::max(d, p.degree_bound());
    }
    return d;
}

RationalMatrix rows_of(std::span<const VectorPolynomial<Rational>> family)
{
    const int d = common_degree(family);
    RationalMatrix m(0, 0);
    for (const auto& p : family) {
        m.append_row(p.flatten(d));
    }
    return m;
}

}  // namespace

std::string to_string(SpaceTag tag)
{
    switch (tag) {
        case SpaceTag::PkVec: return "Pk_vec";
        case SpaceTag::Sk: return "Sk";
        case SpaceTag::Rk: return "Rk";
        case SpaceTag::XCrossPkm1: return "x_cross_Pkm1";
        case SpaceTag::CurlRkp1: return "curl_Rkp1";
        case SpaceTag::XPkm1: return "x_Pkm1";
        case SpaceTag::GradPkp1: return "grad_Pkp1";
    }
    return "?";
}

SpaceBasis vector_monomial_basis(int d)
{
    SpaceBasis b{SpaceTag::PkVec, d, {}};
    for (int c = 0; c < 3; ++c) {
        for (const auto& e : monomials_up_to<3>(d)) {
            b.members.push_back(VectorPolynomial<Rational>::unit_monomial(c, e).with_degree_bound(d));
        }
    }
    return b;
}

SpaceBasis build_Sk(int k)
{
    const auto hom = homogeneous_monomials<3>(k);
    const auto hom_next = homogeneous_monomials<3>(k + 1);
    // columns: (component, homogeneous monomial of degree k); rows: monomials of degree k+1
    RationalMatrix m(hom_next.size(), 3 * hom.size());
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t j = 0; j < hom.size(); ++j) {
            auto e = hom[j];
            e[c] += 1;
            const auto row = static_cast<std::size_t>(monomial_index<3>(e) - monomial_count<3>(k));
            m(row, c * hom.size() + j) = 1;
        }
    }
    SpaceBasis b{SpaceTag::Sk, k, {}};
    for (const auto& v : nullspace(m)) {
        VectorPolynomial<Rational> p(k);
        for (std::size_t c = 0; c < 3; ++c) {
            for (std::size_t j = 0; j < hom.size(); ++j) {
                const auto& coef = v[c * hom.size() + j];
                if (sgn(coef) != 0) {
                    p.comp[c][static_cast<std::size_t>(monomial_index<3>(hom[j]))] = coef;
                }
            }
        }
        b.members.push_back(std::move(p));
    }
    return b;
}

SpaceBasis build_Rk(int k)
{
    if (k < 1) {
        throw UsageError("build_Rk: k must be >= 1");
    }
    SpaceBasis b{SpaceTag::Rk, k, {}};
    for (auto& p : vector_monomial_basis(k - 1).members) {
        b.members.push_back(p.with_degree_bound(k));
    }
    for (auto& p : build_Sk(k).members) {
        b.members.push_back(std::move(p));
    }
    return b;
}

std::size_t exact_rank(std::span<const VectorPolynomial<Rational>> family)
{
    if (family.empty()) {
        return 0;
    }
    return rank(rows_of(family));
}

std::vector<std::size_t> independent_subset(std::span<const VectorPolynomial<Rational>> family)
{
    if (family.empty()) {
        return {};
    }
    const auto ech = reduced_row_echelon(rows_of(family).transpose());
    return ech.pivots;
}

SpaceBasis x_cross_basis(int m)
{
    std::vector<VectorPolynomial<Rational>> candidates;
    for (const auto& p : vector_monomial_basis(m).members) {
        candidates.push_back(position_cross(p));
    }
    SpaceBasis b{SpaceTag::XCrossPkm1, m + 1, {}};
    for (auto i : independent_subset(candidates)) {
        b.members.push_back(candidates[i]);
    }
    return b;
}

DecompositionReport verify_decompositions(int k)
{
    if (k < 1 || k > 7) {
        throw UsageError("verify_decompositions: k must satisfy 1 <= k <= 7");
    }
    DecompositionReport r;
    r.k = k;
    r.dim_Pk_vec = 3 * monomial_count<3>(k);
    r.dim_Pkp1 = monomial_count<3>(k + 1);
    r.dim_Pkm1 = monomial_count<3>(k - 1);

    std::vector<VectorPolynomial<Rational>> grads;
    for (const auto& e : monomials_up_to<3>(k + 1)) {
        if (e[0] + e[1] + e[2] == 0) {
            continue;
        }
        grads.push_back(gradient(Poly3<Rational>::monomial(e)).with_degree_bound(k));
    }
    std::vector<VectorPolynomial<Rational>> crosses;
    for (const auto& p : vector_monomial_basis(k - 1).members) {
        crosses.push_back(position_cross(p).with_degree_bound(k));
    }
    r.dim_grad = static_cast<int>(exact_rank(grads));
    r.dim_x_cross = static_cast<int>(exact_rank(crosses));
    std::vector<VectorPolynomial<Rational>> first = grads;
    first.insert(first.end(), crosses.begin(), crosses.end());
    const int first_rank = static_cast<int>(exact_rank(first));
    r.first_direct = first_rank == r.dim_grad + r.dim_x_cross && first_rank == r.dim_Pk_vec &&
                     r.dim_x_cross == r.dim_Pk_vec - r.dim_Pkp1 + 1;

    std::vector<VectorPolynomial<Rational>> curls;
    for (const auto& p : build_Rk(k + 1).members) {
        curls.push_back(curl(p).with_degree_bound(k));
    }
    std::vector<VectorPolynomial<Rational>> xs;
    for (const auto& e : monomials_up_to<3>(k - 1)) {
        xs.push_back(position_times(Poly3<Rational>::monomial(e)).with_degree_bound(k));
    }
    r.dim_curl_R = static_cast<int>(exact_rank(curls));
    r.dim_x_scalar = static_cast<int>(exact_rank(xs));
    std::vector<VectorPolynomial<Rational>> second = curls;
    second.insert(second.end(), xs.begin(), xs.end());
    const int second_rank = static_cast<int>(exact_rank(second));
    r.second_direct = second_rank == r.dim_curl_R + r.dim_x_scalar && second_rank == r.dim_Pk_vec &&
                      r.dim_curl_R == r.dim_Pk_vec - r.dim_Pkm1;

    if (!r.first_direct) {
        throw RankDeficiency("P_k = grad P_{k+1} + x x P_{k-1} is not direct/spanning for k=" + std::to_string(k));
    }
    if (!r.second_direct) {
        throw RankDeficiency("P_k = curl R_{k+1} + x P_{k-1} is not direct/spanning for k=" + std::to_string(k));
    }
    return r;
}

}  // namespace quadcurl
