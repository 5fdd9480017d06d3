/**
 * @file polyspace.hpp
 * @brief The element polynomial space R_k = P_{k-1}^3 + S_k and the building blocks
 *        used to certify it, all in exact rational arithmetic.
 */
#pragma once

#include "quadcurl/exact_linalg.hpp"
#include "quadcurl/polynomial.hpp"

#include <span>
#include <string>
#include <vector>

namespace quadcurl {

enum class SpaceTag { PkVec, Sk, Rk, XCrossPkm1, CurlRkp1, XPkm1, GradPkp1 };

[[nodiscard]] std::string to_string(SpaceTag tag);

struct SpaceBasis {
    SpaceTag tag = SpaceTag::PkVec;
    int k = 0;
    std::vector<VectorPolynomial<Rational>> members;

    [[nodiscard]] std::size_t size() const { return members.size(); }
};

/// dim R_k = k(k+2)(k+3)/2
[[nodiscard]] constexpr int dim_Rk(int k) { return k * (k + 2) * (k + 3) / 2; }
/// dim S_k = k(k+2)
[[nodiscard]] constexpr int dim_Sk(int k) { return k * (k + 2); }

/// Component-major monomial basis of (P_d)^3.
[[nodiscard]] SpaceBasis vector_monomial_basis(int d);

/// Homogeneous degree-k fields p with x . p = 0, from the exact nullspace of p -> x . p.
[[nodiscard]] SpaceBasis build_Sk(int k);

/// (P_{k-1})^3 followed by S_k.
[[nodiscard]] SpaceBasis build_Rk(int k);

/// Exact rank of a family of vector polynomials.
[[nodiscard]] std::size_t exact_rank(std::span<const VectorPolynomial<Rational>> family);

/// Indices of the first maximal linearly independent subfamily, in order.
[[nodiscard]] std::vector<std::size_t> independent_subset(std::span<const VectorPolynomial<Rational>> family);

/// Basis of x × (P_m)^3 picked greedily from x × (monomial e_c).
[[nodiscard]] SpaceBasis x_cross_basis(int m);

struct DecompositionReport {
    int k = 0;
    int dim_Pk_vec = 0;
    int dim_Pkp1 = 0;
    int dim_Pkm1 = 0;
    int dim_grad = 0;        // rank of grad P_{k+1}
    int dim_x_cross = 0;     // rank of x × P_{k-1}
    int dim_curl_R = 0;      // rank of curl R_{k+1}
    int dim_x_scalar = 0;    // rank of x P_{k-1}
    bool first_direct = false;   // P_k = grad P_{k+1} (+) x × P_{k-1}
    bool second_direct = false;  // P_k = curl R_{k+1} (+) x P_{k-1}
};

/// Exact-rank check of both decompositions of (P_k)^3. Requires 1 <= k <= 7.
[[nodiscard]] DecompositionReport verify_decompositions(int k);

}  // namespace quadcurl
