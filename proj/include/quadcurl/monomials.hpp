/**
 * @file monomials.hpp
 * @brief Graded-lexicographic monomial enumeration in one, two, or three variables.
 *
 * Within each total degree the exponents are listed in descending lexicographic
 * order, so in three variables degree 2 reads x^2, xy, xz, y^2, yz, z^2. The
 * ordering is fixed library-wide; every coefficient vector and basis index in
 * the project is expressed against it.
 */
#pragma once

#include <array>
#include <deque>
#include <cstddef>
#include <vector>

namespace quadcurl {

template <int NV>
using Exponent = std::array<int, NV>;

/// Binomial coefficient for the small arguments used in monomial counting.
[[nodiscard]] constexpr long long binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

/// Number of monomials of total degree <= d in NV variables.
template <int NV>
[[nodiscard]] constexpr int monomial_count(int d)
{
    return d < 0 ? 0 : static_cast<int>(binomial(d + NV, NV));
}

/// Number of monomials of total degree exactly d in NV variables.
template <int NV>
[[nodiscard]] constexpr int homogeneous_count(int d)
{
    return d < 0 ? 0 : static_cast<int>(binomial(d + NV - 1, NV - 1));
}

template <int NV>
[[nodiscard]] int monomial_index(const Exponent<NV>& e)
{
    int n = 0;
    for (int v : e) {
        n += v;
    }
    int idx = monomial_count<NV>(n - 1);
    int remaining = n;
    for (int var = 0; var + 1 < NV; ++var) {
        // exponent vectors of the same degree whose leading entry is larger come first
        for (int a = remaining; a > e[var]; --a) {
            const int tail_vars = NV - 1 - var;
            idx += static_cast<int>(binomial(remaining - a + tail_vars - 1, tail_vars - 1));
        }
        remaining -= e[var];
    }
    return idx;
}

/// All exponents of total degree <= max_degree in graded-lex order.
template <int NV>
[[nodiscard]] std::vector<Exponent<NV>> monomials_up_to(int max_degree)
{
    std::vector<Exponent<NV>> out;
    out.reserve(static_cast<std::size_t>(monomial_count<NV>(max_degree)));
    for (int n = 0; n <= max_degree; ++n) {
        if constexpr (NV == 1) {
            out.push_back({n});
        } else if constexpr (NV == 2) {
            for (int a = n; a >= 0; --a) {
                out.push_back({a, n - a});
            }
        } else {
            for (int a = n; a >= 0; --a) {
                for (int b = n - a; b >= 0; --b) {
                    out.push_back({a, b, n - a - b});
                }
            }
        }
    }
    return out;
}

/// Exponents of total degree exactly n, in the same order they take inside monomials_up_to.
template <int NV>
[[nodiscard]] std::vector<Exponent<NV>> homogeneous_monomials(int n)
{
    auto all = monomials_up_to<NV>(n);
    return {all.begin() + monomial_count<NV>(n - 1), all.end()};
}

/// Cached exponent table for a fixed degree bound.
template <int NV>
const std::vector<Exponent<NV>>& monomial_table(int max_degree)
{
    // deque: references handed out earlier stay valid when the cache grows
    static thread_local std::deque<std::vector<Exponent<NV>>> cache;
    while (static_cast<int>(cache.size()) <= max_degree) {
        cache.push_back(monomials_up_to<NV>(static_cast<int>(cache.size())));
    }
    return cache[static_cast<std::size_t>(max_degree)];
}

}  // namespace quadcurl
