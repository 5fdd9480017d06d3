/**
 * @file scalar.hpp
 * @brief The two coefficient fields of the library: exact rationals (verify mode)
 *        and IEEE doubles (solve mode), plus the single conversion point between them.
 */
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace quadcurl {

using Rational = mpq_class;

enum class Precision { VerifyExact, SolveFloat };

[[nodiscard]] inline double to_double(double x) { return x; }
[[nodiscard]] inline double to_double(long double x) { return static_cast<double>(x); }
[[nodiscard]] inline double to_double(const Rational& q) { return q.get_d(); }

[[nodiscard]] inline bool is_zero(double x) { return x == 0.0; }
[[nodiscard]] inline bool is_zero(long double x) { return x == 0.0L; }
[[nodiscard]] inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

[[nodiscard]] inline double magnitude(double x) { return std::abs(x); }
[[nodiscard]] inline double magnitude(const Rational& q) { return std::abs(q.get_d()); }

template <typename T>
[[nodiscard]] T factorial(int n)
{
    T r(1);
    for (int i = 2; i <= n; ++i) {
        r *= T(i);
    }
    return r;
}

template <typename T>
[[nodiscard]] T make_fraction(long num, long den)
{
    if constexpr (std::is_same_v<T, Rational>) {
        Rational q(num, den);
        q.canonicalize();
        return q;
    } else {
        return static_cast<T>(num) / static_cast<T>(den);
    }
}

}  // namespace quadcurl
