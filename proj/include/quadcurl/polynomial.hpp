/**
 * @file polynomial.hpp
 * @brief Dense multivariate polynomials over a scalar field, and 3-component vector polynomials.
 *
 * Coefficients are stored densely against the graded-lex table of monomials of
 * degree <= degree_bound(). The same template serves the exact rational path and
 * the double path; nothing in here mixes the two.
 */
#pragma once

#include "quadcurl/monomials.hpp"
#include "quadcurl/scalar.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <span>
#include <stdexcept>
#include <vector>

namespace quadcurl {

template <typename T, int NV>
class Polynomial {
public:
    Polynomial() : Polynomial(0) {}

    explicit Polynomial(int degree_bound)
        : degree_(std::max(degree_bound, 0)),
          coeffs_(static_cast<std::size_t>(monomial_count<NV>(degree_)), T(0))
    {
    }

    [[nodiscard]] static Polynomial constant(const T& c)
    {
        Polynomial p(0);
        p.coeffs_[0] = c;
        return p;
    }

    [[nodiscard]] static Polynomial variable(int var)
    {
        Exponent<NV> e{};
        e[static_cast<std::size_t>(var)] = 1;
        return monomial(e);
    }

    [[nodiscard]] static Polynomial monomial(const Exponent<NV>& e, const T& c = T(1))
    {
        int n = 0;
        for (int v : e) {
            n += v;
        }
        Polynomial p(n);
        p.coeffs_[static_cast<std::size_t>(monomial_index<NV>(e))] = c;
        return p;
    }

    /// Affine form c0 + sum_i c[i+1] x_i.
    [[nodiscard]] static Polynomial affine(const T& c0, const std::array<T, NV>& c)
    {
        Polynomial p(1);
        p.coeffs_[0] = c0;
        for (int i = 0; i < NV; ++i) {
            Exponent<NV> e{};
            e[static_cast<std::size_t>(i)] = 1;
            p.coeffs_[static_cast<std::size_t>(monomial_index<NV>(e))] = c[static_cast<std::size_t>(i)];
        }
        return p;
    }

    [[nodiscard]] int degree_bound() const { return degree_; }
    [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
    [[nodiscard]] std::span<const T> coefficients() const { return coeffs_; }
    [[nodiscard]] std::span<T> coefficients() { return coeffs_; }
    [[nodiscard]] const T& operator[](std::size_t i) const { return coeffs_[i]; }
    [[nodiscard]] T& operator[](std::size_t i) { return coeffs_[i]; }

    [[nodiscard]] T coeff(const Exponent<NV>& e) const
    {
        const auto idx = static_cast<std::size_t>(monomial_index<NV>(e));
        return idx < coeffs_.size() ? coeffs_[idx] : T(0);
    }

    /// Actual degree; -1 for the zero polynomial.
    [[nodiscard]] int degree() const
    {
        const auto& table = monomial_table<NV>(degree_);
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            if (!is_zero(coeffs_[i])) {
                int n = 0;
                for (int v : table[i]) {
                    n += v;
                }
                return n;
            }
        }
        return -1;
    }

    [[nodiscard]] bool is_zero_polynomial() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return is_zero(c); });
    }

    /// Re-expressed with a different degree bound; dropping a nonzero coefficient is a logic error.
    [[nodiscard]] Polynomial with_degree_bound(int d) const
    {
        Polynomial out(d);
        const std::size_t n = std::min(out.coeffs_.size(), coeffs_.size());
        std::copy_n(coeffs_.begin(), n, out.coeffs_.begin());
        for (std::size_t i = n; i < coeffs_.size(); ++i) {
            if (!is_zero(coeffs_[i])) {
                throw std::logic_error("Polynomial::with_degree_bound would truncate a nonzero term");
            }
        }
        return out;
    }

    [[nodiscard]] T evaluate(const std::array<T, NV>& x) const
    {
        std::array<std::vector<T>, NV> powers;
        for (int v = 0; v < NV; ++v) {
            auto& pw = powers[static_cast<std::size_t>(v)];
            pw.resize(static_cast<std::size_t>(degree_) + 1);
            pw[0] = T(1);
            for (int k = 1; k <= degree_; ++k) {
                pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k) - 1] * x[static_cast<std::size_t>(v)];
            }
        }
        const auto& table = monomial_table<NV>(degree_);
        T sum(0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (is_zero(coeffs_[i])) {
                continue;
            }
            T term = coeffs_[i];
            for (int v = 0; v < NV; ++v) {
                term *= powers[static_cast<std::size_t>(v)][static_cast<std::size_t>(table[i][static_cast<std::size_t>(v)])];
            }
            sum += term;
        }
        return sum;
    }

    [[nodiscard]] Polynomial derivative(int var) const
    {
        Polynomial out(std::max(degree_ - 1, 0));
        const auto& table = monomial_table<NV>(degree_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const int a = table[i][static_cast<std::size_t>(var)];
            if (a == 0 || is_zero(coeffs_[i])) {
                continue;
            }
            Exponent<NV> e = table[i];
            e[static_cast<std::size_t>(var)] -= 1;
            out.coeffs_[static_cast<std::size_t>(monomial_index<NV>(e))] += coeffs_[i] * T(a);
        }
        return out;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.degree_ > degree_) {
            *this = with_degree_bound(o.degree_);
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o)
    {
        if (o.degree_ > degree_) {
            *this = with_degree_bound(o.degree_);
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] -= o.coeffs_[i];
        }
        return *this;
    }

    Polynomial& operator*=(const T& s)
    {
        for (auto& c : coeffs_) {
            c *= s;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a)
    {
        for (auto& c : a.coeffs_) {
            c = -c;
        }
        return a;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial out(a.degree_ + b.degree_);
        const auto& ta = monomial_table<NV>(a.degree_);
        const auto& tb = monomial_table<NV>(b.degree_);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (is_zero(a.coeffs_[i])) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                if (is_zero(b.coeffs_[j])) {
                    continue;
                }
                Exponent<NV> e;
                for (int v = 0; v < NV; ++v) {
                    e[static_cast<std::size_t>(v)] = ta[i][static_cast<std::size_t>(v)] + tb[j][static_cast<std::size_t>(v)];
                }
                out.coeffs_[static_cast<std::size_t>(monomial_index<NV>(e))] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return out;
    }

    /// Exact integral over the reference simplex of dimension NV (unit interval, unit right triangle, unit tetrahedron).
    [[nodiscard]] T integrate_reference_simplex() const
    {
        const auto& table = monomial_table<NV>(degree_);
        T sum(0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!is_zero(coeffs_[i])) {
                sum += coeffs_[i] * simplex_monomial_integral(table[i]);
            }
        }
        return sum;
    }

    [[nodiscard]] static T simplex_monomial_integral(const Exponent<NV>& e)
    {
        T num(1);
        int n = 0;
        for (int v : e) {
            num *= factorial<T>(v);
            n += v;
        }
        return num / factorial<T>(n + NV);
    }

    /// Substitutes x_i = forms[i](s) and returns the resulting polynomial in the NV2 variables s.
    template <int NV2>
    [[nodiscard]] Polynomial<T, NV2> compose(const std::array<Polynomial<T, NV2>, NV>& forms) const
    {
        int form_degree = 0;
        for (const auto& f : forms) {
            form_degree = std::max(form_degree, f.degree_bound());
        }
        std::array<std::vector<Polynomial<T, NV2>>, NV> powers;
        for (int v = 0; v < NV; ++v) {
            auto& pw = powers[static_cast<std::size_t>(v)];
            pw.reserve(static_cast<std::size_t>(degree_) + 1);
            pw.push_back(Polynomial<T, NV2>::constant(T(1)));
            for (int k = 1; k <= degree_; ++k) {
                pw.push_back(pw.back() * forms[static_cast<std::size_t>(v)]);
            }
        }
        Polynomial<T, NV2> out(degree_ * form_degree);
        const auto& table = monomial_table<NV>(degree_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (is_zero(coeffs_[i])) {
                continue;
            }
            Polynomial<T, NV2> term = Polynomial<T, NV2>::constant(coeffs_[i]);
            for (int v = 0; v < NV; ++v) {
                const int a = table[i][static_cast<std::size_t>(v)];
                if (a > 0) {
                    term = term * powers[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)];
                }
            }
            out += term;
        }
        return out;
    }

    template <typename U>
    [[nodiscard]] Polynomial<U, NV> cast() const
    {
        Polynomial<U, NV> out(degree_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if constexpr (std::is_same_v<T, Rational> && !std::is_same_v<U, Rational>) {
                out[i] = static_cast<U>(to_double(coeffs_[i]));
            } else {
                out[i] = static_cast<U>(coeffs_[i]);
            }
        }
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        const int d = std::max(a.degree_, b.degree_);
        const auto pa = a.with_degree_bound(d);
        const auto pb = b.with_degree_bound(d);
        return pa.coeffs_ == pb.coeffs_;
    }

private:
    int degree_;
    std::vector<T> coeffs_;
};

template <typename T>
using Poly1 = Polynomial<T, 1>;
template <typename T>
using Poly2 = Polynomial<T, 2>;
template <typename T>
using Poly3 = Polynomial<T, 3>;

/// A field R^3 -> R^3 with polynomial components.
template <typename T>
struct VectorPolynomial {
    std::array<Poly3<T>, 3> comp;

    VectorPolynomial() = default;
    explicit VectorPolynomial(int degree_bound) : comp{Poly3<T>(degree_bound), Poly3<T>(degree_bound), Poly3<T>(degree_bound)} {}
    VectorPolynomial(Poly3<T> a, Poly3<T> b, Poly3<T> c) : comp{std::move(a), std::move(b), std::move(c)} {}

    [[nodiscard]] static VectorPolynomial unit_monomial(int component, const Exponent<3>& e, const T& c = T(1))
    {
        int n = e[0] + e[1] + e[2];
        VectorPolynomial v(n);
        v.comp[static_cast<std::size_t>(component)] = Poly3<T>::monomial(e, c).with_degree_bound(n);
        return v;
    }

    [[nodiscard]] int degree_bound() const
    {
        return std::max({comp[0].degree_bound(), comp[1].degree_bound(), comp[2].degree_bound()});
    }
    [[nodiscard]] int degree() const { return std::max({comp[0].degree(), comp[1].degree(), comp[2].degree()}); }
    [[nodiscard]] bool is_zero_polynomial() const
    {
        return comp[0].is_zero_polynomial() && comp[1].is_zero_polynomial() && comp[2].is_zero_polynomial();
    }

    [[nodiscard]] std::array<T, 3> evaluate(const std::array<T, 3>& x) const
    {
        return {comp[0].evaluate(x), comp[1].evaluate(x), comp[2].evaluate(x)};
    }

    [[nodiscard]] VectorPolynomial with_degree_bound(int d) const
    {
        return {comp[0].with_degree_bound(d), comp[1].with_degree_bound(d), comp[2].with_degree_bound(d)};
    }

    /// Coefficients flattened component-major against a common degree bound d.
    [[nodiscard]] std::vector<T> flatten(int d) const
    {
        std::vector<T> out;
        out.reserve(3 * static_cast<std::size_t>(monomial_count<3>(d)));
        for (const auto& c : comp) {
            const auto p = c.with_degree_bound(d);
            out.insert(out.end(), p.coefficients().begin(), p.coefficients().end());
        }
        return out;
    }

    [[nodiscard]] static VectorPolynomial unflatten(std::span<const T> coeffs, int d)
    {
        const auto n = static_cast<std::size_t>(monomial_count<3>(d));
        VectorPolynomial v(d);
        for (std::size_t c = 0; c < 3; ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                v.comp[c][i] = coeffs[c * n + i];
            }
        }
        return v;
    }

    VectorPolynomial& operator+=(const VectorPolynomial& o)
    {
        for (std::size_t c = 0; c < 3; ++c) {
            comp[c] += o.comp[c];
        }
        return *this;
    }
    VectorPolynomial& operator*=(const T& s)
    {
        for (auto& c : comp) {
            c *= s;
        }
        return *this;
    }
    friend VectorPolynomial operator+(VectorPolynomial a, const VectorPolynomial& b) { return a += b; }
    friend VectorPolynomial operator*(VectorPolynomial a, const T& s) { return a *= s; }
    friend VectorPolynomial operator*(const T& s, VectorPolynomial a) { return a *= s; }
    friend VectorPolynomial operator-(VectorPolynomial a, const VectorPolynomial& b)
    {
        for (std::size_t c = 0; c < 3; ++c) {
            a.comp[c] -= b.comp[c];
        }
        return a;
    }

    template <typename U>
    [[nodiscard]] VectorPolynomial<U> cast() const
    {
        return {comp[0].template cast<U>(), comp[1].template cast<U>(), comp[2].template cast<U>()};
    }

    friend bool operator==(const VectorPolynomial& a, const VectorPolynomial& b)
    {
        return a.comp[0] == b.comp[0] && a.comp[1] == b.comp[1] && a.comp[2] == b.comp[2];
    }
};

template <typename T>
[[nodiscard]] VectorPolynomial<T> curl(const VectorPolynomial<T>& u)
{
    return {u.comp[2].derivative(1) - u.comp[1].derivative(2),
            u.comp[0].derivative(2) - u.comp[2].derivative(0),
            u.comp[1].derivative(0) - u.comp[0].derivative(1)};
}

template <typename T>
[[nodiscard]] Poly3<T> divergence(const VectorPolynomial<T>& u)
{
    return u.comp[0].derivative(0) + u.comp[1].derivative(1) + u.comp[2].derivative(2);
}

template <typename T>
[[nodiscard]] VectorPolynomial<T> gradient(const Poly3<T>& q)
{
    return {q.derivative(0), q.derivative(1), q.derivative(2)};
}

/// x . p
template <typename T>
[[nodiscard]] Poly3<T> position_dot(const VectorPolynomial<T>& p)
{
    return Poly3<T>::variable(0) * p.comp[0] + Poly3<T>::variable(1) * p.comp[1] + Poly3<T>::variable(2) * p.comp[2];
}

/// x × p
template <typename T>
[[nodiscard]] VectorPolynomial<T> position_cross(const VectorPolynomial<T>& p)
{
    const auto x = Poly3<T>::variable(0);
    const auto y = Poly3<T>::variable(1);
    const auto z = Poly3<T>::variable(2);
    return {y * p.comp[2] - z * p.comp[1], z * p.comp[0] - x * p.comp[2], x * p.comp[1] - y * p.comp[0]};
}

/// x q for a scalar q
template <typename T>
[[nodiscard]] VectorPolynomial<T> position_times(const Poly3<T>& q)
{
    return {Poly3<T>::variable(0) * q, Poly3<T>::variable(1) * q, Poly3<T>::variable(2) * q};
}

}  // namespace quadcurl
