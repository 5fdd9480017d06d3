#include "quadcurl/exact_linalg.hpp"

#include "quadcurl/errors.hpp"

#include <algorithm>
#include <limits>

namespace quadcurl {

namespace {

std::size_t bit_size(const Rational& q)
{
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

// Eliminates column `col` from every row except `pivot_row`, touching only the
// pivot row's nonzero columns.
void eliminate(RationalMatrix& m, std::size_t pivot_row, std::size_t col, std::size_t first_row)
{
    const std::size_t cols = m.cols();
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(m(pivot_row, j)) != 0) {
            nz.push_back(j);
        }
    }
    Rational factor;
    for (std::size_t i = first_row; i < m.rows(); ++i) {
        if (i == pivot_row || sgn(m(i, col)) == 0) {
            continue;
        }
        factor = m(i, col);
        for (std::size_t j : nz) {
            m(i, j) -= factor * m(pivot_row, j);
        }
    }
}

}  // namespace

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const
{
    RationalMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (sgn(a) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < o.cols_; ++j) {
                if (sgn(o(k, j)) != 0) {
                    r(i, j) += a * o(k, j);
                }
            }
        }
    }
    return r;
}

bool RationalMatrix::is_identity() const
{
    if (rows_ != cols_) {
        return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if ((*this)(i, j) != (i == j ? 1 : 0)) {
                return false;
            }
        }
    }
    return true;
}

void RationalMatrix::append_row(const std::vector<Rational>& row)
{
    if (rows_ == 0 && cols_ == 0) {
        cols_ = row.size();
    }
    if (row.size() != cols_) {
        throw std::invalid_argument("RationalMatrix::append_row: width mismatch");
    }
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

RowEchelon reduced_row_echelon(RationalMatrix m)
{
    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t best = m.rows();
        std::size_t best_size = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = r; i < m.rows(); ++i) {
            if (sgn(m(i, c)) != 0) {
                const std::size_t s = bit_size(m(i, c));
                if (s < best_size) {
                    best = i;
                    best_size = s;
                }
            }
        }
        if (best == m.rows()) {
            continue;
        }
        if (best != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                std::swap(m(best, j), m(r, j));
            }
        }
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (sgn(m(r, j)) != 0) {
                m(r, j) *= inv;
            }
        }
        eliminate(m, r, c, 0);
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const RationalMatrix& m)
{
    return reduced_row_echelon(m).pivots.size();
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m)
{
    const auto ech = reduced_row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<Rational> v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
            v[ech.pivots[r]] = -ech.reduced(r, free);
        }
        // clear denominators
        mpz_class l = 1;
        for (const auto& x : v) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        }
        for (auto& x : v) {
            x *= l;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

InverseResult invert(const RationalMatrix& m)
{
    const std::size_t n = m.rows();
    if (m.cols() != n) {
        throw std::invalid_argument("invert: matrix is not square");
    }
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n + i) = 1;
    }
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = n;
        std::size_t best_size = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = c; i < n; ++i) {
            if (sgn(aug(i, c)) != 0) {
                const std::size_t s = bit_size(aug(i, c));
                if (s < best_size) {
                    best = i;
                    best_size = s;
                }
            }
        }
        if (best == n) {
            throw SingularVandermonde("invert: matrix is singular (zero pivot in column " + std::to_string(c) + ")");
        }
        if (best != c) {
            for (std::size_t j = 0; j < 2 * n; ++j) {
                std::swap(aug(best, j), aug(c, j));
            }
            det = -det;
        }
        det *= aug(c, c);
        const Rational inv = 1 / aug(c, c);
        for (std::size_t j = 0; j < 2 * n; ++j) {
            if (sgn(aug(c, j)) != 0) {
                aug(c, j) *= inv;
            }
        }
        eliminate(aug, c, c, 0);
    }
    InverseResult out{RationalMatrix(n, n), det};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.inverse(i, j) = aug(i, n + j);
        }
    }
    return out;
}

}  // namespace quadcurl
