/**
 * @file exact_linalg.hpp
 * @brief Dense linear algebra over the rationals: row reduction, rank, nullspace,
 *        determinant and inverse. No pivoting heuristics are needed for correctness;
 *        the pivot choice only keeps intermediate numbers small.
 */
#pragma once

#include "quadcurl/scalar.hpp"

#include <cstddef>
#include <vector>

namespace quadcurl {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    [[nodiscard]] static RationalMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    [[nodiscard]] const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] RationalMatrix transpose() const;
    [[nodiscard]] RationalMatrix operator*(const RationalMatrix& o) const;
    [[nodiscard]] bool is_identity() const;

    void append_row(const std::vector<Rational>& row);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RowEchelon {
    RationalMatrix reduced;            // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

[[nodiscard]] RowEchelon reduced_row_echelon(RationalMatrix m);
[[nodiscard]] std::size_t rank(const RationalMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column, scaled to integer entries.
[[nodiscard]] std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

struct InverseResult {
    RationalMatrix inverse;
    Rational determinant;
};

/// Gauss-Jordan inverse with the exact determinant. Throws SingularVandermonde when det = 0.
[[nodiscard]] InverseResult invert(const RationalMatrix& m);

}  // namespace quadcurl
