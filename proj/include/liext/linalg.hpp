#pragma once

// Exact rational linear algebra: fraction-free (Bareiss) elimination to
// echelon form, then reduction to the unique reduced row echelon form.
// Pivoting is deterministic: leftmost column with a nonzero entry, and
// within it the lowest-index remaining row.

#include <cstddef>
#include <optional>
#include <vector>

#include "liext/expr.hpp"

namespace liext {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const std::vector<Rational>& row);
    std::vector<Rational> row(std::size_t r) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RowEchelon {
    Matrix reduced;                   // RREF, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of {v : m v = 0}, one vector per free column, in reduced row
/// echelon form.
std::vector<std::vector<Rational>> nullspace(const Matrix& m);

/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& b);

/// Reduced row echelon form of a set of row vectors (zero rows dropped).
std::vector<std::vector<Rational>> echelon_basis(const std::vector<std::vector<Rational>>& rows, std::size_t width);

}  // namespace liext
