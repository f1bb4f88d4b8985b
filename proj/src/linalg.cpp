#include "liext/linalg.hpp"

#include <stdexcept>

namespace liext {

void Matrix::append_row(const std::vector<Rational>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<Rational> Matrix::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

namespace {

// Row-wise scaling to integers, then Bareiss elimination. Every entry after
// step k is a (k+1)-minor of the scaled input, so the division by the
// previous pivot is exact.
std::vector<std::vector<Integer>> bareiss_echelon(const Matrix& m, std::vector<std::size_t>& pivots) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        Integer den = 1;
        for (std::size_t c = 0; c < cols; ++c) den = lcm(den, Integer(m(r, c).get_den()));
        for (std::size_t c = 0; c < cols; ++c) {
            Rational v = m(r, c) * Rational(den);
            a[r][c] = v.get_num();
        }
    }

    Integer prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t p = row;
        while (p < rows && a[p][col] == 0) ++p;
        if (p == rows) continue;
        if (p != row) std::swap(a[p], a[row]);
        const Integer pivot = a[row][col];
        for (std::size_t r = row + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                Integer v = pivot * a[r][c] - a[r][col] * a[row][c];
                if (!mpz_divisible_p(v.get_mpz_t(), prev.get_mpz_t()))
                    throw std::logic_error("Bareiss step lost exactness");
                mpz_divexact(a[r][c].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            a[r][col] = 0;
        }
        // Columns left of `col` in the rows below are already zero.
        pivots.push_back(col);
        prev = pivot;
        ++row;
    }
    a.resize(row);
    return a;
}

}  // namespace

RowEchelon rref(const Matrix& m) {
    RowEchelon out;
    auto a = bareiss_echelon(m, out.pivots);
    const std::size_t n = a.size(), cols = m.cols();
    Matrix r(n, cols);
    for (std::size_t i = 0; i < n; ++i) {
        const Integer& p = a[i][out.pivots[i]];
        for (std::size_t c = 0; c < cols; ++c) {
            r(i, c) = Rational(a[i][c], p);
            r(i, c).canonicalize();
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = 0; k < i; ++k) {
            Rational f = r(k, out.pivots[i]);
            if (f == 0) continue;
            for (std::size_t c = out.pivots[i]; c < cols; ++c) r(k, c) -= f * r(i, c);
        }
    }
    out.reduced = std::move(r);
    return out;
}

std::size_t rank(const Matrix& m) {
    std::vector<std::size_t> pivots;
    bareiss_echelon(m, pivots);
    return pivots.size();
}

std::vector<std::vector<Rational>> nullspace(const Matrix& m) {
    RowEchelon e = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return echelon_basis(basis, cols);
}

std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs size mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    RowEchelon e = rref(aug);
    std::vector<Rational> x(m.cols(), 0);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == m.cols()) return std::nullopt;
        x[e.pivots[i]] = e.reduced(i, m.cols());
    }
    return x;
}

std::vector<std::vector<Rational>> echelon_basis(const std::vector<std::vector<Rational>>& rows, std::size_t width) {
    if (rows.empty()) return {};
    Matrix m(0, 0);
    for (const auto& r : rows) m.append_row(r);
    (void)width;
    RowEchelon e = rref(m);
    std::vector<std::vector<Rational>> out;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) out.push_back(e.reduced.row(i));
    return out;
}

}  // namespace liext
