#pragma once

// Random expressions and fields for property tests. Fixed seeds only.

#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "liext/expr.hpp"
#include "liext/vector_field.hpp"

namespace doctest {
template <>
struct StringMaker<liext::Expr> {
    static String convert(const liext::Expr& e) { return e.str().c_str(); }
};
template <>
struct StringMaker<liext::VectorField> {
    static String convert(const liext::VectorField& v) { return v.str().c_str(); }
};
}  // namespace doctest

namespace testing_support {

using liext::Expr;

class RandomExprs {
public:
    explicit RandomExprs(std::uint64_t seed, std::vector<std::string> vars = {"x", "y", "z"})
        : rng_(seed), vars_(std::move(vars)) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Expr constant() {
        int n = pick(-5, 5), d = pick(1, 3);
        liext::Rational q(n, d);
        q.canonicalize();
        return Expr(q);
    }

    Expr var() { return Expr::variable(vars_[pick(0, static_cast<int>(vars_.size()) - 1)]); }

    /// Small polynomial in the variables.
    Expr poly(int terms = 3, int max_deg = 2) {
        Expr acc = 0;
        for (int i = 0; i < terms; ++i) {
            Expr m = constant();
            int deg = pick(0, max_deg);
            for (int k = 0; k < deg; ++k) m = m * var();
            acc = acc + m;
        }
        return acc;
    }

    /// Leaf: constant, variable, exp of a linear form, or a shifted variable.
    Expr leaf(bool allow_exp = true) {
        switch (pick(0, allow_exp ? 3 : 2)) {
            case 0: return constant();
            case 1: return var();
            case 2: return var() + Expr(pick(1, 4));
            default: return Expr::exp(Expr(pick(-2, 2)) * var() + Expr(pick(-1, 1)) * var());
        }
    }

    /// Random tree of + - * and division by a nonzero-constant-term polynomial.
    Expr tree(int depth, bool allow_exp = true, bool allow_div = true) {
        if (depth == 0) return leaf(allow_exp);
        Expr a = tree(depth - 1, allow_exp, allow_div), b = tree(depth - 1, allow_exp, allow_div);
        switch (pick(0, allow_div ? 3 : 2)) {
            case 0: return a + b;
            case 1: return a - b;
            case 2: return a * b;
            default: return a / (var() * var() + Expr(pick(1, 3)));
        }
    }

    liext::VectorField field(const std::vector<std::string>& coords, int max_deg = 1) {
        std::map<std::string, Expr> c;
        for (const auto& v : coords)
            if (pick(0, 3) != 0) c[v] = poly(2, max_deg);
        return liext::VectorField(c);
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::vector<std::string> vars_;
};

}  // namespace testing_support
