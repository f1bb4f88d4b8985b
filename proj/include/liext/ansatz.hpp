#pragma once

// Finite-dimensional ansatz spaces and exact decomposition of expressions
// in their span.
//
// Ansatz text:
//   ansatz ::= factor { '*' factor }
//   factor ::= 'poly' '(' var { ',' var } ';' 'deg' '<=' integer ')'
//            | '{' expr { ',' expr } '}'
// A product multiplies every pair of elements; repeated elements are dropped.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liext/expr.hpp"
#include "liext/linalg.hpp"
#include "liext/sampling.hpp"

namespace liext {

class Ansatz {
public:
    Ansatz() = default;
    Ansatz(std::vector<Expr> basis, std::string description);

    static Ansatz parse(std::string_view text);
    /// All monomials in vars of total degree <= max_degree, graded, then
    /// lexicographic in the order of `vars`.
    static Ansatz polynomial(const std::vector<std::string>& vars, int max_degree);
    Ansatz times(const Ansatz& other) const;

    const std::vector<Expr>& basis() const { return basis_; }
    std::size_t size() const { return basis_.size(); }
    const std::string& description() const { return description_; }

private:
    std::vector<Expr> basis_;
    std::string description_;
};

/// Decomposes expressions in the span of an ansatz: an exact solve at
/// generic points, then a symbolic check of the result.
class SpanSolver {
public:
    /// Throws DependentBasis when the ansatz elements are linearly dependent.
    explicit SpanSolver(const Ansatz& ansatz, std::uint64_t seed = kDefaultSeed);

    /// Coordinates of e, or nullopt when e is outside the span.
    std::optional<std::vector<Rational>> coordinates(const Expr& e);

    Expr combine(const std::vector<Rational>& coords) const;

    const Ansatz& ansatz() const { return ansatz_; }

private:
    Ansatz ansatz_;
    std::vector<GenericPoint> points_;
    Matrix values_;  // points x basis
};

}  // namespace liext
