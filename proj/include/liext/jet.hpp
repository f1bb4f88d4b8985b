#pragma once

// Finite jet spaces, total derivatives and prolongation of vector fields.
//
// Jet coordinates are named <dependent>_<letters> with the letters of the
// multi-index sorted, so every independent variable with derivatives taken
// must be a single letter.

#include <string>
#include <vector>

#include "liext/expr.hpp"
#include "liext/vector_field.hpp"

namespace liext {

/// Sorted multiset of independent variables.
struct MultiIndex {
    std::vector<std::string> vars;

    std::size_t order() const { return vars.size(); }
    MultiIndex plus(const std::string& var) const;
    std::string suffix() const;
    auto operator<=>(const MultiIndex&) const = default;
};

struct JetCoordinate {
    std::string dependent;
    MultiIndex index;
    std::string name;
};

class JetSpace {
public:
    /// Coordinates of order 1..order, graded (by order), then by dependent
    /// variable, then lexicographic in the multi-index.
    JetSpace(Chart base, int order);

    const Chart& base() const { return base_; }
    int order() const { return order_; }
    const std::vector<JetCoordinate>& coordinates() const { return coords_; }

    /// Name of u_J; the multi-index may exceed the space's order.
    std::string name_of(const std::string& dependent, const MultiIndex& index) const;
    /// Jet coordinate by name, or nullptr. Order-0 dependents are not included.
    const JetCoordinate* find(const std::string& name) const;
    /// 0 for a dependent variable, |J| for u_J, -1 otherwise.
    int order_of(const std::string& name) const;
    /// Base coordinates followed by jet coordinates.
    std::vector<std::string> all_coordinates() const;

private:
    Chart base_;
    int order_;
    std::vector<JetCoordinate> coords_;
};

JetSpace build_jet(const Chart& base, int order);

/// Total derivative in the direction of an independent variable. Throws
/// OrderOverflow when the result would need coordinates above the space's order.
Expr total_derivative(const JetSpace& jet, const std::string& var, const Expr& e);

/// Prolongation by the recursive formula
///   eta^{J+i} = D_i eta^J - sum_k u_{J+k} D_i xi_k.
/// Components along ancillary coordinates pass through unchanged.
VectorField prolong(const VectorField& v, const JetSpace& jet);

/// Prolongation by the characteristic form
///   eta^J = D_J(eta - sum_i xi_i u_i) + sum_i xi_i u_{J+i}.
VectorField prolong_closed_form(const VectorField& v, const JetSpace& jet);

}  // namespace liext
