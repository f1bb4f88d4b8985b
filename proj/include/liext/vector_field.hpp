#pragma once

// First-order differential operators sum_i zeta_i(z) d/dz_i on a chart of
// named coordinates, their commutators, structure constants and pushforward
// under an explicit change of variables.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "liext/expr.hpp"
#include "liext/sampling.hpp"

namespace liext {

/// Coordinate roles. Dependent variables list the independent variables they
/// depend on; an empty list means all of them.
struct Chart {
    std::vector<std::string> independent;
    std::vector<std::string> dependent;
    std::vector<std::string> ancillary;
    std::map<std::string, std::vector<std::string>> depends_on;

    /// independent, then dependent, then ancillary
    std::vector<std::string> coordinates() const;
    bool contains(const std::string& name) const;
    bool is_ancillary(const std::string& name) const;
    std::vector<std::string> arguments_of(const std::string& dependent_var) const;
    /// Throws SpecError on duplicate or malformed names.
    void validate() const;
};

class VectorField {
public:
    VectorField() = default;
    explicit VectorField(const std::map<std::string, Expr>& coefficients);

    /// d/d<var>
    static VectorField partial(const std::string& var);

    /// Zero when the variable is not in the support.
    Expr coefficient(const std::string& var) const;
    const std::map<std::string, Expr>& coefficients() const { return coeffs_; }
    void set(const std::string& var, const Expr& value);
    bool is_zero() const { return coeffs_.empty(); }

    /// Copy without the given coordinate.
    VectorField without(const std::string& var) const;

    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    friend VectorField operator*(const Expr& f, const VectorField& v);
    bool operator==(const VectorField&) const = default;

    /// "t*d/dx + x*d/dt"; coefficients with several terms are parenthesised.
    std::string str() const;

private:
    std::map<std::string, Expr> coeffs_;  // zero coefficients never stored
};

Expr apply(const VectorField& v, const Expr& e);

/// [a, b]_s = a(b_s) - b(a_s)
VectorField commutator(const VectorField& a, const VectorField& b);

/// Structure constants c[m][n][k] of [Q_m, Q_n] = sum_k c[m][n][k] Q_k.
class StructureConstants {
public:
    explicit StructureConstants(std::size_t dim = 0) : dim_(dim), c_(dim * dim * dim, 0) {}

    std::size_t dim() const { return dim_; }
    Rational& at(std::size_t m, std::size_t n, std::size_t k) { return c_[(m * dim_ + n) * dim_ + k]; }
    const Rational& at(std::size_t m, std::size_t n, std::size_t k) const { return c_[(m * dim_ + n) * dim_ + k]; }

    bool is_antisymmetric() const;
    bool satisfies_jacobi() const;

    /// sum_k c[m][n][k] X_k
    template <class T>
    T combine(std::size_t m, std::size_t n, const std::vector<T>& xs) const {
        T acc{};
        for (std::size_t k = 0; k < dim_; ++k)
            if (at(m, n, k) != 0) acc = acc + Expr(at(m, n, k)) * xs[k];
        return acc;
    }

    /// One line per nonzero bracket, "[Q1, Q2] = Q2" style with the given names.
    std::vector<std::string> describe(const std::vector<std::string>& names) const;

    bool operator==(const StructureConstants&) const = default;

private:
    std::size_t dim_;
    std::vector<Rational> c_;
};

/// Rank over the constants, from coefficients sampled at dim + 2 generic points.
std::size_t generic_rank(const std::vector<VectorField>& fields, Sampler& sampler);

/// Throws DependentBasis when the fields are linearly dependent over the
/// constants, NotClosed (with the offending residual) when a commutator
/// leaves the span.
StructureConstants structure_constants(const std::vector<VectorField>& basis, std::uint64_t seed = kDefaultSeed);

/// Pushforward of v under new_j = forward[new_j](old), with inverse
/// old_i = inverse[old_i](new). Variables not mentioned are kept as they are.
/// Throws NotInverse when the maps do not compose to the identity and
/// DomainEscape when substitution leaves the expression domain.
VectorField pushforward(const VectorField& v, const std::map<std::string, Expr>& forward,
                        const std::map<std::string, Expr>& inverse);

}  // namespace liext
