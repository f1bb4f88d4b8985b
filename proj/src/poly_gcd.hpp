#pragma once

// Dense-exponent integer polynomials used only as the workhorse for
// multivariate GCD and exact division during canonicalisation.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <vector>

namespace liext::detail {

using Exponents = std::vector<int>;

struct IPoly {
    std::size_t nvars = 0;
    // Lexicographic on exponent vectors, variable 0 most significant.
    std::map<Exponents, mpz_class> terms;

    explicit IPoly(std::size_t n = 0) : nvars(n) {}

    static IPoly constant(std::size_t n, const mpz_class& c);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    int degree(std::size_t var) const;
    bool operator==(const IPoly& other) const { return terms == other.terms; }

    void add_term(const Exponents& e, const mpz_class& c);
};

IPoly operator+(const IPoly& a, const IPoly& b);
IPoly operator-(const IPoly& a, const IPoly& b);
IPoly operator*(const IPoly& a, const IPoly& b);
IPoly operator*(const IPoly& a, const mpz_class& c);

/// gcd of the integer coefficients (non-negative).
mpz_class integer_content(const IPoly& p);

/// Exact quotient into *quotient when b divides a.
bool try_divexact(const IPoly& a, const IPoly& b, IPoly* quotient);

/// Exact quotient; throws std::logic_error when `b` does not divide `a`.
IPoly divexact(const IPoly& a, const IPoly& b);

/// Greatest common divisor in Z[x_0..x_{n-1}], normalised to a positive
/// leading coefficient. gcd(0, 0) = 0.
IPoly gcd(const IPoly& a, const IPoly& b);

}  // namespace liext::detail
