#pragma once

// Exact symbolic expressions in canonical rational form.
//
// An Expr is num/den where both are polynomials with rational coefficients
// over atoms: named variables, opaque function symbols with formal partials,
// and exponentials. Exponentials are kept merged: every monomial carries at
// most one exp factor, whose argument is itself an exp-free, function-free
// Expr. Exponentials behave as units, so exp(p) in a denominator moves to the
// numerator as exp(-p).
//
// Canonical form: gcd(num, den) = 1, the leading term of den (largest in the
// monomial order) carries no exp factor, and den has integer coefficients
// with content 1 and a positive leading coefficient.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liext {

using Rational = mpq_class;
using Integer = mpz_class;

/// Variable or opaque function symbol.
struct Symbol {
    enum class Kind : std::uint8_t { Variable = 0, Function = 1 };

    Kind kind = Kind::Variable;
    std::string name;
    std::vector<std::string> args;      // function arguments
    std::vector<std::string> partials;  // sorted formal partial multi-index

    static Symbol variable(std::string name);
    static Symbol function(std::string name, std::vector<std::string> args,
                           std::vector<std::string> partials = {});

    bool is_variable() const { return kind == Kind::Variable; }
    std::string str() const;

    auto operator<=>(const Symbol&) const = default;
    bool operator==(const Symbol&) const = default;
};

class Expr;

struct Monomial {
    std::vector<std::pair<Symbol, int>> powers;  // sorted by symbol, positive powers
    std::shared_ptr<const Expr> exp_arg;         // null when there is no exp factor

    int degree() const;
    bool is_one() const { return powers.empty() && !exp_arg; }
    bool has_symbols() const { return !powers.empty(); }
};

/// Total order: graded lexicographic on symbol powers, then the exp argument
/// in a translation-invariant order (so exp units never change which term leads).
int compare(const Monomial& a, const Monomial& b);

/// Order on symbol powers only (ignores exp factors).
int compare_symbols(const Monomial& a, const Monomial& b);

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

Monomial operator*(const Monomial& a, const Monomial& b);

class Poly {
public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    Poly() = default;
    explicit Poly(const Rational& c);
    static Poly term(Monomial m, const Rational& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    std::size_t size() const { return terms_.size(); }
    bool is_constant() const;
    Rational constant_term() const;

    void add_term(const Monomial& m, const Rational& c);

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Rational& c);

    bool operator==(const Poly& other) const;

    std::string str() const;

private:
    Terms terms_;
};

class Expr {
public:
    Expr() : den_(Rational(1)) {}
    Expr(int v) : num_(Rational(v)), den_(Rational(1)) {}  // NOLINT: implicit by design of literals
    Expr(const Rational& v) : num_(v), den_(Rational(1)) {}

    static Expr variable(const std::string& name);
    static Expr function(const std::string& name, std::vector<std::string> args,
                         std::vector<std::string> partials = {});
    /// exp(arg); arg must be free of exp and function atoms. exp(0) = 1.
    static Expr exp(const Expr& arg);
    /// Builds num/den and brings it to canonical form.
    static Expr fraction(Poly num, Poly den);
    /// A polynomial is already canonical over the unit denominator.
    static Expr polynomial(Poly num);

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    std::optional<Rational> constant_value() const;

    bool has_exp() const;
    bool has_function() const;

    Expr operator-() const;
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }

    bool operator==(const Expr& other) const { return num_ == other.num_ && den_ == other.den_; }

    std::string str() const;

private:
    /// As fraction(); `coprime` skips the gcd when the caller knows it is 1.
    static Expr fraction_impl(Poly num, Poly den, bool coprime);

    Poly num_;
    Poly den_;
};

Expr pow(const Expr& base, int exponent);

/// Exact partial derivative. Function atoms gain a formal partial when `var`
/// is one of their arguments.
Expr diff(const Expr& e, const std::string& var);

/// Simultaneous substitution of variables. Throws DomainError when a bound
/// variable is an argument of an opaque function or an exp argument would
/// leave the exp-free domain.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

bool is_zero(const Expr& e);

/// Names of all variables the expression depends on, including those inside
/// exp arguments and function argument lists.
std::set<std::string> variables(const Expr& e);

/// Canonical printed keys of the function atoms in e.
std::set<std::string> function_atoms(const Expr& e);

/// Kind of atom requested during evaluation.
enum class AtomKind { Variable, Function, Exp, ExpBasis };

/// Source of atom values for evaluation.
class AtomValues {
public:
    virtual ~AtomValues() = default;
    virtual std::optional<Rational> value(const std::string& key, AtomKind kind) = 0;
};

/// Evaluate with atoms treated as independent indeterminates. Each exp factor
/// is looked up by its printed key "exp(<arg>)"; failing that, its argument is
/// split over numerator monomials and each "exp(<monomial>/<den>)" basis value
/// is raised to the (integer) coefficient.
Rational evaluate(const Expr& e, AtomValues& values);

/// Evaluate at an explicit point keyed by atom print form (e.g. "x",
/// "exp(x)", "Phi_x(x,y)"). Throws SingularPoint or UnassignedAtom.
Rational eval_at(const Expr& e, const std::map<std::string, Rational>& point);

/// Parse with the expression grammar; result is canonical.
Expr parse(std::string_view text);

std::string to_string(const Rational& q);

/// Sort the letters after the first underscore of a jet/partial name
/// ("u_xt" -> "u_tx"); names without a letter suffix are returned unchanged.
std::string canonical_identifier(std::string_view name);

}  // namespace liext
