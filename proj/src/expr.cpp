#include "liext/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "liext/errors.hpp"
#include "poly_gcd.hpp"

namespace liext {

// ---------------------------------------------------------------- Symbol

Symbol Symbol::variable(std::string name) {
    Symbol s;
    s.kind = Kind::Variable;
    s.name = std::move(name);
    return s;
}

Symbol Symbol::function(std::string name, std::vector<std::string> args,
                        std::vector<std::string> partials) {
    Symbol s;
    s.kind = Kind::Function;
    s.name = std::move(name);
    s.args = std::move(args);
    std::sort(partials.begin(), partials.end());
    s.partials = std::move(partials);
    return s;
}

std::string Symbol::str() const {
    if (is_variable()) return name;
    std::string out = name;
    if (!partials.empty()) {
        out += '_';
        for (const auto& p : partials) out += p;
    }
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i];
    }
    out += ')';
    return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string canonical_identifier(std::string_view name) {
    auto us = name.find('_');
    if (us == std::string_view::npos || us + 1 >= name.size()) return std::string(name);
    std::string suffix(name.substr(us + 1));
    if (!std::all_of(suffix.begin(), suffix.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); }))
        return std::string(name);
    std::sort(suffix.begin(), suffix.end());
    return std::string(name.substr(0, us + 1)) + suffix;
}

// ---------------------------------------------------------------- Monomial

namespace {

const Expr& zero_expr() {
    static const Expr z;
    return z;
}

int sign(const Rational& q) { return sgn(q); }

Rational leading_coefficient(const Poly& p) { return p.terms().rbegin()->second; }

// Order of exp arguments: a < b iff b - a is positive, where an expression is
// positive when its numerator's leading coefficient is (denominators are
// normalised to a positive leading coefficient). This is an ordered-group
// order, so shifting every argument by the same amount preserves it.
int compare_exp_args(const Expr* a, const Expr* b) {
    if (a == b) return 0;
    const Expr& x = a ? *a : zero_expr();
    const Expr& y = b ? *b : zero_expr();
    if (x.is_polynomial() && y.is_polynomial()) {
        const auto& tx = x.numerator().terms();
        const auto& ty = y.numerator().terms();
        auto ix = tx.rbegin();
        auto iy = ty.rbegin();
        for (;;) {
            if (ix == tx.rend() && iy == ty.rend()) return 0;
            if (ix == tx.rend()) return sign(iy->second) > 0 ? -1 : 1;
            if (iy == ty.rend()) return sign(ix->second) > 0 ? 1 : -1;
            int c = compare_symbols(ix->first, iy->first);
            if (c > 0) return sign(ix->second) > 0 ? 1 : -1;
            if (c < 0) return sign(iy->second) > 0 ? -1 : 1;
            if (ix->second != iy->second) return ix->second > iy->second ? 1 : -1;
            ++ix;
            ++iy;
        }
    }
    Expr d = y - x;
    if (d.is_zero()) return 0;
    return sign(leading_coefficient(d.numerator())) > 0 ? -1 : 1;
}

}  // namespace

int Monomial::degree() const {
    int d = 0;
    for (const auto& [s, k] : powers) d += k;
    return d;
}

int compare_symbols(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    std::size_t i = 0, j = 0;
    const auto& pa = a.powers;
    const auto& pb = b.powers;
    while (i < pa.size() || j < pb.size()) {
        if (j == pb.size() || (i < pa.size() && pa[i].first < pb[j].first)) return 1;
        if (i == pa.size() || pb[j].first < pa[i].first) return -1;
        if (pa[i].second != pb[j].second) return pa[i].second > pb[j].second ? 1 : -1;
        ++i;
        ++j;
    }
    return 0;
}

int compare(const Monomial& a, const Monomial& b) {
    int c = compare_symbols(a, b);
    if (c != 0) return c;
    return compare_exp_args(a.exp_arg.get(), b.exp_arg.get());
}

namespace {

std::shared_ptr<const Expr> add_args(const std::shared_ptr<const Expr>& a,
                                     const std::shared_ptr<const Expr>& b) {
    if (!a) return b;
    if (!b) return a;
    Expr s = *a + *b;
    if (s.is_zero()) return nullptr;
    return std::make_shared<const Expr>(std::move(s));
}

std::shared_ptr<const Expr> sub_args(const std::shared_ptr<const Expr>& a,
                                     const std::shared_ptr<const Expr>& b) {
    if (!b) return a;
    Expr s = (a ? *a : zero_expr()) - *b;
    if (s.is_zero()) return nullptr;
    return std::make_shared<const Expr>(std::move(s));
}

}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.powers.reserve(a.powers.size() + b.powers.size());
    std::size_t i = 0, j = 0;
    while (i < a.powers.size() || j < b.powers.size()) {
        if (j == b.powers.size() || (i < a.powers.size() && a.powers[i].first < b.powers[j].first)) {
            r.powers.push_back(a.powers[i++]);
        } else if (i == a.powers.size() || b.powers[j].first < a.powers[i].first) {
            r.powers.push_back(b.powers[j++]);
        } else {
            r.powers.emplace_back(a.powers[i].first, a.powers[i].second + b.powers[j].second);
            ++i;
            ++j;
        }
    }
    r.exp_arg = add_args(a.exp_arg, b.exp_arg);
    return r;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly Poly::term(Monomial m, const Rational& c) {
    Poly p;
    if (c != 0) p.terms_.emplace(std::move(m), c);
    return p;
}

bool Poly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    const Poly& big = a.size() >= b.size() ? a : b;
    const Poly& small = a.size() >= b.size() ? b : a;
    Poly r = big;
    for (const auto& [m, c] : small.terms_) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly operator*(const Poly& a, const Rational& c) {
    Poly r;
    if (c == 0) return r;
    for (const auto& [m, v] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
    return r;
}

bool Poly::operator==(const Poly& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    auto i = terms_.begin();
    auto j = other.terms_.begin();
    for (; i != terms_.end(); ++i, ++j)
        if (i->second != j->second || compare(i->first, j->first) != 0) return false;
    return true;
}

namespace {

std::string monomial_str(const Monomial& m) {
    std::string out;
    for (const auto& [s, k] : m.powers) {
        if (!out.empty()) out += '*';
        out += s.str();
        if (k != 1) out += '^' + std::to_string(k);
    }
    if (m.exp_arg) {
        if (!out.empty()) out += '*';
        out += "exp(" + m.exp_arg->str() + ")";
    }
    return out;
}

std::string term_str(const Monomial& m, const Rational& c) {
    if (m.is_one()) return to_string(c);
    std::string ms = monomial_str(m);
    if (c == 1) return ms;
    if (c == -1) return "-" + ms;
    return to_string(c) + "*" + ms;
}

}  // namespace

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (first) {
            out = term_str(it->first, it->second);
            first = false;
        } else if (it->second < 0) {
            out += " - " + term_str(it->first, -it->second);
        } else {
            out += " + " + term_str(it->first, it->second);
        }
    }
    return out;
}

// ---------------------------------------------------------------- canonicalisation

namespace {

using SymbolPowers = std::vector<std::pair<Symbol, int>>;

// Componentwise minimum of symbol powers over all terms of p.
SymbolPowers monomial_content(const Poly& p) {
    SymbolPowers g;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (first) {
            g = m.powers;
            first = false;
            continue;
        }
        SymbolPowers next;
        std::size_t i = 0, j = 0;
        while (i < g.size() && j < m.powers.size()) {
            if (g[i].first < m.powers[j].first) {
                ++i;
            } else if (m.powers[j].first < g[i].first) {
                ++j;
            } else {
                next.emplace_back(g[i].first, std::min(g[i].second, m.powers[j].second));
                ++i;
                ++j;
            }
        }
        g = std::move(next);
        if (g.empty()) break;
    }
    return g;
}

SymbolPowers min_powers(const SymbolPowers& a, const SymbolPowers& b) {
    SymbolPowers r;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            ++i;
        } else if (b[j].first < a[i].first) {
            ++j;
        } else {
            r.emplace_back(a[i].first, std::min(a[i].second, b[j].second));
            ++i;
            ++j;
        }
    }
    return r;
}

SymbolPowers divide_powers(const SymbolPowers& a, const SymbolPowers& g) {
    SymbolPowers r;
    std::size_t j = 0;
    for (const auto& [s, k] : a) {
        while (j < g.size() && g[j].first < s) ++j;
        int d = (j < g.size() && g[j].first == s) ? g[j].second : 0;
        if (k - d > 0) r.emplace_back(s, k - d);
    }
    return r;
}

// Divide every term's symbol part by g and shift every exp argument by -shift,
// multiplying coefficients by `scale`.
Poly transform_terms(const Poly& p, const SymbolPowers& g, const std::shared_ptr<const Expr>& shift,
                     const Rational& scale) {
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        Monomial n;
        n.powers = g.empty() ? m.powers : divide_powers(m.powers, g);
        n.exp_arg = shift ? sub_args(m.exp_arg, shift) : m.exp_arg;
        r.add_term(n, c * scale);
    }
    return r;
}

// ---- conversion to dense integer polynomials for the general gcd

struct ExpBasis {
    Monomial mono;  // numerator monomial of the argument
    Poly den;       // argument denominator
    Integer scale = 1;
};

struct DenseContext {
    std::vector<Symbol> symbols;
    std::map<Symbol, std::size_t> symbol_index;
    std::vector<ExpBasis> basis;
    std::map<std::string, std::size_t> basis_index;

    std::size_t nvars() const { return symbols.size() + basis.size(); }

    void scan(const Poly& p) {
        for (const auto& [m, c] : p.terms()) {
            for (const auto& [s, k] : m.powers) symbol_index.try_emplace(s, 0);
            if (!m.exp_arg) continue;
            const Poly& den = m.exp_arg->denominator();
            for (const auto& [am, ac] : m.exp_arg->numerator().terms()) {
                std::string key = monomial_str(am) + "|" + den.str();
                auto [it, inserted] = basis_index.try_emplace(key, basis.size());
                if (inserted) basis.push_back({am, den, 1});
                Integer& sc = basis[it->second].scale;
                sc = lcm(sc, Integer(ac.get_den()));
            }
        }
    }

    void finish() {
        std::size_t i = 0;
        for (auto& [s, idx] : symbol_index) {
            idx = i++;
            symbols.push_back(s);
        }
    }

    // Exponent vector of a monomial; exp coordinates may be negative.
    detail::Exponents exponents(const Monomial& m) const {
        detail::Exponents e(nvars(), 0);
        for (const auto& [s, k] : m.powers) e[symbol_index.at(s)] = k;
        if (m.exp_arg) {
            const std::string den = m.exp_arg->denominator().str();
            for (const auto& [am, ac] : m.exp_arg->numerator().terms()) {
                std::size_t b = basis_index.at(monomial_str(am) + "|" + den);
                Rational v = ac * Rational(basis[b].scale);
                e[symbols.size() + b] = static_cast<int>(v.get_num().get_si());
            }
        }
        return e;
    }

    struct Dense {
        detail::IPoly poly;
        std::vector<int> shift;  // exp exponents subtracted
        Rational scale;          // poly = scale * original / exp-shift
    };

    Dense to_dense(const Poly& p) const {
        const std::size_t n = nvars();
        const std::size_t ns = symbols.size();
        std::vector<std::pair<detail::Exponents, Rational>> rows;
        std::vector<int> shift(basis.size(), 0);
        bool first = true;
        Integer den_lcm = 1;
        for (const auto& [m, c] : p.terms()) {
            auto e = exponents(m);
            for (std::size_t b = 0; b < basis.size(); ++b)
                shift[b] = first ? e[ns + b] : std::min(shift[b], e[ns + b]);
            first = false;
            den_lcm = lcm(den_lcm, Integer(c.get_den()));
            rows.emplace_back(std::move(e), c);
        }
        Dense d{detail::IPoly(n), shift, Rational(den_lcm)};
        for (auto& [e, c] : rows) {
            for (std::size_t b = 0; b < basis.size(); ++b) e[ns + b] -= shift[b];
            Rational v = c * Rational(den_lcm);
            d.poly.add_term(e, v.get_num());
        }
        return d;
    }

    Poly from_dense(const detail::IPoly& q, const std::vector<int>& shift, const Rational& scale) const {
        const std::size_t ns = symbols.size();
        Poly out;
        for (const auto& [e, c] : q.terms) {
            Monomial m;
            for (std::size_t i = 0; i < ns; ++i)
                if (e[i] > 0) m.powers.emplace_back(symbols[i], e[i]);
            Poly poly_arg;
            Expr rational_arg;
            bool any_rational = false;
            for (std::size_t b = 0; b < basis.size(); ++b) {
                int k = e[ns + b] + shift[b];
                if (k == 0) continue;
                Rational coeff(k, basis[b].scale);
                coeff.canonicalize();
                if (basis[b].den.is_one()) {
                    poly_arg.add_term(basis[b].mono, coeff);
                } else {
                    any_rational = true;
                    rational_arg += Expr(coeff) * Expr::polynomial(Poly::term(basis[b].mono, 1)) /
                                    Expr::polynomial(basis[b].den);
                }
            }
            Expr arg = Expr::polynomial(poly_arg);
            if (any_rational) arg = arg + rational_arg;
            if (!arg.is_zero()) m.exp_arg = std::make_shared<const Expr>(std::move(arg));
            out.add_term(m, Rational(c) / scale);
        }
        return out;
    }
};

// gcd of two polynomials up to a unit, with both cofactors.
struct CommonSplit {
    bool trivial = true;
    Poly g, a, b;
};

CommonSplit split_common(const Poly& a, const Poly& b) {
    CommonSplit out;
    DenseContext ctx;
    ctx.scan(a);
    ctx.scan(b);
    ctx.finish();
    auto da = ctx.to_dense(a);
    auto db = ctx.to_dense(b);
    detail::IPoly g = detail::gcd(da.poly, db.poly);
    if (g.is_constant()) return out;
    out.trivial = false;
    out.g = ctx.from_dense(g, std::vector<int>(ctx.basis.size(), 0), Rational(1));
    out.a = ctx.from_dense(detail::divexact(da.poly, g), da.shift, da.scale);
    out.b = ctx.from_dense(detail::divexact(db.poly, g), db.shift, db.scale);
    return out;
}

}  // namespace

Expr Expr::polynomial(Poly num) {
    Expr e;
    e.num_ = std::move(num);
    return e;
}

Expr Expr::fraction(Poly num, Poly den) { return fraction_impl(std::move(num), std::move(den), false); }

Expr Expr::fraction_impl(Poly num, Poly den, bool coprime) {
    if (den.is_zero()) throw DivisionByZero("division by zero");
    Expr e;
    if (num.is_zero()) return e;
    if (den.is_one()) {
        e.num_ = std::move(num);
        return e;
    }

    if (den.size() == 1) {
        const auto& [dm, dc] = *den.terms().begin();
        SymbolPowers g = min_powers(dm.powers, monomial_content(num));
        Monomial rest;
        rest.powers = divide_powers(dm.powers, g);
        e.num_ = transform_terms(num, g, dm.exp_arg, 1 / dc);
        e.den_ = Poly::term(std::move(rest), 1);
        return e;
    }

    SymbolPowers g = min_powers(monomial_content(num), monomial_content(den));
    if (!g.empty()) {
        num = transform_terms(num, g, nullptr, 1);
        den = transform_terms(den, g, nullptr, 1);
    }

    if (num.size() > 1 && !coprime) {
        DenseContext ctx;
        ctx.scan(num);
        ctx.scan(den);
        ctx.finish();
        auto dn = ctx.to_dense(num);
        auto dd = ctx.to_dense(den);
        detail::IPoly common = detail::gcd(dn.poly, dd.poly);
        if (!common.is_constant()) {
            num = ctx.from_dense(detail::divexact(dn.poly, common), dn.shift, dn.scale);
            den = ctx.from_dense(detail::divexact(dd.poly, common), dd.shift, dd.scale);
        }
    }

    if (den.size() == 1) return fraction_impl(std::move(num), std::move(den), true);

    // Unit normalisation: clear the leading denominator term's exp factor and
    // make the denominator primitive with a positive leading coefficient.
    const auto& [lead_m, lead_c] = *den.terms().rbegin();
    std::shared_ptr<const Expr> shift = lead_m.exp_arg;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : den.terms()) {
        den_lcm = lcm(den_lcm, Integer(c.get_den()));
        num_gcd = gcd(num_gcd, Integer(c.get_num()));
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (lead_c < 0) scale = -scale;
    e.num_ = transform_terms(num, {}, shift, scale);
    e.den_ = transform_terms(den, {}, shift, scale);
    return e;
}

// ---------------------------------------------------------------- Expr

Expr Expr::variable(const std::string& name) {
    Monomial m;
    m.powers.emplace_back(Symbol::variable(name), 1);
    return polynomial(Poly::term(std::move(m), 1));
}

Expr Expr::function(const std::string& name, std::vector<std::string> args, std::vector<std::string> partials) {
    Monomial m;
    m.powers.emplace_back(Symbol::function(name, std::move(args), std::move(partials)), 1);
    return polynomial(Poly::term(std::move(m), 1));
}

Expr Expr::exp(const Expr& arg) {
    if (arg.has_exp()) throw DomainError("nested exponential: exp(" + arg.str() + ")");
    if (arg.has_function()) throw DomainError("exp of an opaque function symbol: exp(" + arg.str() + ")");
    if (arg.is_zero()) return Expr(1);
    Monomial m;
    m.exp_arg = std::make_shared<const Expr>(arg);
    return polynomial(Poly::term(std::move(m), 1));
}

std::optional<Rational> Expr::constant_value() const {
    if (!is_constant()) return std::nullopt;
    return num_.constant_term();
}

namespace {

bool poly_has_exp(const Poly& p) {
    for (const auto& [m, c] : p.terms())
        if (m.exp_arg) return true;
    return false;
}

bool poly_has_function(const Poly& p) {
    for (const auto& [m, c] : p.terms())
        for (const auto& [s, k] : m.powers)
            if (!s.is_variable()) return true;
    return false;
}

}  // namespace

bool Expr::has_exp() const { return poly_has_exp(num_) || poly_has_exp(den_); }
bool Expr::has_function() const { return poly_has_function(num_) || poly_has_function(den_); }

Expr Expr::operator-() const {
    Expr r = *this;
    r.num_ = -r.num_;
    return r;
}

// Sums and products of reduced fractions only need gcds of the smaller
// parts; the results are reduced by construction.
Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return Expr::polynomial(a.num_ + b.num_);
    if (a.den_ == b.den_) return Expr::fraction(a.num_ + b.num_, a.den_);
    if (a.den_.is_one()) return Expr::fraction_impl(a.num_ * b.den_ + b.num_, b.den_, true);
    if (b.den_.is_one()) return Expr::fraction_impl(a.num_ + b.num_ * a.den_, a.den_, true);
    auto s = split_common(a.den_, b.den_);
    if (s.trivial) return Expr::fraction_impl(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, true);
    Poly t = a.num_ * s.b + b.num_ * s.a;
    if (t.is_zero()) return Expr();
    auto r = split_common(t, s.g);
    if (r.trivial) return Expr::fraction_impl(std::move(t), s.a * b.den_, true);
    return Expr::fraction_impl(std::move(r.a), s.a * s.b * r.b, true);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.den_.is_one() && b.den_.is_one()) return Expr::polynomial(a.num_ * b.num_);
    Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (!bd.is_one()) {
        auto s = split_common(an, bd);
        if (!s.trivial) {
            an = std::move(s.a);
            bd = std::move(s.b);
        }
    }
    if (!ad.is_one()) {
        auto s = split_common(bn, ad);
        if (!s.trivial) {
            bn = std::move(s.a);
            ad = std::move(s.b);
        }
    }
    return Expr::fraction_impl(an * bn, ad * bd, true);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw DivisionByZero("division by zero");
    return a * Expr::fraction_impl(b.den_, b.num_, true);
}

Expr pow(const Expr& base, int exponent) {
    if (exponent < 0) return Expr(1) / pow(base, -exponent);
    Expr result(1);
    Expr b = base;
    while (exponent > 0) {
        if (exponent & 1) result = result * b;
        exponent >>= 1;
        if (exponent) b = b * b;
    }
    return result;
}

std::string Expr::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

bool is_zero(const Expr& e) { return e.is_zero(); }

// ---------------------------------------------------------------- calculus

namespace {

Expr diff_poly(const Poly& p, const std::string& var) {
    Poly acc;
    Expr extra;
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < m.powers.size(); ++i) {
            const auto& [s, k] = m.powers[i];
            Monomial factor;
            if (s.is_variable()) {
                if (s.name != var) continue;
            } else {
                if (std::find(s.args.begin(), s.args.end(), var) == s.args.end()) continue;
                auto partials = s.partials;
                partials.push_back(var);
                factor.powers.emplace_back(Symbol::function(s.name, s.args, std::move(partials)), 1);
            }
            Monomial rest = m;
            if (k == 1)
                rest.powers.erase(rest.powers.begin() + static_cast<std::ptrdiff_t>(i));
            else
                rest.powers[i].second = k - 1;
            acc.add_term(factor.is_one() ? rest : rest * factor, c * k);
        }
        if (m.exp_arg) {
            Expr d = diff(*m.exp_arg, var);
            if (d.is_zero()) continue;
            Poly self = Poly::term(m, c);
            if (d.is_polynomial())
                acc = acc + self * d.numerator();
            else
                extra += Expr::polynomial(std::move(self)) * d;
        }
    }
    Expr out = Expr::polynomial(std::move(acc));
    return extra.is_zero() ? out : out + extra;
}

}  // namespace

Expr diff(const Expr& e, const std::string& var) {
    if (e.is_polynomial()) return diff_poly(e.numerator(), var);
    Expr n = Expr::polynomial(e.numerator());
    Expr d = Expr::polynomial(e.denominator());
    return (diff_poly(e.numerator(), var) * d - n * diff_poly(e.denominator(), var)) / (d * d);
}

namespace {

Expr substitute_poly(const Poly& p, const std::map<std::string, Expr>& bindings) {
    Expr out;
    for (const auto& [m, c] : p.terms()) {
        Expr term(c);
        Monomial kept;
        for (const auto& [s, k] : m.powers) {
            if (s.is_variable()) {
                auto it = bindings.find(s.name);
                if (it != bindings.end()) {
                    term *= pow(it->second, k);
                    continue;
                }
            } else {
                for (const auto& a : s.args)
                    if (bindings.count(a))
                        throw DomainError("cannot substitute into the argument '" + a + "' of opaque symbol " +
                                          s.str());
            }
            kept.powers.emplace_back(s, k);
        }
        if (m.exp_arg) {
            Expr arg = substitute(*m.exp_arg, bindings);
            if (arg.has_exp() || arg.has_function())
                throw DomainError("substitution leaves the expression domain: exp(" + arg.str() + ")");
            term *= Expr::exp(arg);
        }
        term *= Expr::polynomial(Poly::term(std::move(kept), 1));
        out += term;
    }
    return out;
}

}  // namespace

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
    if (bindings.empty()) return e;
    Expr n = substitute_poly(e.numerator(), bindings);
    if (e.is_polynomial()) return n;
    return n / substitute_poly(e.denominator(), bindings);
}

namespace {

void collect_variables(const Poly& p, std::set<std::string>& out) {
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [s, k] : m.powers) {
            if (s.is_variable())
                out.insert(s.name);
            else
                out.insert(s.args.begin(), s.args.end());
        }
        if (m.exp_arg) {
            collect_variables(m.exp_arg->numerator(), out);
            collect_variables(m.exp_arg->denominator(), out);
        }
    }
}

void collect_functions(const Poly& p, std::set<std::string>& out) {
    for (const auto& [m, c] : p.terms())
        for (const auto& [s, k] : m.powers)
            if (!s.is_variable()) out.insert(s.str());
}

}  // namespace

std::set<std::string> variables(const Expr& e) {
    std::set<std::string> out;
    collect_variables(e.numerator(), out);
    collect_variables(e.denominator(), out);
    return out;
}

std::set<std::string> function_atoms(const Expr& e) {
    std::set<std::string> out;
    collect_functions(e.numerator(), out);
    collect_functions(e.denominator(), out);
    return out;
}

// ---------------------------------------------------------------- evaluation

namespace {

Rational power(const Rational& base, long k) {
    if (k == 0) return 1;
    if (base == 0) {
        if (k < 0) throw SingularPoint("zero raised to a negative power");
        return 0;
    }
    unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), n);
    Rational r(num, den);
    r.canonicalize();
    return k < 0 ? Rational(1 / r) : r;
}

Rational need(AtomValues& values, const std::string& key, AtomKind kind) {
    auto v = values.value(key, kind);
    if (!v) throw UnassignedAtom("no value for atom " + key);
    return *v;
}

Rational exp_value(const Expr& arg, AtomValues& values) {
    if (auto v = values.value("exp(" + arg.str() + ")", AtomKind::Exp)) return *v;
    Rational out = 1;
    const bool poly_arg = arg.is_polynomial();
    for (const auto& [m, c] : arg.numerator().terms()) {
        if (c.get_den() != 1)
            throw UnassignedAtom("exp(" + arg.str() + ") has a non-integral multiple of a basis exponential");
        Expr basis = Expr::polynomial(Poly::term(m, 1));
        if (!poly_arg) basis = basis / Expr::polynomial(arg.denominator());
        out *= power(need(values, "exp(" + basis.str() + ")", AtomKind::ExpBasis), c.get_num().get_si());
    }
    return out;
}

Rational evaluate_poly(const Poly& p, AtomValues& values) {
    Rational sum = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (const auto& [s, k] : m.powers)
            t *= power(need(values, s.is_variable() ? s.name : s.str(),
                            s.is_variable() ? AtomKind::Variable : AtomKind::Function),
                       k);
        if (m.exp_arg) t *= exp_value(*m.exp_arg, values);
        sum += t;
    }
    return sum;
}

class MapValues : public AtomValues {
public:
    explicit MapValues(const std::map<std::string, Rational>& point) : point_(point) {}
    std::optional<Rational> value(const std::string& key, AtomKind) override {
        auto it = point_.find(key);
        if (it == point_.end()) return std::nullopt;
        return it->second;
    }

private:
    const std::map<std::string, Rational>& point_;
};

}  // namespace

Rational evaluate(const Expr& e, AtomValues& values) {
    Rational n = evaluate_poly(e.numerator(), values);
    if (e.is_polynomial()) return n;
    Rational d = evaluate_poly(e.denominator(), values);
    if (d == 0) throw SingularPoint("denominator " + e.denominator().str() + " vanishes at the evaluation point");
    return n / d;
}

Rational eval_at(const Expr& e, const std::map<std::string, Rational>& point) {
    MapValues values(point);
    return evaluate(e, values);
}

}  // namespace liext
