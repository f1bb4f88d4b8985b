#include "poly_gcd.hpp"

#include <algorithm>
#include <stdexcept>

namespace liext::detail {

IPoly IPoly::constant(std::size_t n, const mpz_class& c) {
    IPoly p(n);
    if (c != 0) p.terms.emplace(Exponents(n, 0), c);
    return p;
}

bool IPoly::is_constant() const {
    if (terms.empty()) return true;
    if (terms.size() > 1) return false;
    for (int e : terms.begin()->first)
        if (e != 0) return false;
    return true;
}

int IPoly::degree(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms) d = std::max(d, e[var]);
    return d;
}

void IPoly::add_term(const Exponents& e, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

IPoly operator+(const IPoly& a, const IPoly& b) {
    IPoly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
}

IPoly operator-(const IPoly& a, const IPoly& b) {
    IPoly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, -c);
    return r;
}

IPoly operator*(const IPoly& a, const IPoly& b) {
    IPoly r(a.nvars);
    Exponents e(a.nvars);
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            for (std::size_t i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

IPoly operator*(const IPoly& a, const mpz_class& c) {
    IPoly r(a.nvars);
    if (c == 0) return r;
    for (const auto& [e, v] : a.terms) r.terms.emplace_hint(r.terms.end(), e, v * c);
    return r;
}

mpz_class integer_content(const IPoly& p) {
    mpz_class g = 0;
    for (const auto& [e, c] : p.terms) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

bool try_divexact(const IPoly& a, const IPoly& b, IPoly* quotient) {
    if (b.is_zero()) throw std::logic_error("divexact: division by zero polynomial");
    IPoly q(a.nvars);
    IPoly r = a;
    const auto& [lb_e, lb_c] = *b.terms.rbegin();
    Exponents e(a.nvars), t(a.nvars);
    while (!r.is_zero()) {
        const auto& [lr_e, lr_c] = *r.terms.rbegin();
        for (std::size_t i = 0; i < a.nvars; ++i) {
            e[i] = lr_e[i] - lb_e[i];
            if (e[i] < 0) return false;
        }
        if (!mpz_divisible_p(lr_c.get_mpz_t(), lb_c.get_mpz_t())) return false;
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), lr_c.get_mpz_t(), lb_c.get_mpz_t());
        q.add_term(e, c);
        for (const auto& [eb, cb] : b.terms) {
            for (std::size_t i = 0; i < a.nvars; ++i) t[i] = e[i] + eb[i];
            r.add_term(t, -c * cb);
        }
    }
    if (quotient) *quotient = std::move(q);
    return true;
}

IPoly divexact(const IPoly& a, const IPoly& b) {
    IPoly q;
    if (!try_divexact(a, b, &q)) throw std::logic_error("divexact: not divisible");
    return q;
}

namespace {

// Coefficients of `p` viewed as a polynomial in `var`; keys are powers of var.
std::map<int, IPoly> coefficients_in(const IPoly& p, std::size_t var) {
    std::map<int, IPoly> out;
    for (const auto& [e, c] : p.terms) {
        Exponents rest = e;
        rest[var] = 0;
        auto [it, inserted] = out.try_emplace(e[var], p.nvars);
        it->second.terms.emplace(std::move(rest), c);
    }
    return out;
}

IPoly normalise_sign(IPoly p) {
    if (!p.is_zero() && p.terms.rbegin()->second < 0) return p * mpz_class(-1);
    return p;
}

IPoly gcd_impl(const IPoly& a, const IPoly& b);

IPoly content_in(const IPoly& p, std::size_t var) {
    auto coeffs = coefficients_in(p, var);
    IPoly g(p.nvars);
    for (auto& [d, c] : coeffs) {
        g = gcd_impl(g, c);
        if (g.is_constant() && g.terms.begin()->second == 1) break;
    }
    return g;
}

IPoly primitive_in(const IPoly& p, std::size_t var) {
    if (p.is_zero()) return p;
    return divexact(p, content_in(p, var));
}

// Leading coefficient with respect to `var` together with its degree.
IPoly leading_coefficient_in(const IPoly& p, std::size_t var, int deg) {
    IPoly lc(p.nvars);
    for (const auto& [e, c] : p.terms) {
        if (e[var] == deg) {
            Exponents rest = e;
            rest[var] = 0;
            lc.terms.emplace(std::move(rest), c);
        }
    }
    return lc;
}

IPoly shift(const IPoly& p, std::size_t var, int by) {
    IPoly r(p.nvars);
    for (const auto& [e, c] : p.terms) {
        Exponents t = e;
        t[var] += by;
        r.terms.emplace(std::move(t), c);
    }
    return r;
}

// Pseudo-remainder of a by b in `var` (without the exact power of lc(b)).
IPoly pseudo_remainder(IPoly a, const IPoly& b, std::size_t var) {
    const int db = b.degree(var);
    const IPoly lcb = leading_coefficient_in(b, var, db);
    int da = a.degree(var);
    while (!a.is_zero() && da >= db) {
        IPoly lca = leading_coefficient_in(a, var, da);
        a = a * lcb - shift(lca * b, var, da - db);
        da = a.degree(var);
    }
    return a;
}

bool is_unit(const IPoly& p) { return p.is_constant() && !p.is_zero() && abs(p.terms.begin()->second) == 1; }

// gcd(a, b) when a does not involve var: a against each coefficient of b.
IPoly gcd_with_coefficients(IPoly a, const IPoly& b, std::size_t var) {
    auto coeffs = coefficients_in(b, var);
    std::vector<const IPoly*> order;
    for (const auto& [d, c] : coeffs) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const IPoly* x, const IPoly* y) { return x->terms.size() < y->terms.size(); });
    for (const IPoly* c : order) {
        a = gcd_impl(a, *c);
        if (is_unit(a)) break;
    }
    return a;
}

IPoly gcd_impl(const IPoly& a, const IPoly& b) {
    if (a.is_zero()) return normalise_sign(b);
    if (b.is_zero()) return normalise_sign(a);
    if (a.is_constant() || b.is_constant()) {
        mpz_class g = gcd(integer_content(a), integer_content(b));
        return IPoly::constant(a.nvars, g);
    }

    // A variable present in only one argument cannot occur in the gcd.
    std::size_t var = a.nvars;
    int best = 0;
    for (std::size_t i = 0; i < a.nvars; ++i) {
        int da = a.degree(i), db = b.degree(i);
        if (da == 0 && db > 0) return normalise_sign(gcd_with_coefficients(a, b, i));
        if (db == 0 && da > 0) return normalise_sign(gcd_with_coefficients(b, a, i));
        int d = std::max(da, db);
        if (d > 0 && (var == a.nvars || d < best)) {
            var = i;
            best = d;
        }
    }

    const IPoly& small = a.terms.size() <= b.terms.size() ? a : b;
    const IPoly& large = a.terms.size() <= b.terms.size() ? b : a;
    if (try_divexact(large, small, nullptr)) return normalise_sign(small);

    IPoly ca = content_in(a, var);
    IPoly cb = content_in(b, var);
    IPoly c = gcd_impl(ca, cb);
    IPoly p = divexact(a, ca);
    IPoly q = divexact(b, cb);

    for (;;) {
        if (p.degree(var) < q.degree(var)) std::swap(p, q);
        IPoly r = pseudo_remainder(p, q, var);
        if (r.is_zero()) break;
        if (r.degree(var) == 0) {
            q = IPoly::constant(a.nvars, 1);
            break;
        }
        p = std::move(q);
        q = primitive_in(r, var);
    }
    q = primitive_in(q, var);
    return normalise_sign(c * q);
}

}  // namespace

IPoly gcd(const IPoly& a, const IPoly& b) { return gcd_impl(a, b); }

}  // namespace liext::detail
