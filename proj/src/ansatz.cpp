#include "liext/ansatz.hpp"

#include <cctype>
#include <functional>

#include "liext/errors.hpp"

namespace liext {

Ansatz::Ansatz(std::vector<Expr> basis, std::string description) : description_(std::move(description)) {
    for (auto& e : basis) {
        if (e.is_zero()) throw DependentBasis("ansatz contains the zero element");
        bool dup = false;
        for (const auto& b : basis_) dup = dup || b == e;
        if (!dup) basis_.push_back(std::move(e));
    }
}

Ansatz Ansatz::polynomial(const std::vector<std::string>& vars, int max_degree) {
    if (max_degree < 0) throw Error("ansatz degree must be non-negative");
    std::vector<Expr> out;
    std::vector<int> exps(vars.size(), 0);
    // Exponent tuples of degree d in lexicographic order (first variable highest).
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == vars.size() || vars.empty()) {
            if (!vars.empty()) exps[i] = left;
            if (vars.empty() && left != 0) return;
            Expr m(1);
            for (std::size_t k = 0; k < vars.size(); ++k) m *= pow(Expr::variable(vars[k]), exps[k]);
            out.push_back(m);
            return;
        }
        for (int e = left; e >= 0; --e) {
            exps[i] = e;
            rec(i + 1, left - e);
        }
    };
    for (int d = 0; d <= max_degree; ++d) rec(0, d);
    std::string desc = "poly(";
    for (std::size_t i = 0; i < vars.size(); ++i) desc += (i ? ", " : "") + vars[i];
    desc += "; deg<=" + std::to_string(max_degree) + ")";
    return Ansatz(std::move(out), desc);
}

Ansatz Ansatz::times(const Ansatz& other) const {
    std::vector<Expr> out;
    for (const auto& a : basis_)
        for (const auto& b : other.basis_) out.push_back(a * b);
    return Ansatz(std::move(out), description_ + " * " + other.description_);
}

namespace {

// Splits at top-level occurrences of `sep` (outside (), {}, quotes).
std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    bool quoted = false;
    std::string cur;
    for (char c : s) {
        if (c == '"') quoted = !quoted;
        if (!quoted) {
            if (c == '(' || c == '{') ++depth;
            if (c == ')' || c == '}') --depth;
            if (c == sep && depth == 0) {
                out.push_back(cur);
                cur.clear();
                continue;
            }
        }
        cur += c;
    }
    out.push_back(cur);
    return out;
}

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

Ansatz parse_factor(const std::string& text) {
    std::string t = trim(text);
    auto bad = [&](const std::string& why) -> ParseError { return ParseError("bad ansatz factor '" + t + "': " + why, 0); };
    if (t.size() >= 2 && t.front() == '{' && t.back() == '}') {
        std::vector<Expr> elems;
        for (const auto& part : split_top(t.substr(1, t.size() - 2), ',')) {
            std::string p = unquote(trim(part));
            if (p.empty()) throw bad("empty element");
            elems.push_back(parse(p));
        }
        return Ansatz(std::move(elems), t);
    }
    if (t.rfind("poly", 0) == 0) {
        std::string rest = trim(t.substr(4));
        if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') throw bad("expected poly(vars; deg<=N)");
        auto parts = split_top(rest.substr(1, rest.size() - 2), ';');
        if (parts.size() != 2) throw bad("expected one ';'");
        std::vector<std::string> vars;
        for (const auto& v : split_top(parts[0], ',')) {
            std::string name = trim(v);
            if (name.empty()) throw bad("empty variable");
            vars.push_back(canonical_identifier(name));
        }
        std::string deg = trim(parts[1]);
        if (deg.rfind("deg", 0) != 0) throw bad("expected deg<=N");
        deg = trim(deg.substr(3));
        if (deg.rfind("<=", 0) != 0) throw bad("expected deg<=N");
        deg = trim(deg.substr(2));
        if (deg.empty() || deg.find_first_not_of("0123456789") != std::string::npos) throw bad("degree must be an integer");
        return Ansatz::polynomial(vars, std::stoi(deg));
    }
    throw bad("expected poly(...) or {...}");
}

}  // namespace

Ansatz Ansatz::parse(std::string_view text) {
    auto factors = split_top(text, '*');
    Ansatz acc = parse_factor(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) acc = acc.times(parse_factor(factors[i]));
    acc.description_ = trim(text);
    return acc;
}

SpanSolver::SpanSolver(const Ansatz& ansatz, std::uint64_t seed) : ansatz_(ansatz) {
    const std::size_t n = ansatz_.size();
    Sampler sampler(seed);
    values_ = Matrix(0, 0);
    for_generic_points(sampler, static_cast<int>(n) + 3, [&](GenericPoint& p) {
        std::vector<Rational> row;
        for (const auto& b : ansatz_.basis()) row.push_back(evaluate(b, p));
        values_.append_row(row);
        points_.push_back(p);
    });
    if (n > 0 && rank(values_) < n) throw DependentBasis("ansatz elements are linearly dependent: " + ansatz_.description());
}

std::optional<std::vector<Rational>> SpanSolver::coordinates(const Expr& e) {
    const std::size_t n = ansatz_.size();
    if (e.is_zero()) return std::vector<Rational>(n, 0);
    if (n == 0) return std::nullopt;
    std::vector<Rational> rhs;
    try {
        for (auto& p : points_) rhs.push_back(evaluate(e, p));
    } catch (const SingularPoint&) {
        return std::nullopt;
    }
    auto sol = solve(values_, rhs);
    if (!sol) return std::nullopt;
    if (!(combine(*sol) - e).is_zero()) return std::nullopt;
    return sol;
}

Expr SpanSolver::combine(const std::vector<Rational>& coords) const {
    Expr acc;
    for (std::size_t j = 0; j < coords.size(); ++j)
        if (coords[j] != 0) acc += Expr(coords[j]) * ansatz_.basis()[j];
    return acc;
}

}  // namespace liext
