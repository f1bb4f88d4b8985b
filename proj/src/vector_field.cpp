#include "liext/vector_field.hpp"

#include <algorithm>
#include <set>

#include "liext/errors.hpp"
#include "liext/linalg.hpp"

namespace liext {

std::vector<std::string> Chart::coordinates() const {
    std::vector<std::string> out = independent;
    out.insert(out.end(), dependent.begin(), dependent.end());
    out.insert(out.end(), ancillary.begin(), ancillary.end());
    return out;
}

bool Chart::contains(const std::string& name) const {
    auto all = coordinates();
    return std::find(all.begin(), all.end(), name) != all.end();
}

bool Chart::is_ancillary(const std::string& name) const {
    return std::find(ancillary.begin(), ancillary.end(), name) != ancillary.end();
}

std::vector<std::string> Chart::arguments_of(const std::string& dependent_var) const {
    auto it = depends_on.find(dependent_var);
    if (it == depends_on.end() || it->second.empty()) return independent;
    return it->second;
}

void Chart::validate() const {
    std::set<std::string> seen;
    for (const auto& n : coordinates()) {
        if (n.empty()) throw SpecError("empty coordinate name");
        if (!seen.insert(n).second) throw SpecError("coordinate '" + n + "' declared twice");
        if (canonical_identifier(n) != n)
            throw SpecError("coordinate '" + n + "' is not in canonical form (" + canonical_identifier(n) + ")");
    }
    for (const auto& [dep, args] : depends_on) {
        if (std::find(dependent.begin(), dependent.end(), dep) == dependent.end())
            throw SpecError("'" + dep + "' is not a dependent variable");
        for (const auto& a : args)
            if (std::find(independent.begin(), independent.end(), a) == independent.end())
                throw SpecError("'" + dep + "' depends on undeclared independent variable '" + a + "'");
    }
}

VectorField::VectorField(const std::map<std::string, Expr>& coefficients) {
    for (const auto& [v, c] : coefficients)
        if (!c.is_zero()) coeffs_.emplace(v, c);
}

VectorField VectorField::partial(const std::string& var) { return VectorField({{var, Expr(1)}}); }

Expr VectorField::coefficient(const std::string& var) const {
    auto it = coeffs_.find(var);
    return it == coeffs_.end() ? Expr() : it->second;
}

void VectorField::set(const std::string& var, const Expr& value) {
    if (value.is_zero())
        coeffs_.erase(var);
    else
        coeffs_[var] = value;
}

VectorField VectorField::without(const std::string& var) const {
    VectorField out = *this;
    out.coeffs_.erase(var);
    return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    for (const auto& [v, c] : b.coeffs_) out.set(v, out.coefficient(v) + c);
    return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    for (const auto& [v, c] : b.coeffs_) out.set(v, out.coefficient(v) - c);
    return out;
}

VectorField operator*(const Expr& f, const VectorField& v) {
    VectorField out;
    for (const auto& [var, c] : v.coeffs_) out.set(var, f * c);
    return out;
}

std::string VectorField::str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [var, c] : coeffs_) {
        std::string body;
        bool negative = false;
        if (c.is_polynomial() && c.numerator().size() == 1) {
            Expr mag = c;
            if (c.numerator().terms().begin()->second < 0) {
                negative = true;
                mag = -c;
            }
            body = mag == Expr(1) ? "" : mag.str() + "*";
        } else {
            body = "(" + c.str() + ")*";
        }
        body += "d/d" + var;
        if (first)
            out = negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

Expr apply(const VectorField& v, const Expr& e) {
    std::set<std::string> vars = variables(e);
    Expr acc;
    for (const auto& [var, c] : v.coefficients())
        if (vars.count(var)) acc += c * diff(e, var);
    return acc;
}

VectorField commutator(const VectorField& a, const VectorField& b) {
    std::set<std::string> support;
    for (const auto& [v, c] : a.coefficients()) support.insert(v);
    for (const auto& [v, c] : b.coefficients()) support.insert(v);
    VectorField out;
    for (const auto& s : support) out.set(s, apply(a, b.coefficient(s)) - apply(b, a.coefficient(s)));
    return out;
}

bool StructureConstants::is_antisymmetric() const {
    for (std::size_t m = 0; m < dim_; ++m)
        for (std::size_t n = 0; n < dim_; ++n)
            for (std::size_t k = 0; k < dim_; ++k)
                if (at(m, n, k) != -at(n, m, k)) return false;
    return true;
}

bool StructureConstants::satisfies_jacobi() const {
    // sum_l c[m][n][l] c[l][p][k] + cyclic = 0
    for (std::size_t m = 0; m < dim_; ++m)
        for (std::size_t n = 0; n < dim_; ++n)
            for (std::size_t p = 0; p < dim_; ++p)
                for (std::size_t k = 0; k < dim_; ++k) {
                    Rational s = 0;
                    for (std::size_t l = 0; l < dim_; ++l)
                        s += at(m, n, l) * at(l, p, k) + at(n, p, l) * at(l, m, k) + at(p, m, l) * at(l, n, k);
                    if (s != 0) return false;
                }
    return true;
}

std::vector<std::string> StructureConstants::describe(const std::vector<std::string>& names) const {
    std::vector<std::string> out;
    for (std::size_t m = 0; m < dim_; ++m)
        for (std::size_t n = m + 1; n < dim_; ++n) {
            std::string rhs;
            for (std::size_t k = 0; k < dim_; ++k) {
                const Rational& c = at(m, n, k);
                if (c == 0) continue;
                Rational mag = abs(c);
                std::string term = (mag == 1 ? "" : to_string(mag) + "*") + names[k];
                if (rhs.empty())
                    rhs = (c < 0 ? "-" : "") + term;
                else
                    rhs += (c < 0 ? " - " : " + ") + term;
            }
            out.push_back("[" + names[m] + ", " + names[n] + "] = " + (rhs.empty() ? "0" : rhs));
        }
    return out;
}

namespace {

std::vector<std::string> support_of(const std::vector<VectorField>& fields) {
    std::set<std::string> s;
    for (const auto& f : fields)
        for (const auto& [v, c] : f.coefficients()) s.insert(v);
    return {s.begin(), s.end()};
}

}  // namespace

std::size_t generic_rank(const std::vector<VectorField>& fields, Sampler& sampler) {
    // Independence over the constants: coefficient rows sampled at several
    // points side by side.
    auto support = support_of(fields);
    std::vector<std::vector<Rational>> rows(fields.size());
    for_generic_points(sampler, static_cast<int>(fields.size()) + 2, [&](GenericPoint& p) {
        std::vector<std::vector<Rational>> block(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i)
            for (const auto& s : support) block[i].push_back(evaluate(fields[i].coefficient(s), p));
        for (std::size_t i = 0; i < fields.size(); ++i) rows[i].insert(rows[i].end(), block[i].begin(), block[i].end());
    });
    Matrix m(0, 0);
    for (const auto& r : rows) m.append_row(r);
    return fields.empty() ? 0 : rank(m);
}

StructureConstants structure_constants(const std::vector<VectorField>& basis, std::uint64_t seed) {
    const std::size_t dim = basis.size();
    Sampler sampler(seed);
    if (generic_rank(basis, sampler) < dim) throw DependentBasis("operators are linearly dependent");

    StructureConstants out(dim);
    for (std::size_t m = 0; m < dim; ++m)
        for (std::size_t n = m + 1; n < dim; ++n) {
            VectorField br = commutator(basis[m], basis[n]);
            std::vector<VectorField> all = basis;
            all.push_back(br);
            auto support = support_of(all);

            // Linear system sum_k c_k Q_k = [Q_m, Q_n] sampled at generic points.
            Matrix a(0, 0);
            std::vector<Rational> rhs;
            for_generic_points(sampler, static_cast<int>(dim) + 2, [&](GenericPoint& p) {
                std::vector<std::vector<Rational>> rows;
                std::vector<Rational> vals;
                for (const auto& s : support) {
                    std::vector<Rational> row;
                    for (const auto& q : basis) row.push_back(evaluate(q.coefficient(s), p));
                    rows.push_back(std::move(row));
                    vals.push_back(evaluate(br.coefficient(s), p));
                }
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    a.append_row(rows[i]);
                    rhs.push_back(vals[i]);
                }
            });
            auto sol = solve(a, rhs);
            VectorField residual = br;
            if (sol) {
                for (std::size_t k = 0; k < dim; ++k) residual = residual - Expr((*sol)[k]) * basis[k];
            }
            if (!sol || !residual.is_zero())
                throw NotClosed("commutator of operators " + std::to_string(m + 1) + " and " + std::to_string(n + 1) +
                                " is not in the span: " + br.str());
            for (std::size_t k = 0; k < dim; ++k) {
                out.at(m, n, k) = (*sol)[k];
                out.at(n, m, k) = -(*sol)[k];
            }
        }
    return out;
}

VectorField pushforward(const VectorField& v, const std::map<std::string, Expr>& forward,
                        const std::map<std::string, Expr>& inverse) {
    // Inverse check: forward(inverse(new)) = new and inverse(forward(old)) = old.
    for (const auto& [nv, f] : forward) {
        Expr back = substitute(f, inverse);
        if (!(back - Expr::variable(nv)).is_zero())
            throw NotInverse("forward map for '" + nv + "' does not invert: got " + back.str());
    }
    for (const auto& [ov, g] : inverse) {
        Expr back = substitute(g, forward);
        if (!(back - Expr::variable(ov)).is_zero())
            throw NotInverse("inverse map for '" + ov + "' does not invert: got " + back.str());
    }
    VectorField out;
    for (const auto& [nv, f] : forward) out.set(nv, substitute(apply(v, f), inverse));
    for (const auto& [var, c] : v.coefficients()) {
        if (inverse.count(var) || forward.count(var)) continue;
        out.set(var, substitute(c, inverse));
    }
    return out;
}

}  // namespace liext
