#include "liext/jet.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "liext/errors.hpp"

namespace liext {

MultiIndex MultiIndex::plus(const std::string& var) const {
    MultiIndex out = *this;
    out.vars.insert(std::upper_bound(out.vars.begin(), out.vars.end(), var), var);
    return out;
}

std::string MultiIndex::suffix() const {
    std::string s;
    for (const auto& v : vars) s += v;
    return s;
}

namespace {

// All sorted multisets of size k drawn from `vars` (which is sorted).
void multisets(const std::vector<std::string>& vars, std::size_t k, std::size_t start, MultiIndex& cur,
               std::vector<MultiIndex>& out) {
    if (cur.vars.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < vars.size(); ++i) {
        cur.vars.push_back(vars[i]);
        multisets(vars, k, i, cur, out);
        cur.vars.pop_back();
    }
}

}  // namespace

JetSpace::JetSpace(Chart base, int order) : base_(std::move(base)), order_(order) {
    if (order < 0) throw Error("jet order must be non-negative");
    base_.validate();
    for (int k = 1; k <= order; ++k) {
        for (const auto& u : base_.dependent) {
            auto args = base_.arguments_of(u);
            for (const auto& a : args)
                if (a.size() != 1)
                    throw Error("independent variable '" + a + "' must be a single letter to name jet coordinates");
            std::sort(args.begin(), args.end());
            std::vector<MultiIndex> idx;
            MultiIndex cur;
            multisets(args, static_cast<std::size_t>(k), 0, cur, idx);
            for (auto& j : idx) {
                std::string name = u + "_" + j.suffix();
                if (base_.contains(name)) throw Error("jet coordinate '" + name + "' clashes with a base coordinate");
                coords_.push_back({u, j, name});
            }
        }
    }
}

std::string JetSpace::name_of(const std::string& dependent, const MultiIndex& index) const {
    if (index.vars.empty()) return dependent;
    return dependent + "_" + index.suffix();
}

const JetCoordinate* JetSpace::find(const std::string& name) const {
    for (const auto& c : coords_)
        if (c.name == name) return &c;
    return nullptr;
}

int JetSpace::order_of(const std::string& name) const {
    if (std::find(base_.dependent.begin(), base_.dependent.end(), name) != base_.dependent.end()) return 0;
    if (const auto* c = find(name)) return static_cast<int>(c->index.order());
    return -1;
}

std::vector<std::string> JetSpace::all_coordinates() const {
    std::vector<std::string> out = base_.coordinates();
    for (const auto& c : coords_) out.push_back(c.name);
    return out;
}

JetSpace build_jet(const Chart& base, int order) { return JetSpace(base, order); }

namespace {

bool depends(const Chart& base, const std::string& u, const std::string& var) {
    auto args = base.arguments_of(u);
    return std::find(args.begin(), args.end(), var) != args.end();
}

}  // namespace

Expr total_derivative(const JetSpace& jet, const std::string& var, const Expr& e) {
    const Chart& base = jet.base();
    if (std::find(base.independent.begin(), base.independent.end(), var) == base.independent.end())
        throw Error("'" + var + "' is not an independent variable");
    Expr acc = diff(e, var);
    for (const auto& name : variables(e)) {
        int k = jet.order_of(name);
        if (k < 0) continue;
        std::string u = name;
        MultiIndex j;
        if (k > 0) {
            const JetCoordinate* c = jet.find(name);
            u = c->dependent;
            j = c->index;
        }
        if (!depends(base, u, var)) continue;
        Expr d = diff(e, name);
        if (d.is_zero()) continue;
        if (k >= jet.order())
            throw OrderOverflow("total derivative of " + name + " needs order " + std::to_string(k + 1) +
                                " but the jet space has order " + std::to_string(jet.order()));
        acc += Expr::variable(jet.name_of(u, j.plus(var))) * d;
    }
    return acc;
}

namespace {

// u_J for a dependent u, whatever the order.
bool looks_like_jet(const Chart& base, const std::string& name) {
    auto us = name.find('_');
    if (us == std::string::npos || base.contains(name)) return false;
    const std::string u = name.substr(0, us);
    return std::find(base.dependent.begin(), base.dependent.end(), u) != base.dependent.end();
}

struct Split {
    std::map<std::string, Expr> xi;   // independent components
    std::map<std::string, Expr> eta;  // dependent components
};

Split split_field(const VectorField& v, const JetSpace& jet) {
    const Chart& base = jet.base();
    Split s;
    for (const auto& [var, c] : v.coefficients()) {
        if (!base.contains(var))
            throw Error("cannot prolong: '" + var + "' is not a base coordinate (already prolonged?)");
        for (const auto& name : variables(c)) {
            if (looks_like_jet(base, name))
                throw Error("cannot prolong: coefficient of d/d" + var + " involves jet coordinate " + name);
            if (base.is_ancillary(name) && !base.is_ancillary(var))
                throw Error("cannot prolong: coefficient of d/d" + var + " involves ancillary " + name);
        }
        if (std::find(base.independent.begin(), base.independent.end(), var) != base.independent.end())
            s.xi.emplace(var, c);
        else if (!base.is_ancillary(var))
            s.eta.emplace(var, c);
    }
    return s;
}

}  // namespace

VectorField prolong(const VectorField& v, const JetSpace& jet) {
    const Chart& base = jet.base();
    Split s = split_field(v, jet);
    VectorField out = v;

    // Derivatives of xi, cached per (i, k).
    std::map<std::pair<std::string, std::string>, Expr> dxi;
    auto d_xi = [&](const std::string& i, const std::string& k) -> const Expr& {
        auto key = std::make_pair(i, k);
        auto it = dxi.find(key);
        if (it == dxi.end()) it = dxi.emplace(key, total_derivative(jet, i, s.xi.count(k) ? s.xi.at(k) : Expr())).first;
        return it->second;
    };

    for (const auto& u : base.dependent) {
        std::map<MultiIndex, Expr> eta;
        eta[MultiIndex{}] = s.eta.count(u) ? s.eta.at(u) : Expr();
        auto args = base.arguments_of(u);
        for (const auto& c : jet.coordinates()) {
            if (c.dependent != u) continue;
            // J = parent + i with i the last letter.
            const std::string& i = c.index.vars.back();
            MultiIndex parent = c.index;
            parent.vars.pop_back();
            Expr val = total_derivative(jet, i, eta.at(parent));
            for (const auto& k : args) {
                const Expr& dk = d_xi(i, k);
                if (dk.is_zero()) continue;
                val -= Expr::variable(jet.name_of(u, parent.plus(k))) * dk;
            }
            eta[c.index] = val;
            out.set(c.name, val);
        }
    }
    return out;
}

VectorField prolong_closed_form(const VectorField& v, const JetSpace& jet) {
    const Chart& base = jet.base();
    Split s = split_field(v, jet);
    JetSpace big(base, jet.order() + 1);
    VectorField out = v;
    for (const auto& u : base.dependent) {
        auto args = base.arguments_of(u);
        // Characteristic W = eta - sum_i xi_i u_i.
        Expr w = s.eta.count(u) ? s.eta.at(u) : Expr();
        for (const auto& i : args)
            if (s.xi.count(i)) w -= s.xi.at(i) * Expr::variable(big.name_of(u, MultiIndex{{i}}));
        for (const auto& c : jet.coordinates()) {
            if (c.dependent != u) continue;
            Expr val = w;
            for (const auto& i : c.index.vars) val = total_derivative(big, i, val);
            for (const auto& i : args)
                if (s.xi.count(i)) val += s.xi.at(i) * Expr::variable(big.name_of(u, c.index.plus(i)));
            for (const auto& name : variables(val))
                if (big.order_of(name) > jet.order())
                    throw std::logic_error("closed-form prolongation left a top-order term");
            out.set(c.name, val);
        }
    }
    return out;
}

}  // namespace liext
