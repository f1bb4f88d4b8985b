#include "liext/audit.hpp"

#include <algorithm>
#include <regex>

#include "liext/errors.hpp"
#include "liext/extension.hpp"
#include "liext/invariants.hpp"
#include "liext/jet.hpp"
#include "liext/spec_dsl.hpp"

namespace liext {

std::string to_string(Expectation e) { return e == Expectation::Confirm ? "CONFIRM" : "AUDIT"; }

std::string to_string(AuditVerdict v) {
    switch (v) {
        case AuditVerdict::Confirmed: return "CONFIRMED";
        case AuditVerdict::Corrected: return "CORRECTED";
        case AuditVerdict::Flagged: return "FLAGGED";
        case AuditVerdict::Failed: return "FAILED";
    }
    return "?";
}

namespace {

enum class Outcome { Holds, Corrected, Flagged, Fails };

struct Work {
    const AuditContext& ctx;
    const AuditEntry& entry;
    AuditResult& res;
    std::vector<VectorField> ops;  // selected base operators
    std::vector<std::string> names;
    std::string ancillary;

    void detail(const std::string& s) { res.details.push_back(s); }
    void data(const std::string& k, const std::string& v) { res.data.emplace_back(k, v); }
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

std::string tuple_str(const std::vector<Expr>& xs) {
    std::vector<std::string> s;
    for (const auto& x : xs) s.push_back(x.str());
    return "(" + join(s, ", ") + ")";
}

std::optional<Rational> proportional(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    auto k = (a / b).constant_value();
    if (!k || *k == 0) return std::nullopt;
    return k;
}

std::vector<Expr> parse_all(const std::vector<std::string>& xs) {
    std::vector<Expr> out;
    for (const auto& x : xs) out.push_back(parse(x));
    return out;
}

std::vector<VectorField> prolonged(const Work& w, int order) {
    JetSpace jet(w.ctx.chart, order);
    std::vector<VectorField> out;
    for (const auto& q : w.ops) out.push_back(prolong(q, jet));
    return out;
}

std::vector<VectorField> extended(const Work& w, const std::vector<VectorField>& base, const std::vector<Expr>& a) {
    if (a.empty()) return base;
    if (a.size() != base.size()) throw Error("extension variant needs one coefficient per operator");
    if (w.ancillary.empty()) throw Error("extension variant given but no ancillary variable is declared");
    std::vector<VectorField> out;
    for (std::size_t m = 0; m < base.size(); ++m) out.push_back(extend(base[m], a[m], w.ancillary));
    return out;
}

// K with lambda_m = -K a_m for every m.
std::optional<int> grading_power(const std::vector<Expr>& lambda, const std::vector<Expr>& a) {
    std::optional<Rational> k;
    for (std::size_t m = 0; m < lambda.size(); ++m) {
        const Expr am = m < a.size() ? a[m] : Expr();
        if (am.is_zero()) {
            if (!lambda[m].is_zero()) return std::nullopt;
            continue;
        }
        auto q = (-lambda[m] / am).constant_value();
        if (!q || (k && *k != *q)) return std::nullopt;
        k = q;
    }
    if (!k) return 0;
    if (k->get_den() != 1 || !k->get_num().fits_sint_p()) return std::nullopt;
    return static_cast<int>(k->get_num().get_si());
}

StructureConstants constants(const Work& w) { return structure_constants(w.ops, w.ctx.seed); }

Outcome check_structure(Work& w) {
    StructureConstants c = constants(w);
    static const std::regex re(R"(^\s*\[\s*(\w+)\s*,\s*(\w+)\s*\]\s*=\s*(.+)$)");
    bool ok = true;
    for (const auto& item : w.entry.items) {
        std::smatch m;
        if (!std::regex_match(item, m, re)) throw Error("bad bracket claim '" + item + "'");
        auto idx = [&](const std::string& n) {
            auto it = std::find(w.names.begin(), w.names.end(), n);
            if (it == w.names.end()) throw Error("unknown operator '" + n + "' in claim");
            return static_cast<std::size_t>(it - w.names.begin());
        };
        std::size_t a = idx(m[1]), b = idx(m[2]);
        Expr rhs = parse(m[3].str());
        Expr rest = rhs;
        bool same = true;
        for (std::size_t k = 0; k < w.names.size(); ++k) {
            Expr d = diff(rhs, w.names[k]);
            auto v = d.constant_value();
            if (!v) throw Error("claim '" + item + "' is not a constant combination of operators");
            rest -= Expr(*v) * Expr::variable(w.names[k]);
            same = same && *v == c.at(a, b, k);
        }
        if (!rest.is_zero()) throw Error("claim '" + item + "' is not a constant combination of operators");
        if (!same) ok = false;
    }
    for (const auto& line : c.describe(w.names)) {
        w.detail("computed " + line);
        w.data("bracket", line);
    }
    return ok ? Outcome::Holds : Outcome::Fails;
}

Outcome check_determining(Work& w) {
    StructureConstants c = constants(w);
    auto eqs = determining_equations(w.ops, c, w.entry.functions, w.entry.function_args);
    std::vector<bool> used(eqs.size(), false);
    bool ok = true;
    for (const auto& item : w.entry.items) {
        auto eq = item.find('=');
        Expr claim = eq == std::string::npos ? parse(item) : parse(item.substr(0, eq)) - parse(item.substr(eq + 1));
        bool found = false;
        for (std::size_t i = 0; i < eqs.size() && !found; ++i)
            if (!used[i] && proportional(claim, eqs[i].lhs)) found = used[i] = true;
        if (!found) {
            ok = false;
            w.detail("claimed condition " + claim.str() + " = 0 does not match any computed condition");
        }
    }
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        if (!used[i] && !eqs[i].lhs.is_zero()) {
            ok = false;
            w.detail("computed condition " + eqs[i].str() + " is not claimed");
        }
        w.data("condition", eqs[i].str());
    }
    for (const auto& e : eqs) w.detail("computed " + e.str());
    return ok ? Outcome::Holds : Outcome::Fails;
}

Outcome check_extension(Work& w) {
    StructureConstants c = constants(w);
    std::string r = w.ancillary.empty() ? "R" : w.ancillary;
    auto check = verify_extension(w.ops, c, parse_all(w.entry.items), r);
    if (check.valid) {
        w.detail("all commutator defects vanish");
        return Outcome::Holds;
    }
    for (const auto& d : check.residuals) {
        std::string pair = w.names[d.m] + ", " + w.names[d.n];
        w.detail("defect of [" + pair + "]: " + d.residual.str());
        w.data("residual." + w.names[d.m] + "." + w.names[d.n], d.residual.str());
    }
    if (!w.entry.correction_items.empty()) {
        auto fixed = verify_extension(w.ops, c, parse_all(w.entry.correction_items), r);
        if (fixed.valid) {
            w.detail("corrected coefficients " + join(w.entry.correction_items, ", ") + " verify");
            w.data("correction", "(" + join(w.entry.correction_items, ", ") + ")");
            return Outcome::Corrected;
        }
        w.detail("candidate correction does not verify either");
    }
    return Outcome::Fails;
}

Outcome check_prolongation(Work& w) {
    if (w.entry.items.size() != w.ops.size()) throw Error("one claimed operator per operator is required");
    JetSpace jet(w.ctx.chart, w.entry.order);
    std::string r = w.ancillary.empty() ? "R" : w.ancillary;
    std::vector<Expr> a;
    bool coeff_ok = true;
    for (std::size_t m = 0; m < w.ops.size(); ++m) {
        VectorField claimed = parse_operator(w.entry.items[m]);
        VectorField actual = prolong(w.ops[m], jet);
        a.push_back(claimed.coefficient(r) / Expr::variable(r));
        VectorField claimed_base = claimed.without(r);
        VectorField diff_field = claimed_base - actual;
        for (const auto& [var, d] : diff_field.coefficients()) {
            (void)d;
            coeff_ok = false;
            w.detail(w.names[m] + ": coefficient of d/d" + var + " is " + claimed_base.coefficient(var).str() +
                     ", recomputed " + actual.coefficient(var).str());
            w.data("recomputed." + w.names[m] + "." + var, actual.coefficient(var).str());
        }
        w.data("operator." + w.names[m], extend(actual, a.back(), r).str());
    }
    StructureConstants c = constants(w);
    auto check = verify_extension(w.ops, c, a, r);
    if (!check.valid) {
        for (const auto& d : check.residuals)
            w.detail("listed extension " + tuple_str(a) + " breaks [" + w.names[d.m] + ", " + w.names[d.n] +
                     "]: defect " + d.residual.str());
        w.data("extension_valid", "false");
        return Outcome::Flagged;
    }
    w.data("extension_valid", "true");
    return coeff_ok ? Outcome::Holds : Outcome::Corrected;
}

struct VariantRun {
    std::string label;
    std::vector<Expr> a;
};

std::vector<VariantRun> variants(const Work& w) {
    std::vector<VariantRun> out;
    for (const auto& v : w.entry.variants) out.push_back({v.label, parse_all(v.a)});
    if (out.empty()) out.push_back({"unextended", {}});
    return out;
}

// Checks that the factor F of an invariant matches its counterpart cell.
bool check_pairing(Work& w, const Expr& f, const std::string& paired_text, bool paired_is_adi) {
    if (paired_text.empty()) return true;
    Expr g = parse(paired_text);
    Expr h = g;
    if (paired_is_adi && !w.ancillary.empty()) {
        if (auto s = split_power(g, w.ancillary)) h = s->factor;
    }
    if (proportional(f, h)) return true;
    auto rep = verify_rdi(prolonged(w, w.entry.order), h);
    w.detail("counterpart entry " + g.str() + " does not correspond to " + f.str() + "; counterpart factor " + h.str() +
             " is " + to_string(rep.verdict) + (rep.multipliers.empty() ? "" : " with multipliers " + tuple_str(rep.multipliers)));
    w.data("counterpart", g.str());
    w.data("counterpart_verdict", to_string(rep.verdict));
    return false;
}

Outcome check_adi(Work& w) {
    Expr claim = parse(w.entry.claim);
    auto base = prolonged(w, w.entry.order);
    std::optional<InvariantCandidate> split;
    if (!w.ancillary.empty()) split = split_power(claim, w.ancillary);
    std::optional<InvariantReport> factor_rep;
    if (split) {
        factor_rep = verify_rdi(base, split->factor);
        if (factor_rep->verdict != Verdict::Fail) w.data("factor_multipliers", tuple_str(factor_rep->multipliers));
    }

    enum class V { Holds, Power, Fails };
    std::vector<std::pair<V, int>> per;
    auto vs = variants(w);
    for (const auto& v : vs) {
        auto ext = extended(w, base, v.a);
        if (verify_adi(ext, claim).verdict == Verdict::ADI) {
            per.push_back({V::Holds, 0});
            w.detail("holds under " + v.label);
            w.data("variant." + v.label, "holds");
            continue;
        }
        std::optional<int> k;
        if (split && factor_rep->verdict != Verdict::Fail) k = grading_power(factor_rep->multipliers, v.a);
        if (k && !(vs.size() == 1 && v.a.empty() && *k == 0)) {
            InvariantCandidate c{split->factor, *k, w.ancillary};
            per.push_back({V::Power, *k});
            w.detail("fails under " + v.label + "; " + c.full().str() + " holds instead");
            w.data("variant." + v.label, "power " + std::to_string(*k));
        } else {
            per.push_back({V::Fails, 0});
            auto rep = verify_adi(ext, claim);
            std::vector<std::string> res;
            for (const auto& r : rep.residuals) res.push_back(r ? r->str() : "0");
            w.detail("fails under " + v.label + "; images (" + join(res, ", ") + ")");
            w.data("variant." + v.label, "fails");
        }
    }

    Outcome out;
    Expr factor = split ? split->factor : claim;
    if (per[0].first == V::Holds) {
        out = Outcome::Holds;
    } else if (per[0].first == V::Power) {
        InvariantCandidate c{split->factor, per[0].second, w.ancillary};
        w.data("correction", c.full().str());
        out = Outcome::Corrected;
    } else if (std::any_of(per.begin() + 1, per.end(), [](auto& p) { return p.first != V::Fails; })) {
        w.detail("holds only under a different extension than the primary reading");
        out = Outcome::Flagged;
    } else if (!w.entry.correction.empty()) {
        Expr fix = parse(w.entry.correction);
        if (verify_adi(extended(w, base, vs[0].a), fix).verdict == Verdict::ADI) {
            w.detail("candidate " + fix.str() + " holds under " + vs[0].label);
            w.data("correction", fix.str());
            out = Outcome::Corrected;
            factor = split && !w.ancillary.empty() && split_power(fix, w.ancillary) ? split_power(fix, w.ancillary)->factor : fix;
        } else {
            w.detail("candidate " + fix.str() + " fails as well");
            out = Outcome::Fails;
        }
    } else {
        out = Outcome::Fails;
    }
    // A replacement candidate is expected to differ from its counterpart
    // cell; the mismatch is reported but does not flag the entry.
    bool replaced = out == Outcome::Corrected && per[0].first != V::Power;
    if ((out == Outcome::Holds || out == Outcome::Corrected) && !check_pairing(w, factor, w.entry.paired, false) &&
        !replaced)
        out = Outcome::Flagged;
    return out;
}

Outcome check_rdi(Work& w) {
    Expr claim = parse(w.entry.claim);
    auto base = prolonged(w, w.entry.order);
    auto rep = verify_rdi(base, claim);
    w.data("computed", to_string(rep.verdict));
    for (const auto& n : rep.notes) w.detail(n);
    if (rep.verdict == Verdict::Fail) {
        if (!w.entry.correction.empty()) {
            Expr fix = parse(w.entry.correction);
            auto fr = verify_rdi(base, fix);
            if (fr.verdict != Verdict::Fail) {
                w.detail("candidate " + fix.str() + " is " + to_string(fr.verdict) + " with multipliers " +
                         tuple_str(fr.multipliers));
                w.data("correction", fix.str());
                w.data("correction_multipliers", tuple_str(fr.multipliers));
                return Outcome::Corrected;
            }
            w.detail("candidate " + fix.str() + " fails as well");
        }
        return Outcome::Fails;
    }
    w.data("multipliers", tuple_str(rep.multipliers));
    w.detail(to_string(rep.verdict) + " with multipliers " + tuple_str(rep.multipliers));
    bool ok = true;
    if (w.entry.proper && *w.entry.proper != (rep.verdict == Verdict::ProperRDI)) {
        ok = false;
        w.detail(std::string("listed as ") + (*w.entry.proper ? "a proper RDI" : "an ADI") + " but computed " +
                 to_string(rep.verdict));
    }
    if (!w.entry.multipliers.empty()) {
        auto expect = parse_all(w.entry.multipliers);
        if (expect != rep.multipliers) {
            ok = false;
            w.detail("expected multipliers " + tuple_str(expect));
        }
    }
    Outcome out = ok ? Outcome::Holds : Outcome::Corrected;
    if (!check_pairing(w, claim, w.entry.paired, true)) out = Outcome::Flagged;
    return out;
}

Outcome check_product(Work& w) {
    auto base = prolonged(w, w.entry.order);
    Expr prod(1);
    std::vector<Expr> sum(base.size());
    bool ok = true;
    for (const auto& [text, k] : w.entry.factors) {
        Expr f = parse(text);
        prod *= pow(f, k);
        auto rep = verify_rdi(base, f);
        if (rep.verdict == Verdict::Fail) {
            ok = false;
            w.detail("factor " + f.str() + " is not an RDI");
            continue;
        }
        for (std::size_t m = 0; m < base.size(); ++m) sum[m] += Expr(k) * rep.multipliers[m];
        w.detail("factor " + f.str() + "^" + std::to_string(k) + " multipliers " + tuple_str(rep.multipliers));
    }
    Expr claim = parse(w.entry.claim);
    if (!(prod - claim).is_zero()) {
        ok = false;
        w.detail("product " + prod.str() + " differs from " + claim.str());
    }
    auto rep = verify_rdi(base, claim);
    w.data("summed_multipliers", tuple_str(sum));
    if (rep.verdict == Verdict::Fail || rep.multipliers != sum) {
        ok = false;
        w.detail("summed multipliers " + tuple_str(sum) + " do not match the product's own");
    } else {
        w.detail("summed multipliers " + tuple_str(sum) + "; product is " + to_string(rep.verdict));
    }
    return ok ? Outcome::Holds : Outcome::Fails;
}

Outcome check_independence(Work& w) {
    JetSpace jet(w.ctx.chart, w.entry.order);
    auto r = functional_independence(parse_all(w.entry.items), jet, w.ctx.seed);
    w.data("rank", std::to_string(r.rank));
    w.data("count", std::to_string(r.count));
    w.detail("Jacobian rank " + std::to_string(r.rank) + " of " + std::to_string(r.count));
    std::size_t expect = w.entry.rank.value_or(r.count);
    return r.rank == expect ? Outcome::Holds : Outcome::Fails;
}

Outcome check_pushforward(Work& w) {
    VectorField q = w.ops.at(0);
    if (!w.entry.variants.empty()) q = extend(q, parse(w.entry.variants[0].a.at(0)), w.ancillary);
    std::map<std::string, Expr> fwd, inv;
    for (const auto& [k, v] : w.entry.forward) fwd.emplace(k, parse(v));
    for (const auto& [k, v] : w.entry.inverse) inv.emplace(k, parse(v));
    VectorField got = pushforward(q, fwd, inv);
    w.data("pushforward", got.str());
    w.detail(q.str() + " becomes " + got.str());
    return got == parse_operator(w.entry.claim) ? Outcome::Holds : Outcome::Fails;
}

Outcome check_determining_operator(Work& w) {
    std::size_t m = 0;
    JetSpace jet(w.ctx.chart, w.entry.order);
    VectorField p = prolong(w.ops.at(m), jet);
    VectorField claimed = parse_operator(w.entry.claim);
    std::vector<bool> exact, scaled;
    for (const auto& v : variants(w)) {
        VectorField rec;
        for (const auto& c : w.entry.items) rec.set(c, p.coefficient(c));
        if (!w.ancillary.empty() && !v.a.empty())
            rec.set(w.ancillary, v.a.at(m) * Expr::variable(w.ancillary));
        std::optional<Rational> k;
        bool same = rec == claimed;
        if (!same) {
            // Same operator up to a constant factor?
            std::optional<Rational> ratio;
            bool prop = rec.coefficients().size() == claimed.coefficients().size();
            for (const auto& [var, c] : rec.coefficients()) {
                auto r = proportional(claimed.coefficient(var), c);
                if (!r || (ratio && *ratio != *r)) prop = false;
                if (r) ratio = r;
            }
            if (prop) k = ratio;
        }
        exact.push_back(same);
        scaled.push_back(k.has_value());
        std::string what = same ? "equal" : k ? "equal up to the factor " + to_string(*k) : "different";
        w.detail("under " + v.label + ": recomputed " + rec.str() + " (" + what + ")");
        w.data("variant." + v.label, same ? "holds" : k ? "factor " + to_string(*k) : "fails");
    }
    if (exact[0]) return Outcome::Holds;
    if (scaled[0]) return Outcome::Corrected;
    for (std::size_t i = 1; i < exact.size(); ++i)
        if (exact[i] || scaled[i]) return Outcome::Flagged;
    return Outcome::Fails;
}

}  // namespace

AuditResult audit_entry(const AuditContext& ctx, const AuditEntry& entry) {
    AuditResult res;
    res.id = entry.id;
    res.location = entry.location;
    res.expectation = entry.expectation;
    res.claim = entry.claim.empty() ? join(entry.items, "; ") : entry.claim;
    Work w{ctx, entry, res, {}, {}, ctx.chart.ancillary.empty() ? "" : ctx.chart.ancillary[0]};
    Outcome out = Outcome::Fails;
    try {
        std::vector<std::string> sel = entry.ops.empty() ? ctx.op_names : entry.ops;
        for (const auto& n : sel) {
            auto it = std::find(ctx.op_names.begin(), ctx.op_names.end(), n);
            if (it == ctx.op_names.end()) throw Error("unknown operator '" + n + "'");
            w.ops.push_back(ctx.ops[static_cast<std::size_t>(it - ctx.op_names.begin())]);
            w.names.push_back(n);
        }
        switch (entry.kind) {
            case EntryKind::Structure: out = check_structure(w); break;
            case EntryKind::Determining: out = check_determining(w); break;
            case EntryKind::Extension: out = check_extension(w); break;
            case EntryKind::Prolongation: out = check_prolongation(w); break;
            case EntryKind::Adi: out = check_adi(w); break;
            case EntryKind::Rdi: out = check_rdi(w); break;
            case EntryKind::Product: out = check_product(w); break;
            case EntryKind::Independence: out = check_independence(w); break;
            case EntryKind::Pushforward: out = check_pushforward(w); break;
            case EntryKind::DeterminingOperator: out = check_determining_operator(w); break;
        }
    } catch (const std::exception& e) {
        res.details.push_back(std::string("error: ") + e.what());
        out = Outcome::Fails;
    }
    if (entry.expectation == Expectation::Confirm) {
        res.verdict = out == Outcome::Holds ? AuditVerdict::Confirmed : AuditVerdict::Failed;
    } else {
        switch (out) {
            case Outcome::Holds: res.verdict = AuditVerdict::Confirmed; break;
            case Outcome::Corrected: res.verdict = AuditVerdict::Corrected; break;
            case Outcome::Flagged:
            case Outcome::Fails: res.verdict = AuditVerdict::Flagged; break;
        }
    }
    if (!entry.note.empty()) res.details.push_back("note: " + entry.note);
    return res;
}

std::vector<AuditResult> audit(const AuditContext& ctx, const std::vector<AuditEntry>& entries) {
    std::vector<AuditResult> out;
    for (const auto& e : entries) out.push_back(audit_entry(ctx, e));
    return out;
}

}  // namespace liext
