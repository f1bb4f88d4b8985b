// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "liext/audit.hpp"
#include "liext/corpus.hpp"
#include "liext/extension.hpp"
#include "liext/invariants.hpp"
#include "liext/jet.hpp"
#include "liext/spec_dsl.hpp"
#include "liext/workbench.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace liext;

namespace {

// Every comparison below is exact (canonical forms, exact ranks and
// dimensions). The only numeric threshold is the wall-clock budget.
constexpr double kTimeBudgetSeconds = 5.0;
constexpr std::uint64_t kPropertySeed = 20240601;
constexpr int kRandomFields = 50;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("MISMATCH " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

VectorField op(const std::string& text) { return parse_operator(text); }

std::vector<VectorField> ops(const std::vector<std::string>& texts) {
    std::vector<VectorField> out;
    for (const auto& t : texts) out.push_back(op(t));
    return out;
}

std::vector<Expr> exprs(const std::vector<std::string>& texts) {
    std::vector<Expr> out;
    for (const auto& t : texts) out.push_back(parse(t));
    return out;
}

Chart chart(std::vector<std::string> ind, std::vector<std::string> aux = {}) {
    Chart c;
    c.independent = std::move(ind);
    c.dependent = {"u"};
    c.ancillary = std::move(aux);
    return c;
}

std::vector<VectorField> prolonged(const std::vector<std::string>& texts, const JetSpace& jet) {
    std::vector<VectorField> out;
    for (const auto& t : texts) out.push_back(prolong(op(t), jet));
    return out;
}

const std::vector<std::string> kPoincare = {"d/dt", "d/dx", "t*d/dx + x*d/dt"};
const std::vector<std::string> kNonlinear = {"d/dt", "d/dx", "t*d/dx + x*d/dt + u*d/du"};

struct Algebra {
    std::string name;
    std::vector<std::string> ind;
    std::vector<std::string> ops;
};

const std::vector<Algebra> kAlgebras = {
    {"translation", {"x"}, {"d/dx"}},
    {"row1", {"x", "y"}, {"d/dx", "x*d/dx"}},
    {"row2", {"x", "y"}, {"d/dx", "y*d/dx"}},
    {"row3", {"x", "y"}, {"d/dx", "x*d/dx + d/dy"}},
    {"poincare", {"t", "x"}, kPoincare},
    {"nonlinear", {"t", "x"}, kNonlinear},
};

std::string letters(const std::vector<std::string>& ind) {
    std::string s;
    for (const auto& v : ind) s += v;
    return s;
}

// Structure constants must match `expected` entry by entry (m < n).
void expect_brackets(Outcome& o, const std::string& name, const std::vector<VectorField>& basis,
                     const std::map<std::tuple<int, int, int>, int>& expected) {
    auto c = structure_constants(basis);
    for (std::size_t m = 0; m < basis.size(); ++m)
        for (std::size_t n = m + 1; n < basis.size(); ++n)
            for (std::size_t k = 0; k < basis.size(); ++k) {
                auto it = expected.find({int(m), int(n), int(k)});
                int want = it == expected.end() ? 0 : it->second;
                o.require(c.at(m, n, k) == want, name + " c[" + std::to_string(m + 1) + "][" + std::to_string(n + 1) +
                                                     "][" + std::to_string(k + 1) + "]");
            }
}

Outcome structure_constants_criterion() {
    Outcome o;
    expect_brackets(o, "poincare", ops(kPoincare), {{{0, 2, 1}, 1}, {{1, 2, 0}, 1}});
    auto p = structure_constants(ops(kPoincare));
    o.require(p.describe({"Pt", "Px", "J"}) ==
                  std::vector<std::string>{"[Pt, Px] = 0", "[Pt, J] = Px", "[Px, J] = Pt"},
              "poincare bracket table");
    expect_brackets(o, "row1", ops({"d/dx", "x*d/dx"}), {{{0, 1, 0}, 1}});
    expect_brackets(o, "row2", ops({"d/dx", "y*d/dx"}), {});
    expect_brackets(o, "row3", ops({"d/dx", "x*d/dx + d/dy"}), {{{0, 1, 0}, 1}});
    o.require(commutator(op("d/dx"), op("x*d/dx")) == op("d/dx"), "[d/dx, x d/dx] = d/dx");
    o.note("[Pt, Px] = 0, [Pt, J] = Px, [Px, J] = Pt; three planar algebras exact");
    return o;
}

Outcome general_solution_criterion() {
    Outcome o;
    struct Family {
        std::string name;
        std::vector<std::string> basis, a;
    };
    const std::vector<Family> families = {
        {"table1.row1", {"d/dx", "x*d/dx"}, {"a(x,y)", "x*a(x,y) + phi(y)"}},
        {"table1.row2", {"d/dx", "y*d/dx"}, {"a(x,y)", "y*a(x,y) + phi(y)"}},
        {"table1.row3", {"d/dx", "x*d/dx + d/dy"}, {"Phi_x(x,y)", "Phi_y(x,y) - x*Phi_x(x,y)"}},
        {"poincare(t,x)", kPoincare, {"Phi_t(t,x)", "Phi_x(t,x)", "t*Phi_x(t,x) + x*Phi_t(t,x) + C"}},
        {"nonlinear(t,x,u)", kNonlinear,
         {"Phi_t(t,x,u)", "Phi_x(t,x,u)", "t*Phi_x(t,x,u) + x*Phi_t(t,x,u) + u*Phi_u(t,x,u) + C"}},
    };
    for (const auto& f : families) {
        auto b = ops(f.basis);
        auto check = verify_extension(b, structure_constants(b), exprs(f.a));
        if (check.valid) {
            o.note(f.name + " zero residuals");
            continue;
        }
        std::string r;
        for (const auto& res : check.residuals)
            r += " [Q" + std::to_string(res.m + 1) + ", Q" + std::to_string(res.n + 1) + "] residual " + res.residual.str();
        o.require(false, f.name + " as printed:" + r);
    }
    // Diagnostic only: the sign-flipped third row.
    auto b3 = ops({"d/dx", "x*d/dx + d/dy"});
    bool flipped = verify_extension(b3, structure_constants(b3), exprs({"Phi_x(x,y)", "Phi_y(x,y) + x*Phi_x(x,y)"})).valid;
    o.note(std::string("table1.row3 with Phi_y + x*Phi_x: ") + (flipped ? "zero residuals" : "nonzero residuals"));
    return o;
}

Outcome completeness_criterion() {
    Outcome o;
    using oracle::Term;
    const std::vector<oracle::Op> q = {{{1, 0, 0, 0}}, {{1, 0, 0, 1}}, {{1, 1, 0, 1}, {1, 0, 1, 0}}};
    const std::vector<std::vector<std::vector<int>>> c = {
        {{0, 0, 0}, {0, 0, 0}, {0, 1, 0}}, {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};
    std::size_t expected = oracle::extension_dimension(q, c, oracle::monomial_basis(2));
    auto basis = ops(kPoincare);
    auto sc = structure_constants(basis);
    auto fam = solve_extensions(basis, sc, Ansatz::polynomial({"t", "x"}, 2));
    o.require(fam.dimension() == expected, "family dimension " + std::to_string(fam.dimension()) + " vs oracle " +
                                               std::to_string(expected));
    std::size_t verified = 0;
    for (const auto& a : fam.members) verified += verify_extension(basis, sc, a).valid ? 1 : 0;
    o.require(verified == fam.dimension(), "members re-verified " + std::to_string(verified));
    o.note("degree<=2 dimension " + std::to_string(fam.dimension()) + " = oracle " + std::to_string(expected) + ", " +
           std::to_string(verified) + " members re-verified");
    return o;
}

Outcome homomorphism_criterion() {
    Outcome o;
    std::size_t checks = 0;
    for (const auto& a : kAlgebras)
        for (int order = 1; order <= 2; ++order) {
            auto j = build_jet(chart(a.ind), order);
            for (std::size_t m = 0; m < a.ops.size(); ++m)
                for (std::size_t n = m + 1; n < a.ops.size(); ++n) {
                    auto qm = op(a.ops[m]), qn = op(a.ops[n]);
                    ++checks;
                    o.require(prolong(commutator(qm, qn), j) == commutator(prolong(qm, j), prolong(qn, j)),
                              a.name + " order " + std::to_string(order));
                }
        }
    std::vector<std::string> coords = {"x", "y", "u"};
    testing_support::RandomExprs gen(kPropertySeed, coords);
    std::vector<VectorField> fields;
    for (int i = 0; i < kRandomFields; ++i) fields.push_back(gen.field(coords, 2));
    for (int order = 1; order <= 2; ++order) {
        auto j = build_jet(chart({"x", "y"}), order);
        for (int i = 0; i < kRandomFields; ++i) {
            const auto& a = fields[i];
            const auto& b = fields[(i + 1) % kRandomFields];
            ++checks;
            o.require(prolong(commutator(a, b), j) == commutator(prolong(a, j), prolong(b, j)),
                      "random pair " + std::to_string(i) + " order " + std::to_string(order));
        }
    }
    o.note(std::to_string(checks) + " brackets at orders 1-2 (corpus algebras and " + std::to_string(kRandomFields) +
           " random fields)");
    return o;
}

Outcome adi_criterion() {
    Outcome o;
    JetSpace jet(chart({"t", "x"}), 2);
    auto p = prolonged(kPoincare, jet);
    auto n = prolonged(kNonlinear, jet);
    const std::vector<std::string> pa = {"u", "u_t^2 - u_x^2", "u_tt - u_xx", "(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)",
                                         "(u_t + u_x)^2*(u_tt - 2*u_tx + u_xx)"};
    const std::vector<std::string> na = {"u_t + u_x", "(u_t - u_x)*u^-2", "(u_tt - u_xx)*u^-1",
                                         "(u_tt + 2*u_tx + u_xx)*u", "(u_tt - 2*u_tx + u_xx)*u^-3"};
    for (const auto& s : pa) o.require(verify_adi(p, parse(s)).verdict == Verdict::ADI, "poincare " + s);
    for (const auto& s : na) o.require(verify_adi(n, parse(s)).verdict == Verdict::ADI, "nonlinear " + s);
    o.note("5 + 5 invariants annihilated by the second prolongations");
    return o;
}

Outcome rdi_criterion() {
    Outcome o;
    JetSpace jet(chart({"t", "x"}), 2);
    auto p = prolonged(kPoincare, jet);
    const std::vector<std::pair<std::string, int>> ars = {
        {"u_t - u_x", 1}, {"u_t + u_x", -1}, {"u_tt + 2*u_tx + u_xx", -2}, {"u_tt - 2*u_tx + u_xx", 2}};
    std::vector<std::vector<Expr>> lambda;
    std::string got;
    for (const auto& [s, j] : ars) {
        auto r = verify_rdi(p, parse(s));
        o.require(r.verdict == Verdict::ProperRDI, s + " proper RDI");
        if (r.multipliers.size() != 3) {
            o.require(false, s + " multipliers");
            lambda.emplace_back(3, Expr(0));
            continue;
        }
        o.require(r.multipliers[0].is_zero() && r.multipliers[1].is_zero() && r.multipliers[2] == Expr(j),
                  s + " multipliers");
        got += " " + r.multipliers[2].str();
        lambda.push_back(r.multipliers);
    }
    for (int m = 0; m < 3; ++m) {
        o.require((Expr(2) * lambda[0][m] + lambda[2][m]).is_zero(), "AR1^2 AR3 summed multiplier");
        o.require((Expr(2) * lambda[1][m] + lambda[3][m]).is_zero(), "AR2^2 AR4 summed multiplier");
    }
    o.require(verify_adi(p, parse("(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)")).verdict == Verdict::ADI, "I4 is an ADI");
    o.require(verify_adi(p, parse("(u_t + u_x)^2*(u_tt - 2*u_tx + u_xx)")).verdict == Verdict::ADI, "I5 is an ADI");

    JetSpace j0(chart({"t", "x"}), 0);
    auto p0 = prolonged(kPoincare, j0);
    auto et = verify_rdi(p0, parse("exp(t)")), ex = verify_rdi(p0, parse("exp(x)"));
    o.require(et.verdict == Verdict::ProperRDI && et.multipliers.size() == 3 && et.multipliers[0] == Expr(1) &&
                  et.multipliers[1].is_zero() && et.multipliers[2] == parse("x"),
              "exp(t) multipliers (1, 0, x)");
    o.require(ex.verdict == Verdict::ProperRDI && ex.multipliers.size() == 3 && ex.multipliers[0].is_zero() &&
                  ex.multipliers[1] == Expr(1) && ex.multipliers[2] == parse("t"),
              "exp(x) multipliers (0, 1, t)");
    auto tr = verify_rdi({op("d/dx")}, parse("exp(x)"));
    o.require(tr.verdict == Verdict::ProperRDI && tr.multipliers[0] == Expr(1), "exp(x) under d/dx");
    o.note("lambda_J =" + got + "; products AR1^2 AR3, AR2^2 AR4 sum to 0; exp(t), exp(x) proper");
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// value of key `entry.<location><suffix>` in a machine report, or "".
std::string entry_value(const std::string& report, const std::string& location, const std::string& suffix = "") {
    std::string key = "\nentry." + location + suffix + " = ";
    auto at = report.find(key);
    if (at == std::string::npos) return "";
    auto start = at + key.size();
    return report.substr(start, report.find('\n', start) - start);
}

Outcome table2_criterion() {
    Outcome o;
    auto run_all = [](std::uint64_t seed) {
        std::vector<std::string> out;
        for (const auto& r : run_corpus({"A1", "A2", "A3"}, seed).reports) out.push_back(r.render(ReportFormat::Machine));
        return out;
    };
    auto first = run_all(kDefaultSeed);
    auto again = run_all(kDefaultSeed);
    o.require(first == again, "repeat run byte-identical");
    const char* ids[] = {"A1", "A2", "A3"};
    for (int i = 0; i < 3; ++i)
        o.require(first[i] == slurp(std::filesystem::path(LIEXT_GOLDEN_DIR) / (std::string(ids[i]) + ".txt")),
                  std::string("golden ") + ids[i]);
    // Verdict lines only: another generic-point seed must not change them.
    auto verdict_lines = [](const std::vector<std::string>& reports) {
        std::string out;
        for (const auto& r : reports) {
            std::istringstream in(r);
            for (std::string line; std::getline(in, line);)
                if (line.rfind("entry.", 0) == 0 &&
                    (line.ends_with(" = CONFIRMED") || line.ends_with(" = CORRECTED") || line.ends_with(" = FLAGGED") ||
                     line.ends_with(" = FAILED")))
                    out += line + "\n";
        }
        return out;
    };
    o.require(verdict_lines(first) == verdict_lines(run_all(7)), "verdict set stable under reseeding");

    int rdis = 0;
    for (int i = 0; i < 3; ++i) {
        std::string row = "table2.row" + std::to_string(i + 1);
        for (int k = 1; k <= 7; ++k) {
            std::string loc = row + ".rdi." + std::to_string(k);
            std::string v = entry_value(first[i], loc);
            o.require(!v.empty() && v != "FAILED", loc + " = " + v);
            o.require(!entry_value(first[i], loc, ".multipliers").empty() || !entry_value(first[i], loc, ".computed").empty(),
                      loc + " computed multipliers");
            ++rdis;
            std::string a = entry_value(first[i], row + ".adi." + std::to_string(k));
            o.require(!a.empty() && a != "FAILED", row + ".adi." + std::to_string(k) + " = " + a);
        }
    }
    for (const char* loc : {"table2.row1.adi.6", "table2.row3.adi.6"}) {
        int i = loc[10] - '1';
        o.require(entry_value(first[i], loc) == "CORRECTED", std::string(loc) + " CORRECTED");
        o.require(entry_value(first[i], loc, ".correction").find("R^2") != std::string::npos,
                  std::string(loc) + " correction carries R^2");
    }
    std::string exp_pair = entry_value(first[1], "table2.row2.adi.5");
    o.require(exp_pair == "FLAGGED" || exp_pair == "CORRECTED", "table2.row2.adi.5 reported");
    o.note(std::to_string(rdis) + " RDI entries with multipliers; row1/row3 adi.6 -> " +
           entry_value(first[0], "table2.row1.adi.6", ".correction") + "; row2 adi.5 " + exp_pair +
           "; golden and reseed stable");
    return o;
}

Outcome extended_claims_criterion() {
    Outcome o;
    const auto* pc = find_case("P1");
    auto spec = parse_spec(pc->spec);
    auto results = audit_case(spec, "P1");
    std::map<std::string, const AuditResult*> by_loc;
    for (const auto& r : results) by_loc[r.location] = &r;
    int claims = 0;
    std::string summary;
    for (const auto& e : pc->entries) {
        if (e.location.find("ext-adi") == std::string::npos) continue;
        ++claims;
        const AuditResult* r = by_loc.count(e.location) ? by_loc[e.location] : nullptr;
        if (!r) {
            o.require(false, e.location + " audited");
            continue;
        }
        bool eps_only = false, translated = false;
        std::vector<std::string> holds_under;
        for (const auto& v : e.variants) {
            eps_only = eps_only || (v.a.size() == 3 && v.a[0] == "0" && v.a[1] == "0");
            translated = translated || (v.a.size() == 3 && v.a[0] == "1" && v.a[1] == "1");
            // Independent recomputation on the prolonged extended operators.
            JetSpace jet(chart({"t", "x"}, {"R"}), e.order);
            std::vector<VectorField> ext;
            for (std::size_t m = 0; m < 3; ++m)
                ext.push_back(prolong(extend(op(kPoincare[m]), parse(v.a[m]), "R"), jet));
            bool holds = verify_adi(ext, parse(e.claim)).verdict == Verdict::ADI;
            std::string reported;
            for (const auto& [k, val] : r->data)
                if (k.ends_with("variant." + v.label)) reported = val;
            o.require((reported == "holds") == holds, e.location + " under " + v.label + ": reported '" + reported + "'");
            if (holds) holds_under.push_back(v.label);
        }
        o.require(eps_only && translated, e.location + " covers the eps-only and a_P=1 extensions");
        std::string where;
        for (const auto& h : holds_under) where += (where.empty() ? "" : "/") + h;
        summary += " " + e.id + ":" + (where.empty() ? "none" : where);
        bool primary = !holds_under.empty() && holds_under.front() == e.variants.front().label;
        o.require(primary || r->verdict != AuditVerdict::Confirmed, e.location + " not confirmed without support");
    }
    o.require(claims == 5, "five extended-operator claims");
    o.note("holds under" + summary);
    return o;
}

Outcome independence_criterion() {
    Outcome o;
    JetSpace j2(chart({"t", "x"}), 2);
    auto r = functional_independence(exprs({"u", "u_t^2 - u_x^2", "u_tt - u_xx", "(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)",
                                            "(u_t + u_x)^2*(u_tt - 2*u_tx + u_xx)"}),
                                     j2);
    o.require(r.rank == 5, "poincare ADI rank " + std::to_string(r.rank));
    JetSpace jxy(chart({"x", "y"}), 2);
    const std::vector<std::vector<std::string>> columns = {
        {"y", "u", "u_y", "u_yy", "u_x", "u_xx", "u_xy"},
        {"y", "u", "u_x", "u_xx", "exp(u_y)", "u_x*u_xy - u_y*u_xx", "u_xy^2 - 2*u_xx*u_yy"},
        {"exp(y)", "u", "u_y", "u_yy", "u_x", "u_xx", "u_xy"},
    };
    std::string ranks;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        auto c = functional_independence(exprs(columns[i]), jxy);
        o.require(c.rank == columns[i].size(), "RDI column " + std::to_string(i + 1) + " rank " + std::to_string(c.rank));
        ranks += " " + std::to_string(c.rank) + "/" + std::to_string(c.count);
    }
    o.note("poincare ADIs rank " + std::to_string(r.rank) + "/5; second-order RDI columns" + ranks);
    return o;
}

Outcome property_criterion() {
    Outcome o;
    testing_support::RandomExprs gen(kPropertySeed + 1, {"x", "y", "z"});
    std::vector<std::string> xyz = {"x", "y", "z"};
    int jacobi = 0;
    for (int i = 0; i < 40; ++i) {
        auto a = gen.field(xyz, 2), b = gen.field(xyz, 2), c = gen.field(xyz, 2);
        auto j = commutator(commutator(a, b), c) + commutator(commutator(b, c), a) + commutator(commutator(c, a), b);
        o.require(j.is_zero(), "jacobi trial " + std::to_string(i));
        ++jacobi;
    }

    testing_support::RandomExprs dgen(kPropertySeed + 2, {"x", "y", "u", "u_x", "u_y"});
    auto j3 = build_jet(chart({"x", "y"}), 3);
    int commuting = 0;
    for (int i = 0; i < 60; ++i) {
        Expr e = dgen.tree(2, false);
        o.require(total_derivative(j3, "x", total_derivative(j3, "y", e)) ==
                      total_derivative(j3, "y", total_derivative(j3, "x", e)),
                  "D_x D_y trial " + std::to_string(i));
        ++commuting;
    }

    std::vector<std::string> xyu = {"x", "y", "u"};
    testing_support::RandomExprs pgen(kPropertySeed + 3, xyu);
    int agree = 0;
    for (int order = 0; order <= 2; ++order) {
        auto j = build_jet(chart({"x", "y"}), order);
        for (int i = 0; i < 25; ++i) {
            auto v = pgen.field(xyu, 2);
            o.require(prolong(v, j) == prolong_closed_form(v, j), "prolongation agreement order " + std::to_string(order));
            ++agree;
        }
    }

    std::vector<std::string> xy = {"x", "y"};
    testing_support::RandomExprs wgen(kPropertySeed + 4, xy);
    const std::vector<std::pair<std::map<std::string, Expr>, std::map<std::string, Expr>>> witnesses = {
        {{{"X", parse("x + y")}, {"Y", parse("y")}}, {{"x", parse("X - Y")}, {"y", parse("Y")}}},
        {{{"X", parse("x")}, {"Y", parse("y + x^2")}}, {{"x", parse("X")}, {"y", parse("Y - X^2")}}},
    };
    int natural = 0;
    for (const auto& [fwd, inv] : witnesses)
        for (int i = 0; i < 15; ++i) {
            auto a = wgen.field(xy, 2), b = wgen.field(xy, 2);
            o.require(pushforward(commutator(a, b), fwd, inv) ==
                          commutator(pushforward(a, fwd, inv), pushforward(b, fwd, inv)),
                      "pushforward naturality");
            ++natural;
        }

    JetSpace jet(chart({"t", "x"}), 2);
    auto p = prolonged(kPoincare, jet);
    const std::vector<std::string> rdis = {"u_t - u_x", "u_t + u_x", "u_tt + 2*u_tx + u_xx", "u_tt - 2*u_tx + u_xx",
                                           "u_tt - u_xx"};
    testing_support::RandomExprs rgen(kPropertySeed + 5);
    int closure = 0;
    for (int i = 0; i < 30; ++i) {
        Expr fa = parse(rdis[rgen.pick(0, 4)]), fb = parse(rdis[rgen.pick(0, 4)]);
        int k = rgen.pick(-3, 3), l = rgen.pick(1, 3);
        auto ra = verify_rdi(p, fa), rb = verify_rdi(p, fb), rp = verify_rdi(p, pow(fa, k) * pow(fb, l));
        bool ok = rp.verdict != Verdict::Fail && rp.multipliers.size() == 3;
        for (std::size_t m = 0; ok && m < 3; ++m)
            ok = rp.multipliers[m] == Expr(k) * ra.multipliers[m] + Expr(l) * rb.multipliers[m];
        o.require(ok, "RDI closure " + fa.str() + "^" + std::to_string(k) + " * " + fb.str() + "^" + std::to_string(l));
        ++closure;
    }
    o.note(std::to_string(closure) + " RDI closure, " + std::to_string(jacobi) + " Jacobi, " +
           std::to_string(commuting) + " commuting D, " + std::to_string(agree) + " prolongation agreement, " +
           std::to_string(natural) + " naturality trials");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"structure constants", structure_constants_criterion},
        {"general-solution verification", general_solution_criterion},
        {"solver completeness oracle", completeness_criterion},
        {"prolongation homomorphism", homomorphism_criterion},
        {"ADI confirmation", adi_criterion},
        {"RDI confirmation with multipliers", rdi_criterion},
        {"second-order invariant table audit", table2_criterion},
        {"extended-operator ADI audit", extended_claims_criterion},
        {"functional independence", independence_criterion},
        {"property suites", property_criterion},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > kTimeBudgetSeconds) o.require(false, "time budget exceeded");
        std::string detail;
        for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
        std::printf("criterion %2zu %s  %s (%.2fs): %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    secs, detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
