#include "liext/workbench.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "liext/ansatz.hpp"
#include "liext/corpus.hpp"
#include "liext/errors.hpp"
#include "liext/extension.hpp"
#include "liext/invariants.hpp"
#include "liext/jet.hpp"

namespace liext {

namespace {

struct TaskContext {
    const ProblemSpec& spec;
    const TaskDecl& task;
    std::uint64_t seed;
    Section& out;

    std::string ancillary() const { return spec.chart.ancillary.empty() ? "" : spec.chart.ancillary.front(); }

    std::vector<const OperatorDecl*> selected() const {
        std::vector<const OperatorDecl*> ops;
        if (task.params.count("ops")) {
            for (const auto& n : parse_list(task.params.at("ops"))) ops.push_back(spec.find_op(n));
        } else {
            for (const auto& o : spec.ops) ops.push_back(&o);
        }
        if (ops.empty()) throw SpecError("no operators declared", task.line);
        return ops;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto* o : selected()) out.push_back(o->name);
        return out;
    }

    VectorField base_of(const VectorField& f) const {
        return ancillary().empty() ? f : split_extension(f, ancillary()).base;
    }

    std::vector<VectorField> base_ops() const {
        std::vector<VectorField> out;
        for (const auto* o : selected()) out.push_back(base_of(o->field));
        return out;
    }

    /// Declared operators, or their base parts extended by ext={...}.
    std::vector<VectorField> acting_ops() const {
        auto ops = selected();
        std::vector<VectorField> out;
        if (!task.params.count("ext")) {
            for (const auto* o : ops) out.push_back(o->field);
            return out;
        }
        if (ancillary().empty()) throw SpecError("ext= needs an aux variable", task.line);
        auto a = parse_list(task.params.at("ext"));
        if (a.size() != ops.size()) throw SpecError("ext= needs one coefficient per operator", task.line);
        for (std::size_t m = 0; m < ops.size(); ++m)
            out.push_back(extend(base_of(ops[m]->field), spec.expression(a[m]), ancillary()));
        return out;
    }

    int jet_order_of(const std::vector<Expr>& es) const {
        int order = 0;
        for (const auto& e : es)
            for (const auto& v : variables(e))
                for (const auto& u : spec.chart.dependent)
                    if (v.size() > u.size() + 1 && v.compare(0, u.size() + 1, u + "_") == 0)
                        order = std::max(order, static_cast<int>(v.size() - u.size() - 1));
        return int_param(task, "order", order);
    }

    std::vector<VectorField> prolonged(const std::vector<VectorField>& ops, int order) const {
        JetSpace jet(spec.chart, order);
        std::vector<VectorField> out;
        for (const auto& o : ops) out.push_back(prolong(o, jet));
        return out;
    }

    Expr quoted() const { return spec.expression(task.positional.substr(1, task.positional.size() - 2)); }

    void fail() const { out.status = SectionStatus::Failed; }
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

void task_check_algebra(TaskContext& cx) {
    auto names = cx.names();
    std::vector<VectorField> fields;
    for (const auto* o : cx.selected()) fields.push_back(o->field);
    auto c = structure_constants(fields, cx.seed);
    std::size_t i = 0;
    for (const auto& line : c.describe(names)) {
        cx.out.line(line);
        cx.out.put("bracket." + std::to_string(++i), line);
    }
    cx.out.put("dimension", std::to_string(c.dim()));
    cx.out.put("antisymmetric", c.is_antisymmetric() ? "true" : "false");
    cx.out.put("jacobi", c.satisfies_jacobi() ? "true" : "false");
    if (!c.satisfies_jacobi()) cx.fail();
}

void task_prolong(TaskContext& cx) {
    int order = int_param(cx.task, "order", 1);
    JetSpace jet(cx.spec.chart, order);
    auto names = cx.names();
    auto ops = cx.acting_ops();
    for (std::size_t m = 0; m < ops.size(); ++m) {
        auto p = prolong(ops[m], jet);
        cx.out.line(names[m] + "^(" + std::to_string(order) + ") = " + p.str());
        cx.out.put("op." + names[m], p.str());
    }
}

void task_determining(TaskContext& cx) {
    auto names = cx.names();
    auto ops = cx.base_ops();
    auto c = structure_constants(ops, cx.seed);
    std::vector<std::string> fns;
    if (cx.task.params.count("names")) {
        fns = parse_list(cx.task.params.at("names"));
        if (fns.size() != ops.size()) throw SpecError("names= needs one function per operator", cx.task.line);
    } else {
        for (std::size_t m = 0; m < ops.size(); ++m) fns.push_back("a" + std::to_string(m + 1));
    }
    std::vector<std::string> args;
    if (cx.task.params.count("args")) {
        args = parse_list(cx.task.params.at("args"));
    } else {
        args = cx.spec.chart.independent;
        args.insert(args.end(), cx.spec.chart.dependent.begin(), cx.spec.chart.dependent.end());
    }
    for (const auto& eq : determining_equations(ops, c, fns, args)) {
        std::string key = "condition." + names[eq.m] + "." + names[eq.n];
        cx.out.line("[" + names[eq.m] + ", " + names[eq.n] + "]: " + eq.str());
        cx.out.put(key, eq.str());
    }
}

void task_extend(TaskContext& cx) {
    auto names = cx.names();
    auto ops = cx.base_ops();
    auto c = structure_constants(ops, cx.seed);
    Ansatz ansatz = Ansatz::parse(cx.task.params.at("ansatz"));
    auto family = solve_extensions(ops, c, ansatz, cx.seed);
    cx.out.line("ansatz: " + ansatz.description() + " (" + std::to_string(ansatz.size()) + " elements)");
    cx.out.line("family dimension: " + std::to_string(family.dimension()));
    cx.out.put("ansatz.size", std::to_string(ansatz.size()));
    cx.out.put("dimension", std::to_string(family.dimension()));
    bool constant_member = false;
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        const auto& a = family.members[i];
        std::vector<std::string> parts;
        bool constant = true;
        for (std::size_t m = 0; m < a.size(); ++m) {
            parts.push_back("a_" + names[m] + " = " + a[m].str());
            cx.out.put("member." + std::to_string(i + 1) + ".a_" + names[m], a[m].str());
            constant = constant && a[m].is_constant();
        }
        constant_member = constant_member || constant;
        cx.out.line("member " + std::to_string(i + 1) + ": " + join(parts, ", "));
    }
    if (constant_member)
        cx.out.line("suggested normalisation: a constant member enters as eps*R*d/dR; eps can be scaled to 0 or 1");
}

void task_verify_extension(TaskContext& cx) {
    auto names = cx.names();
    auto ops = cx.base_ops();
    auto c = structure_constants(ops, cx.seed);
    const auto& t = cx.task;
    auto items = parse_list(t.positional.empty() && t.params.count("a") ? t.params.at("a") : t.positional);
    if (items.size() != ops.size()) throw SpecError("one coefficient per operator is needed", t.line);
    std::vector<Expr> a;
    for (const auto& i : items) a.push_back(cx.spec.expression(i));
    std::string anc = cx.ancillary().empty() ? "R" : cx.ancillary();
    auto check = verify_extension(ops, c, a, anc);
    for (std::size_t m = 0; m < a.size(); ++m) cx.out.line("a_" + names[m] + " = " + a[m].str());
    cx.out.line(check.valid ? "extension preserves the structure constants" : "extension breaks the structure constants");
    cx.out.put("valid", check.valid ? "true" : "false");
    for (const auto& r : check.residuals) {
        std::string key = "residual." + names[r.m] + "." + names[r.n];
        cx.out.line("  residual [" + names[r.m] + ", " + names[r.n] + "]: " + r.residual.str());
        cx.out.put(key, r.residual.str());
    }
    if (!check.valid) cx.fail();
}

void describe_invariant(TaskContext& cx, const InvariantReport& r, const std::vector<std::string>& names) {
    cx.out.line("verdict: " + to_string(r.verdict));
    cx.out.put("verdict", to_string(r.verdict));
    for (std::size_t m = 0; m < r.multipliers.size() && m < names.size(); ++m) {
        cx.out.line("  lambda_" + names[m] + " = " + r.multipliers[m].str());
        cx.out.put("lambda." + names[m], r.multipliers[m].str());
    }
    for (std::size_t m = 0; m < r.residuals.size() && m < names.size(); ++m)
        if (r.residuals[m]) {
            cx.out.line("  residual under " + names[m] + ": " + r.residuals[m]->str());
            cx.out.put("residual." + names[m], r.residuals[m]->str());
        }
    for (const auto& n : r.notes) cx.out.line("  note: " + n);
}

void task_verify_invariant(TaskContext& cx, bool relative) {
    Expr theta = cx.quoted();
    auto ops = cx.prolonged(cx.acting_ops(), cx.jet_order_of({theta}));
    cx.out.line("theta = " + theta.str());
    cx.out.put("theta", theta.str());
    auto r = relative ? verify_rdi(ops, theta) : verify_adi(ops, theta);
    describe_invariant(cx, r, cx.names());
    bool ok = relative ? r.verdict != Verdict::Fail : r.verdict == Verdict::ADI;
    if (!ok) cx.fail();
}

void task_solve_adi(TaskContext& cx) {
    Ansatz ansatz = Ansatz::parse(cx.task.params.at("ansatz"));
    std::vector<Expr> basis(ansatz.basis().begin(), ansatz.basis().end());
    auto ops = cx.prolonged(cx.acting_ops(), cx.jet_order_of(basis));
    int kmin = int_param(cx.task, "kmin", 0), kmax = int_param(cx.task, "kmax", 0);
    auto found = solve_adi(ops, cx.ancillary(), ansatz, kmin, kmax, cx.seed);
    auto names = cx.names();
    cx.out.line("ansatz: " + ansatz.description() + " (" + std::to_string(ansatz.size()) + " elements)");
    cx.out.put("count", std::to_string(found.size()));
    for (std::size_t i = 0; i < found.size(); ++i) {
        const auto& c = found[i];
        std::string key = "adi." + std::to_string(i + 1);
        cx.out.line("ADI " + std::to_string(i + 1) + ": " + c.full().str());
        cx.out.put(key, c.full().str());
        cx.out.put(key + ".power", std::to_string(c.power));
        if (c.power == 0 || c.ancillary.empty()) continue;
        auto x = extract_rdi(c, ops);
        std::vector<std::string> lambdas;
        for (std::size_t m = 0; m < x.check.multipliers.size() && m < names.size(); ++m) {
            lambdas.push_back("lambda_" + names[m] + " = " + x.check.multipliers[m].str());
            cx.out.put(key + ".rdi.lambda." + names[m], x.check.multipliers[m].str());
        }
        cx.out.line("  RDI " + x.rdi.str() + " [" + to_string(x.check.verdict) + "] " + join(lambdas, ", "));
        cx.out.put(key + ".rdi", x.rdi.str());
        cx.out.put(key + ".rdi.consistent", x.consistent ? "true" : "false");
        if (!x.consistent) cx.fail();
    }
}

void task_independence(TaskContext& cx) {
    std::vector<Expr> thetas;
    for (const auto& i : parse_list(cx.task.positional)) thetas.push_back(cx.spec.expression(i));
    JetSpace jet(cx.spec.chart, cx.jet_order_of(thetas));
    auto r = functional_independence(thetas, jet, cx.seed);
    cx.out.line("Jacobian rank " + std::to_string(r.rank) + " of " + std::to_string(r.count) +
                (r.independent() ? ": functionally independent" : ": dependent"));
    cx.out.put("rank", std::to_string(r.rank));
    cx.out.put("count", std::to_string(r.count));
    if (!r.independent()) cx.fail();
}

void task_audit(TaskContext& cx) {
    const std::string& id = cx.task.params.at("corpus");
    auto results = audit_case(cx.spec, id, cx.seed);
    std::map<AuditVerdict, int> counts;
    for (const auto& r : results) {
        ++counts[r.verdict];
        cx.out.line("[" + to_string(r.verdict) + "] " + r.location + " (" + to_string(r.expectation) + ")");
        if (!r.claim.empty()) cx.out.line("    claim: " + r.claim);
        for (const auto& d : r.details) cx.out.line("    " + d);
        cx.out.put("entry." + r.location, to_string(r.verdict));
        for (const auto& [k, v] : r.data) cx.out.put("entry." + r.location + "." + k, v);
        if (r.verdict == AuditVerdict::Failed) cx.fail();
    }
    for (auto v : {AuditVerdict::Confirmed, AuditVerdict::Corrected, AuditVerdict::Flagged, AuditVerdict::Failed}) {
        cx.out.put("count." + to_string(v), std::to_string(counts[v]));
    }
}

const std::map<std::string, std::function<void(TaskContext&)>>& handlers() {
    static const std::map<std::string, std::function<void(TaskContext&)>> h = {
        {"check_algebra", task_check_algebra},
        {"prolong", task_prolong},
        {"determining", task_determining},
        {"extend", task_extend},
        {"verify_extension", task_verify_extension},
        {"verify_adi", [](TaskContext& cx) { task_verify_invariant(cx, false); }},
        {"verify_rdi", [](TaskContext& cx) { task_verify_invariant(cx, true); }},
        {"solve_adi", task_solve_adi},
        {"independence", task_independence},
        {"audit", task_audit},
    };
    return h;
}

}  // namespace

std::vector<AuditResult> audit_case(const ProblemSpec& spec, const std::string& case_id, std::uint64_t seed) {
    const CorpusCase* c = find_case(case_id);
    if (!c) throw SpecError("unknown corpus case '" + case_id + "'");
    AuditContext ctx;
    ctx.chart = spec.chart;
    ctx.seed = seed;
    std::string anc = spec.chart.ancillary.empty() ? "" : spec.chart.ancillary.front();
    for (const auto& o : spec.ops) {
        ctx.op_names.push_back(o.name);
        ctx.ops.push_back(anc.empty() ? o.field : split_extension(o.field, anc).base);
    }
    return audit(ctx, c->entries);
}

Report run(const ProblemSpec& spec, std::uint64_t seed) {
    Report report;
    report.name = spec.name;
    report.seed = seed;
    report.digest = digest(spec.source);
    for (const auto& t : spec.tasks) {
        Section s;
        s.title = t.text;
        TaskContext cx{spec, t, seed, s};
        try {
            auto it = handlers().find(t.name);
            if (it == handlers().end()) throw SpecError("unknown task '" + t.name + "'", t.line);
            it->second(cx);
        } catch (const std::exception& e) {
            s.status = SectionStatus::Failed;
            s.line(std::string("error: ") + e.what());
            s.put("error", e.what());
        }
        report.sections.push_back(std::move(s));
    }
    return report;
}

int exit_code(const Report& report) { return report.failed() ? kExitFailed : kExitOk; }

int CorpusRun::exit_code() const {
    for (const auto& r : reports)
        if (r.failed()) return kExitFailed;
    return kExitOk;
}

std::string CorpusRun::summary() const {
    std::ostringstream os;
    os << "corpus summary (" << ids.size() << " cases: " << join(ids, ", ") << ")\n";
    for (auto v : {AuditVerdict::Confirmed, AuditVerdict::Corrected, AuditVerdict::Flagged, AuditVerdict::Failed}) {
        auto it = counts.find(v);
        os << to_string(v) << " = " << (it == counts.end() ? 0 : it->second) << "\n";
    }
    return os.str();
}

CorpusRun run_corpus(const std::vector<std::string>& ids, std::uint64_t seed) {
    CorpusRun out;
    if (ids.empty()) {
        for (const auto& c : corpus()) out.ids.push_back(c.id);
    } else {
        for (const auto& id : ids)
            if (!find_case(id)) throw SpecError("unknown corpus case '" + id + "'");
        out.ids = ids;
    }
    for (auto v : {AuditVerdict::Confirmed, AuditVerdict::Corrected, AuditVerdict::Flagged, AuditVerdict::Failed})
        out.counts[v] = 0;
    for (const auto& id : out.ids) {
        ProblemSpec spec = parse_spec(find_case(id)->spec);
        Report r = run(spec, seed);
        for (const auto& s : r.sections)
            for (const auto& [k, v] : s.data)
                for (auto verdict : {AuditVerdict::Confirmed, AuditVerdict::Corrected, AuditVerdict::Flagged,
                                     AuditVerdict::Failed})
                    if (k == "count." + to_string(verdict)) out.counts[verdict] += std::stoi(v);
        out.reports.push_back(std::move(r));
    }
    return out;
}

}  // namespace liext
