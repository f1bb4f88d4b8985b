#include "liext/corpus.hpp"

namespace liext {

namespace {

using Items = std::vector<std::string>;

AuditEntry entry(std::string id, std::string location, Expectation ex, EntryKind kind) {
    AuditEntry e;
    e.id = std::move(id);
    e.location = std::move(location);
    e.expectation = ex;
    e.kind = kind;
    return e;
}

AuditEntry structure(std::string loc, Items brackets) {
    auto e = entry("commutators", std::move(loc), Expectation::Confirm, EntryKind::Structure);
    e.items = std::move(brackets);
    return e;
}

AuditEntry determining(std::string loc, Items fns, Items args, Items conds) {
    auto e = entry("determining", std::move(loc), Expectation::Confirm, EntryKind::Determining);
    e.functions = std::move(fns);
    e.function_args = std::move(args);
    e.items = std::move(conds);
    return e;
}

AuditEntry extension(std::string id, std::string loc, Items a, Items fix = {}) {
    auto e = entry(std::move(id), std::move(loc), fix.empty() ? Expectation::Confirm : Expectation::Audit,
                   EntryKind::Extension);
    e.items = std::move(a);
    e.correction_items = std::move(fix);
    return e;
}

AuditEntry adi(std::string id, std::string loc, Expectation ex, std::string claim, int order,
               std::vector<ExtensionVariant> variants = {}, std::string paired = "", std::string fix = "") {
    auto e = entry(std::move(id), std::move(loc), ex, EntryKind::Adi);
    e.claim = std::move(claim);
    e.order = order;
    e.variants = std::move(variants);
    e.paired = std::move(paired);
    e.correction = std::move(fix);
    return e;
}

AuditEntry rdi(std::string id, std::string loc, Expectation ex, std::string claim, int order, bool proper,
               Items multipliers = {}, std::string paired = "", std::string fix = "") {
    auto e = entry(std::move(id), std::move(loc), ex, EntryKind::Rdi);
    e.claim = std::move(claim);
    e.order = order;
    e.proper = proper;
    e.multipliers = std::move(multipliers);
    e.paired = std::move(paired);
    e.correction = std::move(fix);
    return e;
}

AuditEntry independence(std::string id, std::string loc, Items thetas, int order, std::size_t rank) {
    auto e = entry(std::move(id), std::move(loc), Expectation::Confirm, EntryKind::Independence);
    e.items = std::move(thetas);
    e.order = order;
    e.rank = rank;
    return e;
}

AuditEntry prolongation(std::string loc, Expectation ex, Items ops, int order, std::string note = "") {
    auto e = entry("extended-prolongation", std::move(loc), ex, EntryKind::Prolongation);
    e.items = std::move(ops);
    e.order = order;
    e.note = std::move(note);
    return e;
}

AuditEntry product(std::string id, std::string loc, std::vector<std::pair<std::string, int>> factors,
                   std::string target, int order) {
    auto e = entry(std::move(id), std::move(loc), Expectation::Confirm, EntryKind::Product);
    e.factors = std::move(factors);
    e.claim = std::move(target);
    e.order = order;
    return e;
}

// Second-order table rows share this shape: seven ADIs next to seven RDIs,
// re-derived under the extension that makes the ADI column consistent and
// under the one printed with the prolonged operators.
void table_row(std::vector<AuditEntry>& out, const std::string& row, const Items& adis, const Items& rdis,
               const std::vector<bool>& proper, const std::vector<bool>& adi_audit,
               const std::vector<bool>& rdi_audit, const Items& fixes) {
    std::vector<ExtensionVariant> v = {{"ext_0_1", {"0", "1"}}, {"ext_1_1_printed", {"1", "1"}}};
    for (std::size_t i = 0; i < adis.size(); ++i) {
        std::string n = std::to_string(i + 1);
        out.push_back(adi("adi." + n, "table2." + row + ".adi." + n,
                          adi_audit[i] ? Expectation::Audit : Expectation::Confirm, adis[i], 2, v, rdis[i], fixes[i]));
    }
    for (std::size_t i = 0; i < rdis.size(); ++i) {
        std::string n = std::to_string(i + 1);
        out.push_back(rdi("rdi." + n, "table2." + row + ".rdi." + n,
                          rdi_audit[i] ? Expectation::Audit : Expectation::Confirm, rdis[i], 2, proper[i], {},
                          adis[i], fixes[i]));
    }
    out.push_back(independence("rdi-independence", "table2." + row + ".rdi-independence", rdis, 2, rdis.size()));
}

std::vector<ExtensionVariant> poincare_variants() {
    return {{"printed_eps_1", {"1", "1", "t + x + 1"}},
            {"eps_only_1", {"0", "0", "1"}},
            {"eps_only_minus_1", {"0", "0", "-1"}},
            {"aP_1_eps_0", {"1", "1", "t + x"}}};
}

std::vector<ExtensionVariant> zero_order_variants() {
    return {{"aP_1_eps_0", {"1", "1", "t + x"}}, {"aP_1_eps_1", {"1", "1", "t + x + 1"}}};
}

CorpusCase translation() {
    CorpusCase c;
    c.id = "T1";
    c.title = "translation operator extended by a(x) R d/dR";
    c.spec = R"dsl(spec translation;
vars x;
deps u(x);
aux R;
op Q = d/dx;
task check_algebra;
task verify_extension {"a(x)"};
task verify_rdi "exp(x)";
task solve_adi ansatz={exp(x), exp(-x), 1, x} kmin=-2 kmax=2 ext={1};
task audit corpus=T1;
)dsl";
    c.entries.push_back(extension("general-extension", "translation.general-extension", {"a(x)"}));
    auto pf = entry("equivalence", "translation.equivalence", Expectation::Confirm, EntryKind::Pushforward);
    pf.variants = {{"a_1", {"1"}}};
    pf.forward = {{"X", "x"}, {"S", "R*exp(-x)"}};
    pf.inverse = {{"x", "X"}, {"R", "S*exp(X)"}};
    pf.claim = "d/dX";
    c.entries.push_back(pf);
    c.entries.push_back(rdi("rdi", "translation.rdi", Expectation::Confirm, "exp(x)", 0, true, {"1"}, "exp(x)*R^-1"));
    c.entries.push_back(adi("adi", "translation.adi", Expectation::Confirm, "exp(x)*R^-1", 0, {{"a_1", {"1"}}}, "exp(x)"));
    return c;
}

CorpusCase row1() {
    CorpusCase c;
    c.id = "A1";
    c.title = "d/dx, x d/dx";
    c.spec = R"dsl(spec dilation_pair;
vars x, y;
deps u(x, y);
aux R;
op Q1 = d/dx;
op Q2 = x*d/dx;
task check_algebra;
task determining names={a, b} args={x, y};
task extend ansatz=poly(x, y; deg<=2);
task prolong order=2;
task solve_adi ansatz=poly(u_x, u_xx, u_xy; deg<=1) kmin=0 kmax=2 order=2 ext={0, 1};
task audit corpus=A1;
)dsl";
    auto& e = c.entries;
    e.push_back(structure("table1.row1.commutator", {"[Q1, Q2] = Q1"}));
    e.push_back(determining("table1.row1.determining", {"a", "b"}, {"x", "y"}, {"b_x(x,y) - x*a_x(x,y) = a(x,y)"}));
    e.push_back(extension("general", "table1.row1.general", {"a(x,y)", "x*a(x,y) + phi(y)"}));
    e.push_back(extension("inequivalent", "table1.row1.inequivalent", {"1", "x + eps"}));
    e.push_back(prolongation("table2.row1.prolongation", Expectation::Audit,
                             {"d/dx + R*d/dR", "x*d/dx - u_x*d/du_x - u_xx*d/du_xx - u_xy*d/du_xy + R*d/dR"}, 2));
    table_row(e, "row1", {"y", "u", "u_y", "u_yy", "u_x*R", "u_xx*R", "u_xy*R"},
              {"y", "u", "u_y", "u_yy", "u_x", "u_xx", "u_xy"}, {false, false, false, false, true, true, true},
              {false, false, false, false, true, true, true}, {false, false, false, false, false, false, false},
              {"", "", "", "", "", "", ""});
    return c;
}

CorpusCase row2() {
    CorpusCase c;
    c.id = "A2";
    c.title = "d/dx, y d/dx";
    c.spec = R"dsl(spec abelian_pair;
vars x, y;
deps u(x, y);
aux R;
op Q1 = d/dx;
op Q2 = y*d/dx;
task check_algebra;
task determining names={a, b} args={x, y};
task extend ansatz=poly(x, y; deg<=2);
task prolong order=2;
task verify_adi "u_x*u_xy - u_y*u_xx";
task verify_rdi "exp(u_y)";
task audit corpus=A2;
)dsl";
    auto& e = c.entries;
    e.push_back(structure("table1.row2.commutator", {"[Q1, Q2] = 0"}));
    e.push_back(determining("table1.row2.determining", {"a", "b"}, {"x", "y"}, {"b_x(x,y) - y*a_x(x,y)"}));
    e.push_back(extension("general", "table1.row2.general", {"a(x,y)", "y*a(x,y) + phi(y)"}));
    e.push_back(extension("inequivalent", "table1.row2.inequivalent", {"1", "y + eps"}));
    e.push_back(prolongation("table2.row2.prolongation", Expectation::Audit,
                             {"d/dx + R*d/dR", "y*d/dx - u_x*d/du_y - u_xx*d/du_xy - u_xy*d/du_yy + R*d/dR"}, 2));
    table_row(e, "row2",
              {"y", "u", "u_x", "u_xx", "exp(u_y/u_x)*R", "u_x*u_xy - u_y*u_xx", "u_xy^2 - 2*u_xx*u_yy"},
              {"y", "u", "u_x", "u_xx", "exp(u_y)", "u_x*u_xy - u_y*u_xx", "u_xy^2 - 2*u_xx*u_yy"},
              {false, false, false, false, true, false, false}, {false, false, false, false, true, false, true},
              {false, false, false, false, true, false, true}, {"", "", "", "", "", "", "u_xy^2 - u_xx*u_yy"});
    return c;
}

CorpusCase row3() {
    CorpusCase c;
    c.id = "A3";
    c.title = "d/dx, x d/dx + d/dy";
    c.spec = R"dsl(spec shifted_dilation_pair;
vars x, y;
deps u(x, y);
aux R;
op Q1 = d/dx;
op Q2 = x*d/dx + d/dy;
task check_algebra;
task determining names={a, b} args={x, y};
task verify_extension {"Phi_x(x,y)", "Phi_y(x,y) + x*Phi_x(x,y)"};
task prolong order=2;
task verify_rdi "exp(y)";
task audit corpus=A3;
)dsl";
    auto& e = c.entries;
    e.push_back(structure("table1.row3.commutator", {"[Q1, Q2] = Q1"}));
    e.push_back(determining("table1.row3.determining", {"a", "b"}, {"x", "y"},
                            {"b_x(x,y) - x*a_x(x,y) - a_y(x,y) = a(x,y)"}));
    e.push_back(extension("general", "table1.row3.general", {"Phi_x(x,y)", "Phi_y(x,y) - x*Phi_x(x,y)"},
                          {"Phi_x(x,y)", "Phi_y(x,y) + x*Phi_x(x,y)"}));
    e.push_back(extension("inequivalent", "table1.row3.inequivalent", {"Phi_x(x,y)", "Phi_y(x,y) - x*Phi_x(x,y)"},
                          {"Phi_x(x,y)", "Phi_y(x,y) + x*Phi_x(x,y)"}));
    e.push_back(prolongation(
        "table2.row3.prolongation", Expectation::Audit,
        {"d/dx + R*d/dR", "x*d/dx + d/dy - u_x*d/du_x - u_xx*d/du_xx - u_xy*d/du_xy + R*d/dR"}, 2));
    table_row(e, "row3", {"exp(y)*R^-1", "u", "u_y", "u_yy", "u_x*R", "u_xx*R", "u_xy*R"},
              {"exp(y)", "u", "u_y", "u_yy", "u_x", "u_xx", "u_xy"}, {true, false, false, false, true, true, true},
              {true, false, false, false, true, true, true}, {false, false, false, false, false, false, false},
              {"", "", "", "", "", "", ""});
    return c;
}

const char* kPoincareJet2 =
    "t*d/dx + x*d/dt + (t + x + eps)*R*d/dR - u_t*d/du_x - u_x*d/du_t - u_tt*d/du_tx - 2*u_tx*d/du_xx - "
    "2*u_tx*d/du_tt - u_xx*d/du_tx";

CorpusCase poincare() {
    CorpusCase c;
    c.id = "P1";
    c.title = "Poincare algebra P(1,1), standard realisation";
    c.spec = R"dsl(spec poincare;
vars t, x;
deps u(t, x);
aux R;
op Pt = d/dt;
op Px = d/dx;
op J = t*d/dx + x*d/dt;
task check_algebra;
task determining names={a, b, c} args={t, x};
task extend ansatz=poly(t, x; deg<=2);
task prolong order=2;
task verify_adi "(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)";
task verify_rdi "u_t - u_x";
task solve_adi ansatz=poly(u_tt, u_tx, u_xx; deg<=2) order=2;
task solve_adi ansatz=poly(u_t, u_x; deg<=1) kmin=-1 kmax=1 order=1 ext={0, 0, 1};
task independence {"u", "u_t^2 - u_x^2", "u_tt - u_xx", "(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)", "(u_t + u_x)^2*(u_tt - 2*u_tx + u_xx)"};
task audit corpus=P1;
)dsl";
    auto& e = c.entries;
    auto pv = poincare_variants();
    e.push_back(structure("poincare.commutators", {"[Pt, Px] = 0", "[Pt, J] = Px", "[Px, J] = Pt"}));
    Items adis = {"u", "u_t^2 - u_x^2", "u_tt - u_xx", "(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)",
                  "(u_t + u_x)^2*(u_tt - 2*u_tx + u_xx)"};
    for (std::size_t i = 0; i < adis.size(); ++i) {
        std::string n = std::to_string(i + 1);
        e.push_back(adi("adi." + n, "poincare.adi-basis." + n, Expectation::Confirm, adis[i], 2));
    }
    e.push_back(independence("adi-independence", "poincare.adi-basis.independence", adis, 2, 5));
    Items ars = {"u_t - u_x", "u_t + u_x", "u_tt + 2*u_tx + u_xx", "u_tt - 2*u_tx + u_xx"};
    std::vector<Items> mult = {{"0", "0", "1"}, {"0", "0", "-1"}, {"0", "0", "-2"}, {"0", "0", "2"}};
    for (std::size_t i = 0; i < ars.size(); ++i) {
        std::string n = std::to_string(i + 1);
        e.push_back(rdi("rdi." + n, "poincare.rdi." + n, Expectation::Confirm, ars[i], 2, true, mult[i]));
    }
    e.push_back(product("product.4", "poincare.rdi-products.1", {{"u_t - u_x", 2}, {"u_tt + 2*u_tx + u_xx", 1}}, adis[3], 2));
    e.push_back(product("product.5", "poincare.rdi-products.2", {{"u_t + u_x", 2}, {"u_tt - 2*u_tx + u_xx", 1}}, adis[4], 2));
    e.push_back(extension("general-extension", "poincare.general-extension",
                          {"Phi_t(t,x)", "Phi_x(t,x)", "t*Phi_x(t,x) + x*Phi_t(t,x) + C"}));
    e.push_back(determining("poincare.determining", {"a", "b", "c"}, {"t", "x"},
                            {"a_x(t,x) = b_t(t,x)", "c_t(t,x) - t*a_x(t,x) - x*a_t(t,x) = b(t,x)",
                             "c_x(t,x) - t*b_x(t,x) - x*b_t(t,x) = a(t,x)"}));
    e.push_back(extension("inequivalent-extension", "poincare.inequivalent-extension", {"1", "1", "t + x + eps"}));
    e.push_back(adi("zero-order-adi.1", "poincare.zero-order-adi.1", Expectation::Audit, "exp(t)*R^-1", 0,
                    zero_order_variants(), "exp(t)", "exp(t + x)*R^-1"));
    e.push_back(adi("zero-order-adi.2", "poincare.zero-order-adi.2", Expectation::Audit, "exp(x)*R^-1", 0,
                    zero_order_variants(), "exp(x)", "exp(t + x)*R^-1"));
    e.push_back(rdi("zero-order-rdi.1", "poincare.zero-order-rdi.1", Expectation::Confirm, "exp(t)", 0, true, {"1", "0", "x"}));
    e.push_back(rdi("zero-order-rdi.2", "poincare.zero-order-rdi.2", Expectation::Confirm, "exp(x)", 0, true, {"0", "1", "t"}));
    e.push_back(prolongation("poincare.extended-prolongation", Expectation::Confirm,
                             {"d/dt + R*d/dR", "d/dx + R*d/dR", kPoincareJet2}, 2));
    e.push_back(adi("first-order-ext-adi.1", "poincare.first-order-ext-adi.1", Expectation::Audit, "(u_t + u_x)*R^-1", 1,
                    pv, "u_t + u_x"));
    e.push_back(adi("first-order-ext-adi.2", "poincare.first-order-ext-adi.2", Expectation::Audit, "(u_t - u_x)*R", 1,
                    pv, "u_t - u_x"));
    e.push_back(rdi("first-order-rdi.1", "poincare.first-order-rdi.1", Expectation::Confirm, "u_t + u_x", 1, true));
    e.push_back(rdi("first-order-rdi.2", "poincare.first-order-rdi.2", Expectation::Confirm, "u_t - u_x", 1, true));
    auto det = entry("second-order-determining", "poincare.second-order-determining", Expectation::Audit,
                     EntryKind::DeterminingOperator);
    det.ops = {"J"};
    det.order = 2;
    det.items = {"u_tt", "u_tx", "u_xx"};
    det.claim = "2*u_tx*d/du_xx + 2*u_tx*d/du_tt + (u_xx + u_tt)*d/du_tx + R*d/dR";
    for (const auto& v : pv) det.variants.push_back({v.label, {v.a[2]}});
    e.push_back(det);
    e.push_back(adi("second-order-ext-adi.1", "poincare.second-order-ext-adi.1", Expectation::Confirm, "u_tt - u_xx", 2, pv,
                    "u_tt - u_xx"));
    e.push_back(adi("second-order-ext-adi.2", "poincare.second-order-ext-adi.2", Expectation::Audit,
                    "(u_tt + 2*u_tx + u_xx)*R^-2", 2, pv, "u_tt + 2*u_tx + u_xx"));
    e.push_back(adi("second-order-ext-adi.3", "poincare.second-order-ext-adi.3", Expectation::Audit,
                    "(u_tt - 2*u_tx + u_xx)*R^2", 2, pv, "u_tt - 2*u_tx + u_xx"));
    e.push_back(rdi("second-order-rdi.1", "poincare.second-order-rdi.1", Expectation::Confirm, "u_tt + 2*u_tx + u_xx", 2, true));
    e.push_back(rdi("second-order-rdi.2", "poincare.second-order-rdi.2", Expectation::Confirm, "u_tt - 2*u_tx + u_xx", 2, true));
    e.push_back(rdi("second-order-adi-not-rdi", "poincare.second-order-adi-not-rdi", Expectation::Confirm, "u_tt - u_xx", 2, false));
    return c;
}

CorpusCase nonlinear() {
    CorpusCase c;
    c.id = "P2";
    c.title = "Poincare algebra P(1,1), realisation with u d/du";
    c.spec = R"dsl(spec poincare_scaling;
vars t, x;
deps u(t, x);
aux R;
op Pt = d/dt;
op Px = d/dx;
op J = t*d/dx + x*d/dt + u*d/du;
task check_algebra;
task determining names={a, b, c} args={t, x, u};
task prolong order=2;
task verify_adi "(u_tt + 2*u_tx + u_xx)*u";
task verify_rdi "u_tt - 2*u_tx + u_xx";
task audit corpus=P2;
)dsl";
    auto& e = c.entries;
    e.push_back(structure("nonlinear.commutators", {"[Pt, Px] = 0", "[Pt, J] = Px", "[Px, J] = Pt"}));
    Items adis = {"u_t + u_x", "(u_t - u_x)*u^-2", "(u_tt - u_xx)*u^-1", "(u_tt + 2*u_tx + u_xx)*u",
                  "(u_tt - 2*u_tx + u_xx)*u^-3"};
    for (std::size_t i = 0; i < adis.size(); ++i) {
        std::string n = std::to_string(i + 1);
        e.push_back(adi("adi." + n, "nonlinear.adi-basis." + n, Expectation::Confirm, adis[i], 2));
    }
    e.push_back(independence("adi-independence", "nonlinear.adi-basis.independence", adis, 2, 5));
    e.push_back(extension("general-extension", "nonlinear.general-extension",
                          {"Phi_t(t,x,u)", "Phi_x(t,x,u)", "t*Phi_x(t,x,u) + x*Phi_t(t,x,u) + u*Phi_u(t,x,u) + C"}));
    e.push_back(determining("nonlinear.determining", {"a", "b", "c"}, {"t", "x", "u"},
                            {"a_x(t,x,u) = b_t(t,x,u)", "c_t(t,x,u) - t*a_x(t,x,u) - x*a_t(t,x,u) - u*a_u(t,x,u) = b(t,x,u)",
                             "c_x(t,x,u) - t*b_x(t,x,u) - x*b_t(t,x,u) - u*b_u(t,x,u) = a(t,x,u)"}));
    e.push_back(extension("inequivalent-extension", "nonlinear.inequivalent-extension", {"1", "1", "t + x + eps"}));
    e.push_back(adi("zero-order-adi.1", "nonlinear.zero-order-adi.1", Expectation::Audit, "exp(t)*R^-1", 0,
                    zero_order_variants(), "exp(t)", "exp(t + x)*R^-1"));
    e.push_back(adi("zero-order-adi.2", "nonlinear.zero-order-adi.2", Expectation::Audit, "exp(x)*R^-1", 0,
                    zero_order_variants(), "exp(x)", "exp(t + x)*R^-1"));
    e.push_back(rdi("zero-order-rdi.1", "nonlinear.zero-order-rdi.1", Expectation::Confirm, "exp(t)", 0, true, {"1", "0", "x"}));
    e.push_back(rdi("zero-order-rdi.2", "nonlinear.zero-order-rdi.2", Expectation::Confirm, "exp(x)", 0, true, {"0", "1", "t"}));
    e.push_back(prolongation(
        "nonlinear.extended-prolongation", Expectation::Audit,
        {"d/dt + R*d/dR", "d/dx + R*d/dR",
         "t*d/dx + x*d/dt + (t + x + eps)*R*d/dR + u*d/du + u_x*d/du_x + u_t*d/du_t + u_xx*d/du_xx + "
         "2*u_tx*d/du_tx + u_tt*d/du_t - u_t*d/du_x - u_x*d/du_t - u_tt*d/du_tx - 2*u_tx*d/du_xx - "
         "2*u_tx*d/du_tt - u_xx*d/du_tx"},
        2));
    Items irs = {"u", "u_t + u_x", "u_t - u_x", "u_tt - u_xx", "u_tt + 2*u_tx + u_xx", "u_tt - 2*u_tx + u_xx"};
    std::vector<Items> mult = {{"0", "0", "1"}, {"0", "0", "0"}, {"0", "0", "2"},
                               {"0", "0", "1"}, {"0", "0", "-1"}, {"0", "0", "3"}};
    for (std::size_t i = 0; i < irs.size(); ++i) {
        std::string n = std::to_string(i + 1);
        e.push_back(rdi("rdi." + n, "nonlinear.rdi." + n, Expectation::Confirm, irs[i], 2, i != 1, mult[i]));
    }
    return c;
}

}  // namespace

const std::vector<CorpusCase>& corpus() {
    static const std::vector<CorpusCase> cases = {translation(), row1(), row2(), row3(), poincare(), nonlinear()};
    return cases;
}

const CorpusCase* find_case(const std::string& id) {
    for (const auto& c : corpus())
        if (c.id == id) return &c;
    return nullptr;
}

}  // namespace liext
