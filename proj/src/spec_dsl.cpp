#include "liext/spec_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "liext/ansatz.hpp"
#include "liext/errors.hpp"

namespace liext {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !ident_start(s[0])) return false;
    return std::all_of(s.begin(), s.end(), ident_char);
}

struct Statement {
    std::string text;
    std::size_t line;
};

// Splits at ';' outside quotes and brackets, dropping comments.
std::vector<Statement> split_statements(std::string_view src) {
    std::vector<Statement> out;
    std::string cur;
    std::size_t line = 1, start_line = 1;
    int depth = 0;
    bool quoted = false, comment = false, empty = true;
    for (char c : src) {
        if (c == '\n') {
            ++line;
            comment = false;
        }
        if (comment) continue;
        if (!quoted && c == '#') {
            comment = true;
            continue;
        }
        if (c == '"') quoted = !quoted;
        if (!quoted) {
            if (c == '(' || c == '{' || c == '[') ++depth;
            if (c == ')' || c == '}' || c == ']') --depth;
            if (depth < 0) throw ParseError("unbalanced closing bracket", 0, line);
            if (c == ';' && depth == 0) {
                out.push_back({trim(cur), start_line});
                cur.clear();
                empty = true;
                continue;
            }
        }
        if (empty && !std::isspace(static_cast<unsigned char>(c))) {
            empty = false;
            start_line = line;
        }
        cur += c;
    }
    if (quoted) throw ParseError("unterminated string", 0, start_line);
    if (depth != 0) throw ParseError("unbalanced brackets", 0, start_line);
    if (!trim(cur).empty()) throw ParseError("missing ';' after statement", 0, start_line);
    return out;
}

std::pair<std::string, std::string> head_word(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && ident_char(s[i])) ++i;
    return {s.substr(0, i), trim(std::string_view(s).substr(i))};
}

std::vector<std::string> split_commas(std::string_view s) {
    std::vector<std::string> out;
    int depth = 0;
    bool quoted = false;
    std::string cur;
    for (char c : s) {
        if (c == '"') quoted = !quoted;
        if (!quoted) {
            if (c == '(' || c == '{') ++depth;
            if (c == ')' || c == '}') --depth;
            if (c == ',' && depth == 0) {
                out.push_back(trim(cur));
                cur.clear();
                continue;
            }
        }
        cur += c;
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

// Positions of top-level "key=" starts in a task body.
std::vector<std::size_t> key_positions(const std::string& s) {
    std::vector<std::size_t> out;
    int depth = 0;
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '"') quoted = !quoted;
        if (quoted) continue;
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (depth != 0 || !ident_start(c) || (i > 0 && !std::isspace(static_cast<unsigned char>(s[i - 1]))))
            continue;
        std::size_t j = i;
        while (j < s.size() && ident_char(s[j])) ++j;
        std::size_t k = j;
        while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
        if (k < s.size() && s[k] == '=' && (k + 1 >= s.size() || s[k + 1] != '=')) out.push_back(i);
    }
    return out;
}

const std::set<std::string> kTasks = {"check_algebra", "prolong",      "determining", "extend",
                                      "verify_extension", "verify_adi", "verify_rdi", "solve_adi",
                                      "independence", "audit"};

}  // namespace

std::vector<std::string> parse_list(std::string_view text) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw ParseError("expected a {...} list", 0);
    std::vector<std::string> out;
    for (auto& item : split_commas(std::string_view(t).substr(1, t.size() - 2))) {
        if (item.size() >= 2 && item.front() == '"' && item.back() == '"') item = item.substr(1, item.size() - 2);
        if (trim(item).empty()) throw ParseError("empty list item", 0);
        out.push_back(trim(item));
    }
    return out;
}

VectorField parse_operator(std::string_view text) {
    std::map<std::string, Expr> acc;
    std::string s(text);
    std::size_t seg = 0;
    int depth = 0;
    bool any = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (s.compare(i, 3, "d/d") != 0 || (i > 0 && ident_char(s[i - 1]))) continue;
        if (depth != 0) throw ParseError("d/d inside parentheses is not supported; expand the operator", i);
        std::size_t j = i + 3;
        while (j < s.size() && ident_char(s[j])) ++j;
        std::string var = s.substr(i + 3, j - i - 3);
        if (!is_identifier(var)) throw ParseError("expected a variable after d/d", i);
        std::string coef = trim(std::string_view(s).substr(seg, i - seg));
        if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
        Expr c;
        if (any && coef.empty()) throw ParseError("expected '+' or '-' between operator terms", seg);
        if (coef.empty() || coef == "+")
            c = Expr(1);
        else if (coef == "-")
            c = Expr(-1);
        else if (any && coef.front() != '+' && coef.front() != '-')
            throw ParseError("expected '+' or '-' between operator terms", seg);
        else
            c = parse(coef);
        var = canonical_identifier(var);
        acc[var] = acc.count(var) ? acc[var] + c : c;
        any = true;
        seg = j;
        i = j - 1;
    }
    if (!trim(std::string_view(s).substr(seg)).empty())
        throw ParseError("trailing text after the last d/d term: '" + trim(std::string_view(s).substr(seg)) + "'", seg);
    if (!any && trim(s) != "0") throw ParseError("operator has no d/d terms", 0);
    return VectorField(acc);
}

const OperatorDecl* ProblemSpec::find_op(const std::string& n) const {
    for (const auto& o : ops)
        if (o.name == n) return &o;
    return nullptr;
}

std::vector<std::string> ProblemSpec::op_names() const {
    std::vector<std::string> out;
    for (const auto& o : ops) out.push_back(o.name);
    return out;
}

Expr ProblemSpec::expression(const std::string& text) const {
    Expr e = parse(text);
    if (params.empty()) return e;
    std::map<std::string, Expr> b;
    auto vars = variables(e);
    for (const auto& [k, v] : params)
        if (vars.count(k)) b.emplace(k, Expr(v));
    return b.empty() ? e : substitute(e, b);
}

int int_param(const TaskDecl& task, const std::string& key, int fallback) {
    auto it = task.params.find(key);
    if (it == task.params.end()) return fallback;
    const std::string& v = it->second;
    std::size_t i = (v.size() > 1 && v[0] == '-') ? 1 : 0;
    if (v.empty() || i == v.size() || v.find_first_not_of("0123456789", i) != std::string::npos)
        throw SpecError("parameter " + key + " must be an integer, got '" + v + "'", task.line);
    return std::stoi(v);
}

namespace {

// Names an expression may use: coordinates, jet coordinates of declared
// dependents, parameters.
void check_symbols(const ProblemSpec& spec, const Expr& e, bool allow_jet, std::size_t line) {
    for (const auto& v : variables(e)) {
        if (spec.chart.contains(v) || spec.params.count(v)) continue;
        auto us = v.find('_');
        if (allow_jet && us != std::string::npos) {
            std::string u = v.substr(0, us);
            const auto& deps = spec.chart.dependent;
            if (std::find(deps.begin(), deps.end(), u) != deps.end()) {
                auto args = spec.chart.arguments_of(u);
                bool ok = us + 1 < v.size();
                for (char c : v.substr(us + 1))
                    ok = ok && std::find(args.begin(), args.end(), std::string(1, c)) != args.end();
                if (ok) continue;
            }
        }
        throw SpecError("undeclared symbol '" + v + "'", line);
    }
}

void validate_task(const ProblemSpec& spec, const TaskDecl& t) {
    auto need = [&](const std::string& key) {
        if (!t.params.count(key)) throw SpecError("task " + t.name + " needs " + key + "=", t.line);
    };
    auto no_positional = [&] {
        if (!t.positional.empty()) throw SpecError("task " + t.name + " takes no positional argument", t.line);
    };
    if (t.params.count("ops")) {
        for (const auto& o : parse_list(t.params.at("ops")))
            if (!spec.find_op(o)) throw SpecError("task " + t.name + " references undeclared operator '" + o + "'", t.line);
    }
    for (const auto& key : {"order", "kmin", "kmax"}) int_param(t, key, 0);
    if (t.name == "check_algebra") {
        no_positional();
    } else if (t.name == "prolong") {
        no_positional();
        need("order");
        if (int_param(t, "order", 0) < 0) throw SpecError("order must be non-negative", t.line);
    } else if (t.name == "determining") {
        no_positional();
    } else if (t.name == "extend" || t.name == "solve_adi") {
        no_positional();
        need("ansatz");
        Ansatz a = Ansatz::parse(t.params.at("ansatz"));
        for (const auto& b : a.basis()) check_symbols(spec, spec.expression(b.str()), t.name == "solve_adi", t.line);
    } else if (t.name == "verify_extension") {
        std::string list = t.positional.empty() && t.params.count("a") ? t.params.at("a") : t.positional;
        auto items = parse_list(list);
        if (items.size() != spec.ops.size() && !t.params.count("ops"))
            throw SpecError("verify_extension needs one coefficient per operator", t.line);
        for (const auto& i : items) check_symbols(spec, spec.expression(i), false, t.line);
    } else if (t.name == "verify_adi" || t.name == "verify_rdi") {
        if (t.positional.size() < 2 || t.positional.front() != '"')
            throw SpecError("task " + t.name + " needs a quoted expression", t.line);
        check_symbols(spec, spec.expression(t.positional.substr(1, t.positional.size() - 2)), true, t.line);
    } else if (t.name == "independence") {
        for (const auto& i : parse_list(t.positional)) check_symbols(spec, spec.expression(i), true, t.line);
    } else if (t.name == "audit") {
        no_positional();
        need("corpus");
    }
}

}  // namespace

ProblemSpec parse_spec(std::string_view text) {
    ProblemSpec spec;
    spec.source = std::string(text);
    bool seen_decl = false, seen_task = false;
    for (const auto& st : split_statements(text)) {
        if (st.text.empty()) throw ParseError("empty statement", 0, st.line);
        auto [kw, rest] = head_word(st.text);
        auto fail = [&](const std::string& msg) -> ParseError { return ParseError("line " + std::to_string(st.line) + ": " + msg, 0, st.line); };
        try {
            if (kw == "spec") {
                if (seen_decl || seen_task) throw fail("'spec' header must come first");
                if (!is_identifier(rest)) throw fail("expected a spec name");
                spec.name = rest;
            } else if (kw == "vars" || kw == "aux") {
                if (seen_task) throw fail("declarations must precede tasks");
                seen_decl = true;
                for (const auto& v : split_commas(rest)) {
                    if (!is_identifier(v)) throw fail("expected identifier, got '" + v + "'");
                    if (spec.chart.contains(v) || spec.params.count(v))
                        throw SpecError("'" + v + "' declared twice", st.line);
                    (kw == "vars" ? spec.chart.independent : spec.chart.ancillary).push_back(v);
                }
                if (spec.chart.ancillary.size() > 1) throw SpecError("at most one ancillary variable is supported", st.line);
            } else if (kw == "deps") {
                if (seen_task) throw fail("declarations must precede tasks");
                seen_decl = true;
                auto open = rest.find('(');
                if (open == std::string::npos || rest.back() != ')') throw fail("expected deps u(x, ...)");
                std::string u = trim(rest.substr(0, open));
                if (!is_identifier(u) || u.find('_') != std::string::npos) throw fail("bad dependent variable name '" + u + "'");
                if (spec.chart.contains(u) || spec.params.count(u)) throw SpecError("'" + u + "' declared twice", st.line);
                std::vector<std::string> args;
                for (const auto& a : split_commas(rest.substr(open + 1, rest.size() - open - 2))) {
                    auto& ind = spec.chart.independent;
                    if (std::find(ind.begin(), ind.end(), a) == ind.end())
                        throw SpecError("'" + a + "' is not a declared independent variable", st.line);
                    args.push_back(a);
                }
                spec.chart.dependent.push_back(u);
                spec.chart.depends_on[u] = args;
            } else if (kw == "param") {
                if (seen_task) throw fail("declarations must precede tasks");
                seen_decl = true;
                auto eq = rest.find('=');
                if (eq == std::string::npos) throw fail("expected param name = value");
                std::string n = trim(rest.substr(0, eq));
                if (!is_identifier(n)) throw fail("bad parameter name");
                if (spec.chart.contains(n) || spec.params.count(n)) throw SpecError("'" + n + "' declared twice", st.line);
                auto v = parse(trim(rest.substr(eq + 1))).constant_value();
                if (!v) throw SpecError("parameter value must be a rational constant", st.line);
                spec.params[n] = *v;
            } else if (kw == "op") {
                if (seen_task) throw fail("declarations must precede tasks");
                seen_decl = true;
                auto eq = rest.find('=');
                if (eq == std::string::npos) throw fail("expected op NAME = ...");
                std::string n = trim(rest.substr(0, eq));
                if (!is_identifier(n)) throw fail("bad operator name");
                if (spec.find_op(n)) throw SpecError("operator '" + n + "' declared twice", st.line);
                VectorField raw = parse_operator(rest.substr(eq + 1));
                VectorField f;
                for (const auto& [v, c] : raw.coefficients()) {
                    if (!spec.chart.contains(v)) throw SpecError("operator " + n + " acts on undeclared '" + v + "'", st.line);
                    Expr cc = spec.expression(c.str());
                    check_symbols(spec, cc, false, st.line);
                    f.set(v, cc);
                }
                spec.ops.push_back({n, f, st.line});
            } else if (kw == "task") {
                seen_task = true;
                auto [tn, body] = head_word(rest);
                if (!kTasks.count(tn)) throw SpecError("unknown task '" + tn + "'", st.line);
                TaskDecl t;
                t.name = tn;
                t.line = st.line;
                t.text = rest;
                auto keys = key_positions(" " + body);
                std::string padded = " " + body;
                std::size_t first = keys.empty() ? padded.size() : keys[0];
                t.positional = trim(std::string_view(padded).substr(0, first));
                for (std::size_t k = 0; k < keys.size(); ++k) {
                    std::size_t end = k + 1 < keys.size() ? keys[k + 1] : padded.size();
                    std::string kv = padded.substr(keys[k], end - keys[k]);
                    auto eq = kv.find('=');
                    std::string key = trim(kv.substr(0, eq)), val = trim(kv.substr(eq + 1));
                    if (val.empty()) throw fail("empty value for " + key);
                    if (t.params.count(key)) throw fail("parameter " + key + " given twice");
                    t.params[key] = val;
                }
                spec.tasks.push_back(std::move(t));
            } else {
                throw fail("unknown statement '" + kw + "'");
            }
        } catch (const ParseError& e) {
            if (e.line() != 0) throw;
            throw ParseError("line " + std::to_string(st.line) + ": " + e.what(), e.position(), st.line);
        } catch (const SpecError& e) {
            if (e.line() != 0) throw;
            throw SpecError("line " + std::to_string(st.line) + ": " + e.what(), st.line);
        }
    }
    if (spec.chart.independent.empty() && spec.chart.dependent.empty()) throw SpecError("no variables declared", 1);
    try {
        spec.chart.validate();
    } catch (const SpecError& e) {
        throw SpecError(e.what(), 1);
    }
    for (const auto& t : spec.tasks) {
        try {
            validate_task(spec, t);
        } catch (const SpecError& e) {
            if (e.line() != 0) throw;
            throw SpecError("line " + std::to_string(t.line) + ": " + e.what(), t.line);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(t.line) + ": " + e.what(), e.position(), t.line);
        }
    }
    return spec;
}

}  // namespace liext
