#pragma once

// Problem-spec DSL.
//
//   spec   ::= ['spec' name ';'] { decl } { task }
//   decl   ::= 'vars' id {',' id} ';'
//            | 'deps' id '(' id {',' id} ')' ';'
//            | 'aux' id ';'
//            | 'param' id '=' rational ';'
//            | 'op' id '=' opexpr ';'
//   task   ::= 'task' name [positional] {key '=' value} ';'
//   opexpr ::= sum of  [coefficient '*'] 'd/d' var  terms
//
// '#' starts a comment that runs to the end of the line. Parameters are
// constants substituted into operators and task expressions.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liext/expr.hpp"
#include "liext/vector_field.hpp"

namespace liext {

struct OperatorDecl {
    std::string name;
    VectorField field;
    std::size_t line = 0;
};

struct TaskDecl {
    std::string name;
    std::string positional;  // quoted string or brace list, raw text
    std::map<std::string, std::string> params;
    std::size_t line = 0;
    std::string text;  // statement as written, without the leading 'task'
};

struct ProblemSpec {
    std::string name = "unnamed";
    Chart chart;
    std::map<std::string, Rational> params;
    std::vector<OperatorDecl> ops;
    std::vector<TaskDecl> tasks;
    std::string source;

    const OperatorDecl* find_op(const std::string& name) const;
    std::vector<std::string> op_names() const;
    /// Expression text with parameters substituted.
    Expr expression(const std::string& text) const;
};

ProblemSpec parse_spec(std::string_view text);

/// "t*d/dx + x*d/dt - u_t*d/du_x"; coefficients may be any expression,
/// but a d/d term may not sit inside parentheses.
VectorField parse_operator(std::string_view text);

/// Items of a brace list {"a", b, ...}; quotes are optional.
std::vector<std::string> parse_list(std::string_view text);

/// Integer task parameter, or the fallback when absent.
int int_param(const TaskDecl& task, const std::string& key, int fallback);

}  // namespace liext
