#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xpathlog/ast.hpp"

namespace xpathlog {

struct Command {
  std::string name;               // without the leading '@'
  std::vector<std::string> args;  // whitespace-separated words
  std::string raw;                // text after the name, trimmed
};

struct Statement {
  enum class Kind { rule, query, command, stratum_break };
  Kind kind = Kind::rule;
  Rule rule;
  std::vector<Literal> query;
  Command command;
  int line = 0;
};

// Rules, queries, `@` commands and `%% stratum` separators in source order.
std::vector<Statement> parse_script(std::string_view text);

// `?- L1, ..., Ln.` (the `?-` prefix is optional).
std::vector<Literal> parse_query(std::string_view text);

// Rules split into strata; heads checked for definiteness and safety.
Program parse_program(std::string_view text);

// A single atom; `head` admits positional axes.
Atom parse_atom(std::string_view text, bool head);

std::string to_string(const Expr& e);
std::string to_string(const Term& t);
std::string to_string(const Qualifier& q);
std::string to_string(const Literal& l);
std::string to_string(const Rule& r);
std::string query_to_string(const std::vector<Literal>& q);

// Throws DefinitenessError naming the offending construct.
void check_definite(const Atom& a);

// Throws SafetyError(variable, location) for the first unsafe occurrence.
void check_safety(const std::vector<Literal>& query);

// Head definiteness and head-variable coverage; throws HeadNotDefinite or
// UnsafeHeadVariable.
void check_rule(const Rule& r);

}  // namespace xpathlog
