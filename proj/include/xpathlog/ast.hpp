#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xpathlog/value.hpp"
#include "xpathlog/xstructure.hpp"

namespace xpathlog {

struct Qualifier;
struct Term;

struct NodeTest {
  enum class Kind { name, variable, text, node };
  Kind kind = Kind::name;
  std::string text;  // element/attribute name or variable name

  bool operator==(const NodeTest&) const = default;
};

// Target of `->`: a variable, or a literal/constant the selected value must equal.
struct BindTarget {
  enum class Kind { variable, literal, constant };
  Kind kind = Kind::variable;
  std::string name;
  Value literal;

  bool operator==(const BindTarget&) const = default;
};

struct Step {
  Axis axis = Axis::child;
  std::optional<int> position;  // head-only child(i) / sibling(j)
  NodeTest test;
  std::vector<Qualifier> before;  // qualifiers preceding the `->` site
  std::optional<BindTarget> bind;
  std::vector<Qualifier> after;

  bool operator==(const Step&) const;
};

enum class Entry { relative, rooted, document, constant, variable };

struct Expr {
  Entry entry = Entry::relative;
  std::string origin;  // document source, constant symbol or variable name
  std::vector<Qualifier> entry_quals;  // `C[...]`: qualifiers on the entry value itself
  std::vector<Step> steps;

  bool operator==(const Expr&) const;
};

struct Term {
  enum class Kind { literal, variable, constant, path, function, position, last };
  Kind kind = Kind::literal;
  Value literal;
  std::string name;  // variable, constant or function name
  Expr path;
  std::vector<Term> args;

  bool operator==(const Term&) const;
};

enum class CompareOp { eq, ne, lt, le, gt, ge };

// Step qualifiers and atoms share one shape. An atom is an `expr`,
// `predicate` or `compare` qualifier.
struct Qualifier {
  enum class Kind { expr, compare, predicate, negation, conjunction };
  Kind kind = Kind::expr;
  Expr expr;
  CompareOp op = CompareOp::eq;
  std::string name;         // predicate name
  std::vector<Term> terms;  // comparison operands or predicate arguments
  std::vector<Qualifier> parts;

  bool operator==(const Qualifier&) const;
};

using Atom = Qualifier;

struct Literal {
  bool negated = false;
  Atom atom;
  bool operator==(const Literal&) const = default;
};

struct Rule {
  std::vector<Atom> head;
  std::vector<Literal> body;
  int line = 0;
  bool operator==(const Rule&) const = default;
};

struct Program {
  std::vector<std::vector<Rule>> strata;
};

// Constructors used by the parser, generators and tests.
Term literal_term(Value v);
Term variable_term(std::string name);
Term path_term(Expr e);
Qualifier expr_qualifier(Expr e);
Qualifier compare_qualifier(CompareOp op, Term lhs, Term rhs);
Qualifier conjunction(std::vector<Qualifier> parts);

std::string_view compare_op_text(CompareOp op);

// Variables in order of first occurrence.
std::vector<std::string> variables_of(const Qualifier& q);
std::vector<std::string> variables_of(const Expr& e);
std::vector<std::string> variables_of(const Term& t);
std::vector<std::string> variables_of(const std::vector<Literal>& body);
std::set<std::string> variable_set(const Qualifier& q);

// True when position() or last() occurs at this qualifier's own level
// (qualifiers of nested steps are separate contexts).
bool uses_context_functions(const Qualifier& q);
bool uses_context_functions(const Term& t);

}  // namespace xpathlog
