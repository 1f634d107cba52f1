#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xpathlog/ast.hpp"

namespace xpathlog {

// Atomic term of a flat atom.
struct FlatTerm {
  enum class Kind { root, variable, constant, literal };
  Kind kind = Kind::root;
  std::string name;
  Value literal;

  static FlatTerm root() { return {}; }
  static FlatTerm variable(std::string n) { return {Kind::variable, std::move(n), {}}; }
  static FlatTerm constant(std::string n) { return {Kind::constant, std::move(n), {}}; }
  static FlatTerm lit(Value v) { return {Kind::literal, {}, std::move(v)}; }

  bool operator==(const FlatTerm&) const = default;
};

// `host[axis::test->result]`, `pred(args)` or `lhs op rhs`.
struct FlatAtom {
  enum class Kind { step, predicate, compare };
  Kind kind = Kind::step;
  FlatTerm host;
  Axis axis = Axis::child;
  std::optional<int> position;
  NodeTest test;
  FlatTerm result;
  std::string name;            // predicate name
  std::vector<FlatTerm> args;  // predicate arguments or comparison operands
  CompareOp op = CompareOp::eq;

  bool operator==(const FlatAtom&) const = default;
};

struct Atomization {
  std::vector<FlatAtom> atoms;
  // Generated variables, in creation order.
  std::vector<std::string> locals;
};

// Fresh variables are named `_X<n>`, skipping names listed in `avoid`.
class Atomizer {
 public:
  explicit Atomizer(std::set<std::string> avoid = {}) : avoid_(std::move(avoid)) {}

  // Appends the flat atoms of `a` to the current result.
  void add(const Atom& a);
  Atomization take();

 private:
  FlatTerm expr(const Expr& e, const FlatTerm& context);
  void qualifier(const FlatTerm& host, const Qualifier& q);
  FlatTerm argument(const FlatTerm& host, const Term& t);
  std::string fresh();

  std::set<std::string> avoid_;
  int counter_ = 0;
  Atomization out_;
};

// Atoms of one formula; fresh names avoid the atom's own variables.
Atomization atomize(const Atom& a);
// All atoms of a head, sharing one counter and avoiding `avoid`.
Atomization atomize_all(const std::vector<Atom>& atoms, const std::set<std::string>& avoid);

std::string to_string(const FlatTerm& t);
std::string to_string(const FlatAtom& a);

// Flat atoms as body literals, for evaluating an atomization as a query.
std::vector<Literal> to_literals(const std::vector<FlatAtom>& atoms);

}  // namespace xpathlog
