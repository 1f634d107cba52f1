#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "xpathlog/xstructure.hpp"

namespace xpathlog {

// Readable gtest output for engine values.
void PrintTo(const Value& v, std::ostream* os);
void PrintTo(const Member& m, std::ostream* os);

}  // namespace xpathlog

namespace xpathlog::testing {

inline std::string fixture(const std::string& name) { return std::string(XPATHLOG_FIXTURES) + "/" + name; }
std::string read_fixture(const std::string& name);

// ---- isomorphism ----

// Canonical text of a structure: nodes renumbered by a depth-first walk
// over the ordered child lists of the roots (unreached nodes follow in
// allocation order), child lists kept in order, attributes and facts as
// sorted multisets. Equal texts mean equal up to node renaming.
std::string canonical_form(const XStructure& s);
bool isomorphic(const XStructure& a, const XStructure& b);

// ---- generators ----

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
  }

 private:
  std::mt19937_64 gen_;
};

inline const std::vector<std::string> kElementNames = {"a", "b", "c"};
inline const std::vector<std::string> kAttributeNames = {"x", "y"};
// Printed literal forms used by structures and generated expressions.
inline const std::vector<std::string> kLiterals = {"1", "2", "3", "\"u\"", "\"v\""};

struct StructureShape {
  int max_nodes = 10;
  int roots = 1;
  double text_chance = 0.3;
  double attribute_chance = 0.4;
  double reference_chance = 0.15;  // node-valued attribute
  double shared_chance = 0.0;      // extra child link to a later node
};

// A random forest. Child links always point from earlier to later nodes,
// so the structure is acyclic even with shared subelements.
XStructure random_structure(Rng& rng, const StructureShape& shape = {});

// Binds constants `n<id>` to every node so ground atoms can name nodes.
void name_nodes(XStructure& s);

// A definite atom as source text: rooted or variable entry, up to 4
// steps over child/attribute/sibling axes and up to 2 qualifiers.
std::string random_definite_atom(Rng& rng);

// A ground definite atom over the constants of `name_nodes`. Sibling
// steps are only generated from hosts that have a parent.
std::string random_ground_atom(Rng& rng, const XStructure& s);

struct ExprShape {
  int max_steps = 4;
  int max_vars = 2;
  bool context_functions = true;
  bool negation = true;
  bool dereference = true;
  bool variables = true;
};

// A rooted query expression over every query axis, with variables only
// at generating positions (binds and name variables).
std::string random_expression(Rng& rng, const ExprShape& shape = {});

// A positive, context-function-free program whose heads only create
// fresh subelements, attributes, text children or predicate facts.
std::string random_positive_program(Rng& rng);

struct DatalogProgram {
  std::string text;
  // Rules as (head, body) over predicate atoms with variable or integer
  // arguments; variables are strings starting with an uppercase letter.
  struct PAtom {
    std::string pred;
    std::vector<std::string> args;
  };
  struct PRule {
    PAtom head;
    std::vector<PAtom> body;
  };
  std::vector<PRule> rules;
};

DatalogProgram random_datalog_program(Rng& rng);

}  // namespace xpathlog::testing
