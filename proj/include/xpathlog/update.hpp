#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xpathlog/ast.hpp"
#include "xpathlog/bindings.hpp"
#include "xpathlog/xstructure.hpp"

namespace xpathlog {

// Host or result of a planned insertion.
struct PlanTerm {
  enum class Kind {
    value,         // an existing node or a literal
    local,         // head-local variable, bound to a node when first realized
    free_element,  // host of `/name[...]`: the new node becomes a root
    new_constant,  // constant symbol without a node yet: created as a root
  };
  Kind kind = Kind::value;
  Value value;
  std::string name;  // local variable or constant symbol

  bool operator==(const PlanTerm&) const = default;
};

struct InsertionAtom {
  enum class Kind { step, predicate };
  Kind kind = Kind::step;
  PlanTerm host;
  Axis axis = Axis::child;
  std::optional<int> position;
  std::string name;  // edge name; `text()` for text children
  PlanTerm result;
  std::vector<PlanTerm> args;  // predicate arguments

  bool operator==(const InsertionAtom&) const = default;
};

// Atoms in birth-before-use order.
struct InsertionPlan {
  std::vector<InsertionAtom> atoms;
};

// A fully resolved insertion.
struct GroundAtom {
  enum class Kind { step, predicate };
  Kind kind = Kind::step;
  NodeId host = kPseudoRoot;
  Axis axis = Axis::child;
  std::optional<int> position;
  std::string name;
  Value value;
  std::vector<Value> args;
};

struct ExtendReport {
  std::vector<std::string> warnings;
  std::size_t child_edges = 0;
  std::size_t attributes = 0;
  std::size_t facts = 0;
};

// Atomizes `head`, substitutes `beta` and keeps local variables symbolic.
InsertionPlan instantiate_head(const XStructure& s, const std::vector<Atom>& head, const Tuple& beta);

// Allocates nodes for local variables and free elements and returns the
// ground atoms of the plan. Only node allocation and root registration
// happen here; edges are added by extend.
std::vector<GroundAtom> realize(XStructure& s, const InsertionPlan& plan);

// Inserts a batch. Positions refer to the child lists before the batch.
ExtendReport extend(XStructure& s, const std::vector<GroundAtom>& atoms);

// realize followed by extend.
ExtendReport apply_plan(XStructure& s, const InsertionPlan& plan);

std::string to_string(const InsertionAtom& a, const XStructure& s);

}  // namespace xpathlog
