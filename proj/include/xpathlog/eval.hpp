#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xpathlog/ast.hpp"
#include "xpathlog/bindings.hpp"
#include "xpathlog/xstructure.hpp"

namespace xpathlog {

// One entry of an annotated result list.
struct Annotated {
  Value value;
  BindingSet bindings;
};

using ResultList = std::vector<Annotated>;

// Distinct result values in first-occurrence order.
std::vector<Value> result_values(const ResultList& r);
// Union of the binding sets of entries equal to `v`.
BindingSet bindings_of(const ResultList& r, const Value& v);

// ---- built-ins shared by both evaluators ----

// Comparison after literal coercion. Two nodes compare by identity under
// `=`/`!=`; ordering between non-coercible values has no witness.
bool compare_values(const XStructure& s, CompareOp op, const Value& a, const Value& b);

// Arithmetic, string and numeric functions. Nullopt when the function has
// no result for these arguments (e.g. division by zero, non-numeric input).
// Throws UnknownFunction for names outside the table.
std::optional<Value> call_function(const XStructure& s, const std::string& name, const std::vector<Value>& args);
bool is_builtin_predicate(const std::string& name);

// ---- answer semantics ----

class Evaluator {
 public:
  explicit Evaluator(const XStructure& s) : s_(s) {}

  // Expression from context `x` with input bindings.
  ResultList eval_expr(const Expr& e, const Value& x, const BindingSet& bdgs);
  // Qualifier or atom at context `x`.
  BindingSet eval_qualifier(const Qualifier& q, const Value& x, const BindingSet& bdgs);
  ResultList eval_term(const Term& t, const Value& x, const BindingSet& bdgs);

  // Left-to-right evaluation of a query body.
  BindingSet answers(const std::vector<Literal>& query);

 private:
  ResultList eval_steps(const Expr& e, std::size_t from, const Value& x, const BindingSet& bdgs);
  ResultList eval_step(const Step& s, const Value& x, const BindingSet& bdgs);
  ResultList filter(ResultList in, const Qualifier& q, bool backward);
  BindingSet eval_compare(const Qualifier& q, const Value& x, const BindingSet& bdgs);
  BindingSet eval_predicate(const Qualifier& q, const Value& x, const BindingSet& bdgs);
  ResultList variable_entry(const Expr& e, const BindingSet& bdgs);
  ResultList entry_list(const Expr& e, const Value& x, const BindingSet& bdgs);

  const XStructure& s_;
  int context_depth_ = 0;
};

BindingSet answers(const XStructure& s, const std::vector<Literal>& query);

// document() sources referenced anywhere in the query.
std::vector<std::string> document_sources(const std::vector<Literal>& query);
std::vector<std::string> document_sources(const Qualifier& q);

// ---- reference truth semantics ----

// Ground evaluation of one atom under a complete assignment, without
// binding propagation. Used as the correctness oracle for Evaluator.
bool eval_truth(const XStructure& s, const Atom& atom, const Tuple& beta);
// Result list of an expression under a complete assignment.
std::vector<Value> eval_reference(const XStructure& s, const Expr& e, const Tuple& beta);

// Internal pseudo-variables carry this prefix and never reach answers.
inline constexpr char kInternalPrefix = '#';

}  // namespace xpathlog
