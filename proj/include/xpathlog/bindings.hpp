#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xpathlog/value.hpp"

namespace xpathlog {

// One variable assignment, sorted by variable name.
using Tuple = std::vector<std::pair<std::string, Value>>;

const Value* lookup(const Tuple& t, std::string_view var);
Tuple with_binding(Tuple t, const std::string& var, Value v);
// Nullopt when the tuples disagree on a shared variable.
std::optional<Tuple> merge(const Tuple& a, const Tuple& b);
// Every binding of `a` also occurs in `b`.
bool subsumed_by(const Tuple& a, const Tuple& b);
Tuple project(const Tuple& t, const std::set<std::string>& vars);
Tuple without(const Tuple& t, const std::set<std::string>& vars);

// A set of assignments. The empty set and {true} (one empty tuple) are
// distinct values.
class BindingSet {
 public:
  using const_iterator = std::set<Tuple>::const_iterator;

  BindingSet() = default;
  static BindingSet truth();
  static BindingSet single(Tuple t);

  bool empty() const { return tuples_.empty(); }
  std::size_t size() const { return tuples_.size(); }
  bool is_truth() const { return tuples_.size() == 1 && tuples_.begin()->empty(); }
  bool contains(const Tuple& t) const { return tuples_.count(t) > 0; }
  void insert(Tuple t) { tuples_.insert(std::move(t)); }
  void insert_all(const BindingSet& o) { tuples_.insert(o.tuples_.begin(), o.tuples_.end()); }

  const_iterator begin() const { return tuples_.begin(); }
  const_iterator end() const { return tuples_.end(); }
  const std::set<Tuple>& tuples() const { return tuples_; }

  // Union of the variables of all tuples.
  std::set<std::string> schema() const;
  // True when every tuple binds `var`.
  bool binds_everywhere(std::string_view var) const;

  bool operator==(const BindingSet&) const = default;

 private:
  std::set<Tuple> tuples_;
};

BindingSet natural_join(const BindingSet& a, const BindingSet& b);
BindingSet subsume_minus(const BindingSet& base, const BindingSet& removed);
BindingSet project(const BindingSet& b, const std::set<std::string>& vars);
BindingSet without(const BindingSet& b, const std::set<std::string>& vars);

}  // namespace xpathlog
