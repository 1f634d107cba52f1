#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xpathlog/value.hpp"

namespace xpathlog {

enum class Axis {
  child,
  attribute,
  parent,
  ancestor,
  descendant,
  descendant_or_self,
  preceding_sibling,
  following_sibling,
  self,
};

bool is_backward(Axis a);
std::string_view axis_name(Axis a);
std::optional<Axis> axis_from_name(std::string_view name);

// One (value, name) pair of an axis result list.
struct Member {
  Value value;
  std::string name;
  bool operator==(const Member&) const = default;
};

using Fact = std::pair<std::string, std::vector<Value>>;

// The edge-labeled graph database. Copyable; copies are independent.
class XStructure {
 public:
  XStructure();

  NodeId alloc_node(std::optional<std::string> hint = std::nullopt, std::string tag = {});
  bool has_node(NodeId id) const;
  std::size_t node_count() const { return nodes_.size() - 1; }
  std::size_t edge_count() const;
  // All allocated nodes, in allocation order.
  std::vector<NodeId> node_ids() const;

  // Element name the node was created under; empty for the pseudo-root.
  const std::string& tag(NodeId id) const;
  // Unique display label: the hint when present, else tag followed by id.
  std::string display(NodeId id) const;
  void set_hint(NodeId id, std::string hint);
  const std::optional<std::string>& hint(NodeId id) const;

  // Value of the node's ID-typed attribute, recorded at load time.
  const std::optional<std::string>& id_value(NodeId id) const;
  void set_id_value(NodeId id, std::string value);

  const std::vector<Member>& children(NodeId id) const;
  const std::vector<Member>& attributes(NodeId id) const;
  // Parent ids in allocation order, without duplicates.
  const std::vector<NodeId>& parents(NodeId id) const;

  void append_child(NodeId host, std::string name, Value v);
  // Replace the whole child list; parent index is rebuilt for the host.
  void set_children(NodeId host, std::vector<Member> children);
  // Appends unless (name, value) is already present. Returns whether added.
  bool add_attribute(NodeId host, std::string name, Value v);

  std::vector<Member> axis_members(Axis a, NodeId x) const;

  bool assert_predicate(const std::string& pred, std::vector<Value> args);
  bool has_fact(const std::string& pred, const std::vector<Value>& args) const;
  const std::set<Fact>& facts() const { return facts_; }

  void bind_constant(const std::string& name, NodeId id);
  std::optional<NodeId> constant(const std::string& name) const;
  const std::map<std::string, NodeId>& constants() const { return constants_; }

  // Roots in creation order, with the element name each was created under.
  const std::vector<Member>& roots() const { return nodes_[kPseudoRoot].children; }
  void add_root(NodeId id);

  void register_document(const std::string& source, NodeId root);
  std::optional<NodeId> document(const std::string& source) const;
  const std::map<std::string, NodeId>& documents() const { return documents_; }

  // Concatenated text() children as a typed literal; other values unchanged.
  Value literal_value(const Value& v) const;

 private:
  struct NodeRecord {
    std::string tag;
    std::optional<std::string> hint;
    std::optional<std::string> id_value;
    std::vector<Member> children;
    std::vector<Member> attributes;
    std::vector<NodeId> parents;
  };

  const NodeRecord& record(NodeId id) const;
  NodeRecord& record(NodeId id);
  void link_parent(NodeId parent, const Value& child);
  void rebuild_parents_of(NodeId host, const std::vector<Member>& old_children);

  void collect_descendants(NodeId x, bool include_self, std::vector<Member>& out) const;
  void collect_ancestors(NodeId x, std::vector<Member>& out) const;

  std::vector<NodeRecord> nodes_;
  std::set<Fact> facts_;
  std::map<std::string, NodeId> constants_;
  std::map<std::string, NodeId> documents_;
};

}  // namespace xpathlog
