#include "xpathlog/xstructure.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "xpathlog/errors.hpp"

namespace xpathlog {

namespace {

constexpr std::array<std::pair<Axis, std::string_view>, 9> kAxisNames{{
    {Axis::child, "child"},
    {Axis::attribute, "attribute"},
    {Axis::parent, "parent"},
    {Axis::ancestor, "ancestor"},
    {Axis::descendant, "descendant"},
    {Axis::descendant_or_self, "descendant-or-self"},
    {Axis::preceding_sibling, "preceding-sibling"},
    {Axis::following_sibling, "following-sibling"},
    {Axis::self, "self"},
}};

}  // namespace

bool is_backward(Axis a) { return a == Axis::ancestor || a == Axis::preceding_sibling; }

std::string_view axis_name(Axis a) {
  for (const auto& [axis, name] : kAxisNames) {
    if (axis == a) return name;
  }
  return "?";
}

std::optional<Axis> axis_from_name(std::string_view name) {
  for (const auto& [axis, n] : kAxisNames) {
    if (n == name) return axis;
  }
  return std::nullopt;
}

XStructure::XStructure() { nodes_.emplace_back(); }

NodeId XStructure::alloc_node(std::optional<std::string> hint, std::string tag) {
  NodeRecord r;
  r.tag = std::move(tag);
  r.hint = std::move(hint);
  nodes_.push_back(std::move(r));
  return static_cast<NodeId>(nodes_.size() - 1);
}

bool XStructure::has_node(NodeId id) const { return id != kPseudoRoot && id < nodes_.size(); }

std::size_t XStructure::edge_count() const {
  std::size_t n = 0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) n += nodes_[i].children.size() + nodes_[i].attributes.size();
  return n;
}

std::vector<NodeId> XStructure::node_ids() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size() - 1);
  for (std::size_t i = 1; i < nodes_.size(); ++i) out.push_back(static_cast<NodeId>(i));
  return out;
}

const XStructure::NodeRecord& XStructure::record(NodeId id) const {
  if (id >= nodes_.size()) throw NodeUnknown("node " + std::to_string(id));
  return nodes_[id];
}

XStructure::NodeRecord& XStructure::record(NodeId id) {
  if (id >= nodes_.size()) throw NodeUnknown("node " + std::to_string(id));
  return nodes_[id];
}

const std::string& XStructure::tag(NodeId id) const { return record(id).tag; }

std::string XStructure::display(NodeId id) const {
  if (id == kPseudoRoot) return "root";
  const auto& r = record(id);
  if (r.hint) return *r.hint;
  return (r.tag.empty() ? std::string("node") : r.tag) + std::to_string(id);
}

void XStructure::set_hint(NodeId id, std::string hint) { record(id).hint = std::move(hint); }
const std::optional<std::string>& XStructure::hint(NodeId id) const { return record(id).hint; }

const std::optional<std::string>& XStructure::id_value(NodeId id) const { return record(id).id_value; }
void XStructure::set_id_value(NodeId id, std::string value) { record(id).id_value = std::move(value); }

const std::vector<Member>& XStructure::children(NodeId id) const { return record(id).children; }
const std::vector<Member>& XStructure::attributes(NodeId id) const { return record(id).attributes; }
const std::vector<NodeId>& XStructure::parents(NodeId id) const { return record(id).parents; }

void XStructure::link_parent(NodeId parent, const Value& child) {
  if (!child.is_node() || parent == kPseudoRoot) return;
  auto& ps = record(child.node_id()).parents;
  auto it = std::lower_bound(ps.begin(), ps.end(), parent);
  if (it == ps.end() || *it != parent) ps.insert(it, parent);
}

void XStructure::append_child(NodeId host, std::string name, Value v) {
  if (host != kPseudoRoot && !has_node(host)) throw NodeUnknown("node " + std::to_string(host));
  if (v.is_node() && !has_node(v.node_id())) throw NodeUnknown("node " + std::to_string(v.node_id()));
  link_parent(host, v);
  record(host).children.push_back(Member{std::move(v), std::move(name)});
}

void XStructure::rebuild_parents_of(NodeId host, const std::vector<Member>& old_children) {
  if (host == kPseudoRoot) return;
  for (const auto& m : old_children) {
    if (!m.value.is_node()) continue;
    auto& ps = record(m.value.node_id()).parents;
    ps.erase(std::remove(ps.begin(), ps.end(), host), ps.end());
  }
  for (const auto& m : record(host).children) link_parent(host, m.value);
}

void XStructure::set_children(NodeId host, std::vector<Member> children) {
  if (host != kPseudoRoot && !has_node(host)) throw NodeUnknown("node " + std::to_string(host));
  for (const auto& m : children) {
    if (m.value.is_node() && !has_node(m.value.node_id())) throw NodeUnknown("node " + std::to_string(m.value.node_id()));
  }
  std::vector<Member> old = std::move(record(host).children);
  record(host).children = std::move(children);
  rebuild_parents_of(host, old);
}

bool XStructure::add_attribute(NodeId host, std::string name, Value v) {
  if (!has_node(host)) throw NodeUnknown("node " + std::to_string(host));
  if (v.is_node() && !has_node(v.node_id())) throw NodeUnknown("node " + std::to_string(v.node_id()));
  auto& attrs = record(host).attributes;
  for (const auto& m : attrs) {
    if (m.name == name && m.value == v) return false;
  }
  attrs.push_back(Member{std::move(v), std::move(name)});
  return true;
}

void XStructure::add_root(NodeId id) {
  if (!has_node(id)) throw NodeUnknown("node " + std::to_string(id));
  nodes_[kPseudoRoot].children.push_back(Member{Value::node(id), record(id).tag});
}

// Preorder walk. The guard tracks the current path only, so shared
// subelements (several parents) are listed once per path.
void XStructure::collect_descendants(NodeId x, bool include_self, std::vector<Member>& out) const {
  if (include_self) out.push_back(Member{Value::node(x), x == kPseudoRoot ? std::string() : record(x).tag});
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> stack{{x, 0}};
  std::unordered_set<NodeId> on_path{x};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& kids = record(f.node).children;
    if (f.next >= kids.size()) {
      on_path.erase(f.node);
      stack.pop_back();
      continue;
    }
    const Member& m = kids[f.next++];
    out.push_back(m);
    if (!m.value.is_node()) continue;
    NodeId c = m.value.node_id();
    if (!on_path.insert(c).second) throw CyclicDescent("cycle through " + display(c));
    stack.push_back(Frame{c, 0});
  }
}

void XStructure::collect_ancestors(NodeId x, std::vector<Member>& out) const {
  std::unordered_set<NodeId> on_path;
  auto walk = [&](auto&& self, NodeId n) -> void {
    if (!on_path.insert(n).second) throw CyclicDescent("cycle through " + display(n));
    for (NodeId p : record(n).parents) {
      out.push_back(Member{Value::node(p), record(p).tag});
      self(self, p);
    }
    on_path.erase(n);
  };
  walk(walk, x);
}

std::vector<Member> XStructure::axis_members(Axis a, NodeId x) const {
  if (x != kPseudoRoot && !has_node(x)) throw NodeUnknown("node " + std::to_string(x));
  const NodeRecord& r = nodes_[x];
  std::vector<Member> out;
  switch (a) {
    case Axis::child:
      return r.children;
    case Axis::attribute:
      return r.attributes;
    case Axis::self:
      out.push_back(Member{Value::node(x), r.tag});
      return out;
    case Axis::parent:
      for (NodeId p : r.parents) out.push_back(Member{Value::node(p), record(p).tag});
      return out;
    case Axis::ancestor:
      collect_ancestors(x, out);
      return out;
    case Axis::descendant:
      collect_descendants(x, false, out);
      return out;
    case Axis::descendant_or_self:
      collect_descendants(x, true, out);
      return out;
    case Axis::preceding_sibling:
    case Axis::following_sibling:
      for (NodeId p : r.parents) {
        const auto& kids = record(p).children;
        for (std::size_t i = 0; i < kids.size(); ++i) {
          if (!(kids[i].value.is_node() && kids[i].value.node_id() == x)) continue;
          if (a == Axis::following_sibling) {
            out.insert(out.end(), kids.begin() + static_cast<std::ptrdiff_t>(i) + 1, kids.end());
          } else {
            for (std::size_t j = i; j-- > 0;) out.push_back(kids[j]);
          }
        }
      }
      return out;
  }
  return out;
}

bool XStructure::assert_predicate(const std::string& pred, std::vector<Value> args) {
  for (const auto& v : args) {
    if (v.is_node() && !has_node(v.node_id())) throw NodeUnknown("node " + std::to_string(v.node_id()));
  }
  return facts_.emplace(pred, std::move(args)).second;
}

bool XStructure::has_fact(const std::string& pred, const std::vector<Value>& args) const {
  return facts_.count(Fact{pred, args}) > 0;
}

void XStructure::bind_constant(const std::string& name, NodeId id) {
  if (!has_node(id)) throw NodeUnknown("node " + std::to_string(id));
  constants_[name] = id;
}

std::optional<NodeId> XStructure::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

void XStructure::register_document(const std::string& source, NodeId root) {
  if (!has_node(root)) throw NodeUnknown("node " + std::to_string(root));
  documents_[source] = root;
}

std::optional<NodeId> XStructure::document(const std::string& source) const {
  auto it = documents_.find(source);
  if (it == documents_.end()) return std::nullopt;
  return it->second;
}

Value XStructure::literal_value(const Value& v) const {
  if (!v.is_node() || !has_node(v.node_id())) return v;
  std::string text;
  const Value* single = nullptr;
  std::size_t count = 0;
  for (const auto& m : record(v.node_id()).children) {
    if (m.name == kTextName && m.value.is_literal()) {
      text += literal_text(m.value);
      single = &m.value;
      ++count;
    }
  }
  if (count == 0) return v;
  if (count == 1) return *single;
  return parse_literal(text);
}

}  // namespace xpathlog
