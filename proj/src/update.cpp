#include "xpathlog/update.hpp"

#include <map>

#include "xpathlog/atomizer.hpp"
#include "xpathlog/errors.hpp"
#include "xpathlog/syntax.hpp"

namespace xpathlog {

namespace {

// Union-find over local variables, with at most one ground value per class.
class LocalClasses {
 public:
  std::string find(const std::string& v) {
    auto it = parent_.find(v);
    if (it == parent_.end() || it->second == v) return v;
    std::string r = find(it->second);
    parent_[v] = r;
    return r;
  }

  void unite(const std::string& a, const std::string& b) {
    std::string ra = find(a);
    std::string rb = find(b);
    if (ra == rb) return;
    auto va = value_.find(ra);
    auto vb = value_.find(rb);
    if (va != value_.end() && vb != value_.end()) {
      if (!same_value(va->second, vb->second)) throw UnsupportedFusion(a + " = " + b);
    }
    parent_[rb] = ra;
    if (va == value_.end() && vb != value_.end()) value_[ra] = vb->second;
  }

  void assign(const std::string& v, const Value& x) {
    std::string r = find(v);
    auto it = value_.find(r);
    if (it != value_.end()) {
      if (!same_value(it->second, x)) throw UnsupportedFusion(v + " bound to two values");
      return;
    }
    value_[r] = x;
  }

  std::optional<Value> value(const std::string& v) {
    auto it = value_.find(find(v));
    if (it == value_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::map<std::string, std::string> parent_;
  std::map<std::string, Value> value_;
};

class Instantiator {
 public:
  Instantiator(const XStructure& s, const Tuple& beta, const std::set<std::string>& locals)
      : s_(s), beta_(beta), locals_(locals) {}

  // Ground value of a non-local term, if any.
  std::optional<Value> ground(const FlatTerm& t) {
    switch (t.kind) {
      case FlatTerm::Kind::literal: return t.literal;
      case FlatTerm::Kind::constant: {
        auto c = s_.constant(t.name);
        if (c) return Value::node(*c);
        return std::nullopt;
      }
      case FlatTerm::Kind::variable: {
        if (locals_.count(t.name)) return classes_.value(t.name);
        const Value* v = lookup(beta_, t.name);
        if (v == nullptr) throw UnboundHeadVariable(t.name);
        return *v;
      }
      case FlatTerm::Kind::root: return std::nullopt;
    }
    return std::nullopt;
  }

  void unify(const FlatAtom& a) {
    const FlatTerm& l = a.args[0];
    const FlatTerm& r = a.args[1];
    bool ll = l.kind == FlatTerm::Kind::variable && locals_.count(l.name);
    bool rl = r.kind == FlatTerm::Kind::variable && locals_.count(r.name);
    if (ll && rl) {
      classes_.unite(l.name, r.name);
      return;
    }
    if (ll || rl) {
      const FlatTerm& var = ll ? l : r;
      const FlatTerm& other = ll ? r : l;
      auto v = ground(other);
      if (!v) throw UnsupportedFusion(to_string(a));
      if (v->is_node()) {
        classes_.assign(var.name, *v);
      } else {
        // A created element equal to a literal holds it as text.
        texts_.emplace_back(var.name, *v);
      }
      return;
    }
    auto lv = ground(l);
    auto rv = ground(r);
    if (!lv || !rv || !same_value(*lv, *rv)) throw UnsupportedFusion(to_string(a));
  }

  PlanTerm term(const FlatTerm& t, bool as_host) {
    PlanTerm p;
    switch (t.kind) {
      case FlatTerm::Kind::root:
        p.kind = PlanTerm::Kind::free_element;
        return p;
      case FlatTerm::Kind::literal:
        p.value = t.literal;
        return p;
      case FlatTerm::Kind::constant: {
        auto c = s_.constant(t.name);
        if (c) {
          p.value = Value::node(*c);
        } else if (as_host) {
          p.kind = PlanTerm::Kind::new_constant;
          p.name = t.name;
        } else {
          throw HostUnknown("constant " + t.name);
        }
        return p;
      }
      case FlatTerm::Kind::variable:
        if (locals_.count(t.name)) {
          if (auto v = classes_.value(t.name)) {
            p.value = *v;
            return p;
          }
          p.kind = PlanTerm::Kind::local;
          p.name = classes_.find(t.name);
          return p;
        }
        p.value = *ground(t);
        return p;
    }
    return p;
  }

  const std::vector<std::pair<std::string, Value>>& texts() const { return texts_; }

  std::string edge_name(const NodeTest& t) {
    switch (t.kind) {
      case NodeTest::Kind::name: return t.text;
      case NodeTest::Kind::text: return std::string(kTextName);
      case NodeTest::Kind::variable: {
        const Value* v = lookup(beta_, t.text);
        if (v == nullptr) throw UnboundHeadVariable(t.text);
        if (v->is_name()) return v->as_name();
        if (v->is_string()) return v->as_string();
        throw UnboundHeadVariable(t.text + " is not bound to a name");
      }
      case NodeTest::Kind::node: break;
    }
    throw HeadNotDefinite("node() in a head");
  }

 private:
  const XStructure& s_;
  const Tuple& beta_;
  const std::set<std::string>& locals_;
  LocalClasses classes_;
  std::vector<std::pair<std::string, Value>> texts_;
};

}  // namespace

InsertionPlan instantiate_head(const XStructure& s, const std::vector<Atom>& head, const Tuple& beta) {
  std::set<std::string> avoid;
  for (const auto& [var, v] : beta) avoid.insert(var);
  Atomization z = atomize_all(head, avoid);
  std::set<std::string> locals(z.locals.begin(), z.locals.end());
  Instantiator in(s, beta, locals);
  for (const auto& a : z.atoms) {
    if (a.kind == FlatAtom::Kind::compare) {
      if (a.op != CompareOp::eq) throw HeadNotDefinite("comparison in a head");
      in.unify(a);
    }
  }
  InsertionPlan plan;
  for (const auto& a : z.atoms) {
    if (a.kind == FlatAtom::Kind::compare) continue;
    InsertionAtom out;
    if (a.kind == FlatAtom::Kind::predicate) {
      out.kind = InsertionAtom::Kind::predicate;
      out.name = a.name;
      for (const auto& t : a.args) out.args.push_back(in.term(t, false));
      plan.atoms.push_back(std::move(out));
      continue;
    }
    out.host = in.term(a.host, true);
    out.axis = a.axis;
    out.position = a.position;
    out.name = in.edge_name(a.test);
    out.result = in.term(a.result, false);
    if (out.host.kind == PlanTerm::Kind::free_element && a.axis != Axis::child) {
      throw HeadNotDefinite("only child steps may start at the root");
    }
    if (out.host.kind == PlanTerm::Kind::value && !out.host.value.is_node()) {
      throw HostUnknown("literal host " + to_string(a.host));
    }
    if (out.result.kind == PlanTerm::Kind::local &&
        (a.test.kind == NodeTest::Kind::text || a.axis == Axis::attribute)) {
      throw UnboundHeadVariable(out.result.name + " in " + to_string(a));
    }
    plan.atoms.push_back(std::move(out));
  }
  for (const auto& [var, lit] : in.texts()) {
    InsertionAtom t;
    t.host = in.term(FlatTerm::variable(var), true);
    t.name = std::string(kTextName);
    t.result.value = lit;
    plan.atoms.push_back(std::move(t));
  }
  return plan;
}

std::vector<GroundAtom> realize(XStructure& s, const InsertionPlan& plan) {
  std::map<std::string, Value> locals;
  std::vector<GroundAtom> out;
  auto resolve = [&](const PlanTerm& t) -> std::optional<Value> {
    switch (t.kind) {
      case PlanTerm::Kind::value: return t.value;
      case PlanTerm::Kind::local: {
        auto it = locals.find(t.name);
        if (it == locals.end()) return std::nullopt;
        return it->second;
      }
      case PlanTerm::Kind::free_element: return Value::node(kPseudoRoot);
      case PlanTerm::Kind::new_constant: {
        if (auto c = s.constant(t.name)) return Value::node(*c);
        NodeId n = s.alloc_node(std::nullopt, t.name);
        s.add_root(n);
        s.bind_constant(t.name, n);
        return Value::node(n);
      }
    }
    return std::nullopt;
  };
  auto fresh_element = [&](const std::string& tag) { return Value::node(s.alloc_node(std::nullopt, tag)); };

  for (const auto& a : plan.atoms) {
    GroundAtom g;
    if (a.kind == InsertionAtom::Kind::predicate) {
      g.kind = GroundAtom::Kind::predicate;
      g.name = a.name;
      for (const auto& t : a.args) {
        auto v = resolve(t);
        if (!v) throw UnboundHeadVariable(t.name);
        g.args.push_back(*v);
      }
      out.push_back(std::move(g));
      continue;
    }
    auto host = resolve(a.host);
    if (!host) throw UnboundHeadVariable(a.host.name);
    if (!host->is_node()) throw HostUnknown("non-node host");
    g.host = host->node_id();
    g.axis = a.axis;
    g.position = a.position;
    g.name = a.name;
    std::optional<Value> result = resolve(a.result);
    if (!result) {
      result = fresh_element(a.name);
      locals[a.result.name] = *result;
    }
    if (result->is_literal() && a.name != kTextName && a.axis != Axis::attribute) {
      // An element step with a literal value creates an element holding it.
      Value e = fresh_element(a.name);
      g.value = e;
      out.push_back(g);
      GroundAtom text;
      text.host = e.node_id();
      text.name = std::string(kTextName);
      text.value = *result;
      out.push_back(std::move(text));
      continue;
    }
    g.value = *result;
    out.push_back(std::move(g));
  }
  return out;
}

ExtendReport extend(XStructure& s, const std::vector<GroundAtom>& atoms) {
  ExtendReport report;
  struct Pending {
    std::vector<Member> original;
    std::map<std::size_t, std::vector<Member>> after;  // keyed by original index, 0 = front
    std::vector<Member> tail;
  };
  std::map<NodeId, Pending> hosts;
  auto pending = [&](NodeId h) -> Pending& {
    auto it = hosts.find(h);
    if (it != hosts.end()) return it->second;
    Pending p;
    p.original = s.children(h);
    return hosts.emplace(h, std::move(p)).first->second;
  };
  auto check_host = [&](NodeId h) {
    if (h != kPseudoRoot && !s.has_node(h)) throw HostUnknown("node " + std::to_string(h));
  };
  auto place = [&](NodeId host, std::optional<long> index, Member m) {
    Pending& p = pending(host);
    if (index && *index < 0) throw IndexOutOfRange(std::to_string(*index));
    if (!index || static_cast<std::size_t>(*index) >= p.original.size()) {
      p.tail.push_back(std::move(m));
    } else {
      p.after[static_cast<std::size_t>(*index)].push_back(std::move(m));
    }
  };

  for (const auto& a : atoms) {
    if (a.kind == GroundAtom::Kind::predicate) {
      if (s.assert_predicate(a.name, a.args)) ++report.facts;
      continue;
    }
    check_host(a.host);
    if (a.value.is_node() && !s.has_node(a.value.node_id())) throw HostUnknown("node " + std::to_string(a.value.node_id()));
    switch (a.axis) {
      case Axis::attribute:
        if (s.add_attribute(a.host, a.name, a.value)) ++report.attributes;
        break;
      case Axis::child: {
        Value v = a.value;
        if (a.name == kTextName && v.is_node()) {
          // Text children hold the literal value of a node, never the node.
          v = s.literal_value(v);
          if (v.is_node()) {
            report.warnings.push_back("text() of " + s.display(a.host) + " skipped: " + s.display(v.node_id()) +
                                      " has no literal value");
            break;
          }
        }
        place(a.host, a.position ? std::optional<long>(*a.position) : std::nullopt, Member{v, a.name});
        ++report.child_edges;
        break;
      }
      case Axis::following_sibling:
      case Axis::preceding_sibling: {
        const auto& parents = s.parents(a.host);
        if (parents.empty()) throw HostUnknown(s.display(a.host) + " has no parent for a sibling insertion");
        if (parents.size() > 1) {
          report.warnings.push_back(s.display(a.host) + " has several parents; sibling inserted under " +
                                    s.display(parents.front()));
        }
        NodeId p = parents.front();
        const auto& orig = pending(p).original;
        long k = 0;
        for (std::size_t i = 0; i < orig.size(); ++i) {
          if (orig[i].value == Value::node(a.host)) {
            k = static_cast<long>(i) + 1;
            break;
          }
        }
        long j = a.position.value_or(1);
        if (j < 1) throw IndexOutOfRange("sibling offset " + std::to_string(j));
        long index = a.axis == Axis::following_sibling ? k + j - 1 : std::max(0L, k - j);
        place(p, index, Member{a.value, a.name});
        ++report.child_edges;
        break;
      }
      default: throw HeadNotDefinite(std::string(axis_name(a.axis)) + " insertion");
    }
  }
  for (auto& [host, p] : hosts) {
    std::vector<Member> list;
    list.reserve(p.original.size() + p.tail.size());
    auto bucket = [&](std::size_t k) {
      auto it = p.after.find(k);
      if (it != p.after.end()) list.insert(list.end(), it->second.begin(), it->second.end());
    };
    bucket(0);
    for (std::size_t i = 0; i < p.original.size(); ++i) {
      list.push_back(p.original[i]);
      bucket(i + 1);
    }
    list.insert(list.end(), p.tail.begin(), p.tail.end());
    s.set_children(host, std::move(list));
  }
  return report;
}

ExtendReport apply_plan(XStructure& s, const InsertionPlan& plan) { return extend(s, realize(s, plan)); }

std::string to_string(const InsertionAtom& a, const XStructure& s) {
  auto term = [&](const PlanTerm& t) -> std::string {
    switch (t.kind) {
      case PlanTerm::Kind::value:
        if (t.value.is_node()) return s.display(t.value.node_id());
        return to_string(literal_term(t.value));
      case PlanTerm::Kind::local: return t.name;
      case PlanTerm::Kind::free_element: return "root";
      case PlanTerm::Kind::new_constant: return t.name;
    }
    return "?";
  };
  if (a.kind == InsertionAtom::Kind::predicate) {
    std::string out = a.name + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ", ";
      out += term(a.args[i]);
    }
    return out + ")";
  }
  std::string out = term(a.host) + "[" + std::string(axis_name(a.axis));
  if (a.position) out += "(" + std::to_string(*a.position) + ")";
  return out + "::" + a.name + "->" + term(a.result) + "]";
}

}  // namespace xpathlog
