#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace xpathlog {

void PrintTo(const Value& v, std::ostream* os) {
  if (v.is_node()) {
    *os << "node " << v.node_id();
  } else if (v.is_string()) {
    *os << '"' << v.as_string() << '"';
  } else {
    *os << literal_text(v);
  }
}

void PrintTo(const Member& m, std::ostream* os) {
  *os << m.name << '=';
  PrintTo(m.value, os);
}

}  // namespace xpathlog

namespace xpathlog::testing {

std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture(name), std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---- isomorphism ----

namespace {

struct Canon {
  const XStructure& s;
  std::map<NodeId, int> number;
  std::vector<NodeId> order;

  void visit(NodeId root) {
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      if (number.count(n)) continue;
      number[n] = static_cast<int>(order.size());
      order.push_back(n);
      const auto& kids = s.children(n);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
        if (it->value.is_node() && !number.count(it->value.node_id())) stack.push_back(it->value.node_id());
      }
    }
  }

  std::string value(const Value& v) const {
    if (v.is_node()) return "#" + std::to_string(number.at(v.node_id()));
    if (v.is_string()) return "\"" + v.as_string() + "\"";
    if (v.is_name()) return "name:" + v.as_name();
    if (v.is_real()) return literal_text(v) + "r";
    return literal_text(v);
  }
};

}  // namespace

std::string canonical_form(const XStructure& s) {
  Canon c{s, {}, {}};
  for (const auto& r : s.roots()) c.visit(r.value.node_id());
  for (NodeId id : s.node_ids()) c.visit(id);

  std::ostringstream out;
  out << "roots:";
  for (const auto& r : s.roots()) out << ' ' << r.name << '=' << c.value(r.value);
  out << '\n';
  for (NodeId n : c.order) {
    out << c.number.at(n) << ' ' << s.tag(n) << " [";
    for (const auto& m : s.children(n)) out << ' ' << m.name << '=' << c.value(m.value);
    out << " ] {";
    std::vector<std::string> attrs;
    for (const auto& m : s.attributes(n)) attrs.push_back(m.name + '=' + c.value(m.value));
    std::sort(attrs.begin(), attrs.end());
    for (const auto& a : attrs) out << ' ' << a;
    out << " }\n";
  }
  std::vector<std::string> facts;
  for (const auto& [p, args] : s.facts()) {
    std::string f = p + "(";
    for (std::size_t i = 0; i < args.size(); ++i) f += (i ? "," : "") + c.value(args[i]);
    facts.push_back(f + ")");
  }
  std::sort(facts.begin(), facts.end());
  for (const auto& f : facts) out << f << '\n';
  return out.str();
}

bool isomorphic(const XStructure& a, const XStructure& b) { return canonical_form(a) == canonical_form(b); }

// ---- generators ----

namespace {

std::string unquote(const std::string& lit) {
  return lit.front() == '"' ? lit.substr(1, lit.size() - 2) : lit;
}

Value literal_of(const std::string& lit) {
  return lit.front() == '"' ? Value::string(unquote(lit)) : parse_literal(lit);
}

}  // namespace

XStructure random_structure(Rng& rng, const StructureShape& shape) {
  XStructure s;
  int n = 1 + rng.below(shape.max_nodes);
  std::vector<NodeId> ids;
  for (int i = 0; i < n; ++i) ids.push_back(s.alloc_node(std::nullopt, rng.pick(kElementNames)));
  for (int i = 0; i < n; ++i) {
    if (i < shape.roots) {
      s.add_root(ids[i]);
    } else {
      NodeId parent = ids[static_cast<std::size_t>(rng.below(i))];
      s.append_child(parent, s.tag(ids[i]), Value::node(ids[i]));
    }
  }
  for (int i = 0; i < n; ++i) {
    NodeId id = ids[i];
    if (rng.chance(shape.text_chance)) s.append_child(id, std::string(kTextName), literal_of(rng.pick(kLiterals)));
    for (const auto& a : kAttributeNames) {
      if (rng.chance(shape.attribute_chance)) s.add_attribute(id, a, literal_of(rng.pick(kLiterals)));
      if (rng.chance(shape.reference_chance)) s.add_attribute(id, a, Value::node(rng.pick(ids)));
    }
    if (i + 1 < n && rng.chance(shape.shared_chance)) {
      NodeId later = ids[static_cast<std::size_t>(i + 1 + rng.below(n - i - 1))];
      s.append_child(id, s.tag(later), Value::node(later));
    }
  }
  return s;
}

void name_nodes(XStructure& s) {
  for (NodeId id : s.node_ids()) s.bind_constant("n" + std::to_string(id), id);
}

namespace {

class DefiniteWriter {
 public:
  explicit DefiniteWriter(Rng& rng) : rng_(rng) {}

  std::string atom() {
    std::string out = rng_.chance(0.5) ? "" : "E";
    int steps = 1 + rng_.below(4);
    quals_left_ = rng_.below(3);
    for (int i = 0; i < steps; ++i) out += "/" + step(i + 1 == steps);
    return out;
  }

 private:
  std::string var(char prefix) { return std::string(1, prefix) + std::to_string(++vars_); }

  std::string qualifier() {
    switch (rng_.below(6)) {
      case 0: return rng_.pick(kElementNames);
      case 1: return rng_.pick(kElementNames) + "->" + var('Q');
      case 2: return "@" + rng_.pick(kAttributeNames) + " = " + rng_.pick(kLiterals);
      case 3: return "text() = " + rng_.pick(kLiterals);
      case 4: return rng_.pick(kElementNames) + "/text()->" + var('Q');
      default: return "@" + rng_.pick(kAttributeNames) + "->" + var('Q') + " and " + rng_.pick(kElementNames);
    }
  }

  std::string step(bool last) {
    std::string s;
    int kind = rng_.below(20);
    if (kind < 2 && last) {
      s = "text()";
    } else if (kind < 5) {
      s = "@" + rng_.pick(kAttributeNames);
    } else if (kind < 7) {
      s = "following-sibling::" + rng_.pick(kElementNames);
    } else if (kind < 9) {
      s = "preceding-sibling::" + rng_.pick(kElementNames);
    } else if (kind < 11) {
      s = "child::" + var('N');
    } else {
      s = rng_.pick(kElementNames);
    }
    if (quals_left_ > 0 && rng_.chance(0.4)) {
      --quals_left_;
      s += "[" + qualifier() + "]";
    }
    int b = rng_.below(10);
    if (b < 4) {
      s += "->" + var('V');
    } else if (b < 5) {
      s += "->" + rng_.pick(kLiterals);
    }
    return s;
  }

  Rng& rng_;
  int vars_ = 0;
  int quals_left_ = 0;
};

}  // namespace

std::string random_definite_atom(Rng& rng) { return DefiniteWriter(rng).atom(); }

std::string random_ground_atom(Rng& rng, const XStructure& s) {
  std::vector<NodeId> ids = s.node_ids();
  auto node = [&] { return "n" + std::to_string(rng.pick(ids)); };
  auto qualifier = [&]() -> std::string {
    switch (rng.below(4)) {
      case 0: return "[@" + rng.pick(kAttributeNames) + "->" + rng.pick(kLiterals) + "]";
      case 1: return "[" + rng.pick(kElementNames) + "]";
      case 2: return "[" + rng.pick(kElementNames) + "/text()->" + rng.pick(kLiterals) + "]";
      default: return "[@" + rng.pick(kAttributeNames) + "->" + node() + "]";
    }
  };

  std::string out;
  NodeId host = rng.pick(ids);
  bool first_free = false;
  if (rng.chance(0.15)) {
    first_free = true;
  } else {
    out = "n" + std::to_string(host);
  }
  int steps = 1 + rng.below(3);
  for (int i = 0; i < steps; ++i) {
    bool last = i + 1 == steps;
    std::string st;
    int kind = rng.below(10);
    bool sibling_ok = i == 0 && !first_free && !s.parents(host).empty();
    if (kind < 2 && sibling_ok) {
      st = (rng.chance(0.5) ? "following-sibling::" : "preceding-sibling::") + rng.pick(kElementNames);
    } else if (kind < 4 && last && !(first_free && i == 0)) {
      st = "@" + rng.pick(kAttributeNames) + "->" + (rng.chance(0.7) ? rng.pick(kLiterals) : node());
      out += "/" + st;
      break;
    } else if (kind < 5 && last && !(first_free && i == 0)) {
      out += "/text()->" + rng.pick(kLiterals);
      break;
    } else {
      st = rng.pick(kElementNames);
    }
    if (rng.chance(0.3)) st += qualifier();
    int b = rng.below(10);
    if (b < 2 && !(first_free && i == 0)) {
      st += "->" + node();
    } else if (b < 3 && last && !(first_free && i == 0)) {
      st += "->" + rng.pick(kLiterals);
    }
    out += "/" + st;
  }
  return out;
}

namespace {

class ExprWriter {
 public:
  ExprWriter(Rng& rng, const ExprShape& shape) : rng_(rng), shape_(shape) {}

  std::string expr() {
    std::string out = rng_.chance(0.3) ? "/" : "//";
    int steps = 1 + rng_.below(shape_.max_steps);
    quals_left_ = 2;
    for (int i = 0; i < steps; ++i) {
      if (i > 0) out += "/";
      auto [text, attribute] = step(i + 1 == steps);
      out += text;
      // Steps after an attribute dereference its node values.
      if (attribute && !shape_.dereference) break;
    }
    return out;
  }

 private:
  bool var_available() const { return shape_.variables && vars_ < shape_.max_vars; }
  std::string var(char prefix) { return std::string(1, prefix) + std::to_string(++vars_); }

  std::string relative() {
    switch (rng_.below(4)) {
      case 0: return rng_.pick(kElementNames);
      case 1: return "@" + rng_.pick(kAttributeNames);
      case 2: return "text()";
      default: return rng_.pick(kElementNames) + "/text()";
    }
  }

  std::string compare_op() {
    static const std::vector<std::string> ops = {"=", "!=", "<", "<=", ">", ">="};
    return rng_.pick(ops);
  }

  std::string qualifier() {
    int n = rng_.below(10);
    if (n < 3) return relative();
    if (n < 5) return relative() + " " + compare_op() + " " + rng_.pick(kLiterals);
    if (n < 7 && shape_.context_functions) {
      switch (rng_.below(3)) {
        case 0: return "position() = " + std::to_string(1 + rng_.below(3));
        case 1: return "position() < last()";
        default: return "last() " + compare_op() + " " + std::to_string(1 + rng_.below(3));
      }
    }
    if (n < 8 && shape_.negation) return "not " + relative();
    if (n < 9 && var_available()) return rng_.pick(kElementNames) + "->" + var('Q');
    return relative() + " and " + relative();
  }

  // Mostly name steps; text() and attributes mostly end the path.
  std::pair<std::string, bool> step(bool last) {
    static const std::vector<std::string> axes = {"child",     "descendant",        "descendant-or-self",
                                                  "parent",    "ancestor",          "following-sibling",
                                                  "preceding-sibling", "self"};
    std::string s;
    bool attribute = false;
    int kind = rng_.below(20);
    if (kind < 3 && (last || rng_.chance(0.3))) {
      s = "@" + rng_.pick(kAttributeNames);
      attribute = true;
    } else if (kind < 5 && last) {
      s = "text()";
    } else if (kind < 7 && var_available()) {
      s = rng_.pick(axes) + "::" + var('N');
    } else if (kind < 10) {
      s = rng_.pick(axes) + "::node()";
    } else if (kind < 14) {
      s = rng_.pick(axes) + "::" + rng_.pick(kElementNames);
    } else {
      s = rng_.pick(kElementNames);
    }
    if (quals_left_ > 0 && rng_.chance(0.35)) {
      --quals_left_;
      s += "[" + qualifier() + "]";
    }
    if (var_available() && rng_.chance(0.3)) s += "->" + var('V');
    return {s, attribute};
  }

  Rng& rng_;
  ExprShape shape_;
  int vars_ = 0;
  int quals_left_ = 0;
};

}  // namespace

std::string random_expression(Rng& rng, const ExprShape& shape) { return ExprWriter(rng, shape).expr(); }

std::string random_positive_program(Rng& rng) {
  auto e = [&] { return rng.pick(kElementNames); };
  auto a = [&] { return rng.pick(kAttributeNames); };
  std::string out;
  int rules = 1 + rng.below(4);
  for (int i = 0; i < rules; ++i) {
    switch (rng.below(8)) {
      case 0: out += "X/" + e() + " :- //" + e() + "->X."; break;
      case 1: out += "X[@" + a() + "->V] :- //" + e() + "->X, //" + e() + "/text()->V."; break;
      case 2: out += "X/" + e() + "[text()->V] :- //" + e() + "->X[@" + a() + "->V]."; break;
      case 3: out += "p(X) :- //" + e() + "->X[" + e() + "]."; break;
      case 4: out += "X/" + e() + "[@" + a() + "->V] :- //" + e() + "->X/text()->V."; break;
      case 5: out += "X[@" + a() + "->Y] :- //" + e() + "->X, //" + e() + "->Y."; break;
      case 6: out += "X/" + e() + " :- p(X)."; break;
      default: out += "X/" + e() + "[@" + a() + "->1] :- //" + e() + "->X[@" + a() + " = 1]."; break;
    }
    out += "\n";
  }
  return out;
}

DatalogProgram random_datalog_program(Rng& rng) {
  static const std::map<std::string, int> arity = {{"e", 2}, {"p", 1}, {"q", 2}, {"r", 2}};
  static const std::vector<std::string> idb = {"p", "q", "r"};
  static const std::vector<std::string> all = {"e", "p", "q", "r"};
  static const std::vector<std::string> vars = {"X", "Y", "Z"};

  DatalogProgram prog;
  std::ostringstream text;
  int facts = 3 + rng.below(6);
  for (int i = 0; i < facts; ++i) {
    DatalogProgram::PAtom f{"e", {std::to_string(1 + rng.below(4)), std::to_string(1 + rng.below(4))}};
    prog.rules.push_back({f, {}});
  }
  int rules = 1 + rng.below(5);
  for (int i = 0; i < rules; ++i) {
    DatalogProgram::PRule r;
    std::set<std::string> bound;
    int body = 1 + rng.below(3);
    for (int j = 0; j < body; ++j) {
      DatalogProgram::PAtom b{rng.pick(all), {}};
      for (int k = 0; k < arity.at(b.pred); ++k) {
        std::string arg = rng.chance(0.85) ? rng.pick(vars) : std::to_string(1 + rng.below(4));
        if (std::isupper(static_cast<unsigned char>(arg[0]))) bound.insert(arg);
        b.args.push_back(arg);
      }
      r.body.push_back(b);
    }
    std::vector<std::string> usable(bound.begin(), bound.end());
    r.head.pred = rng.pick(idb);
    for (int k = 0; k < arity.at(r.head.pred); ++k) {
      r.head.args.push_back(usable.empty() || rng.chance(0.1) ? std::to_string(1 + rng.below(4)) : rng.pick(usable));
    }
    prog.rules.push_back(r);
  }

  auto atom_text = [](const DatalogProgram::PAtom& a) {
    std::string s = a.pred + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) s += (i ? ", " : "") + a.args[i];
    return s + ")";
  };
  for (const auto& r : prog.rules) {
    text << atom_text(r.head);
    for (std::size_t j = 0; j < r.body.size(); ++j) text << (j ? ", " : " :- ") << atom_text(r.body[j]);
    text << ".\n";
  }
  prog.text = text.str();
  return prog;
}

}  // namespace xpathlog::testing
