#include <algorithm>
#include <functional>
#include <map>

#include "xpathlog/errors.hpp"
#include "xpathlog/eval.hpp"

namespace xpathlog {

namespace {

std::string pos_var(int depth) { return std::string(1, kInternalPrefix) + "Pos" + std::to_string(depth); }
std::string size_var(int depth) { return std::string(1, kInternalPrefix) + "Size" + std::to_string(depth); }

BindingSet extend_all(const BindingSet& b, const std::string& var, const Value& v) {
  BindingSet out;
  for (const auto& t : b) {
    const Value* old = lookup(t, var);
    if (old == nullptr) {
      out.insert(with_binding(t, var, v));
    } else if (*old == v) {
      out.insert(t);
    }
  }
  return out;
}

void push(ResultList& out, Value v, BindingSet b) {
  if (!b.empty()) out.push_back(Annotated{std::move(v), std::move(b)});
}

// Name a node test variable ranges over: element or attribute name, or `text()`.
Value edge_name(const Member& m) { return Value::name(m.name); }

}  // namespace

std::vector<Value> result_values(const ResultList& r) {
  std::vector<Value> out;
  for (const auto& a : r) {
    if (std::find(out.begin(), out.end(), a.value) == out.end()) out.push_back(a.value);
  }
  return out;
}

BindingSet bindings_of(const ResultList& r, const Value& v) {
  BindingSet out;
  for (const auto& a : r) {
    if (a.value == v) out.insert_all(a.bindings);
  }
  return out;
}

ResultList Evaluator::variable_entry(const Expr& e, const BindingSet& bdgs) {
  const std::string& var = e.origin;
  BindingSet bound;
  BindingSet unbound;
  for (const auto& t : bdgs) {
    if (lookup(t, var)) {
      bound.insert(t);
    } else {
      unbound.insert(t);
    }
  }
  ResultList out;
  // Sideways information passing: one group per distinct value of V.
  std::vector<Value> order;
  std::map<Value, BindingSet> groups;
  for (const auto& t : bound) {
    const Value& v = *lookup(t, var);
    auto [it, fresh] = groups.try_emplace(v);
    if (fresh) order.push_back(v);
    it->second.insert(t);
  }
  for (const auto& v : order) push(out, v, groups[v]);
  if (!unbound.empty()) {
    for (NodeId n : s_.node_ids()) push(out, Value::node(n), extend_all(unbound, var, Value::node(n)));
  }
  return out;
}

ResultList Evaluator::entry_list(const Expr& e, const Value& x, const BindingSet& bdgs) {
  ResultList out;
  switch (e.entry) {
    case Entry::relative: push(out, x, bdgs); break;
    case Entry::rooted: push(out, Value::node(kPseudoRoot), bdgs); break;
    case Entry::document: {
      auto root = s_.document(e.origin);
      if (!root) throw DocumentUnavailable(e.origin);
      push(out, Value::node(*root), bdgs);
      break;
    }
    case Entry::constant: {
      auto c = s_.constant(e.origin);
      if (c) push(out, Value::node(*c), bdgs);
      break;
    }
    case Entry::variable: out = variable_entry(e, bdgs); break;
  }
  for (const auto& q : e.entry_quals) out = filter(std::move(out), q, false);
  return out;
}

ResultList Evaluator::eval_expr(const Expr& e, const Value& x, const BindingSet& bdgs) {
  ResultList start = entry_list(e, x, bdgs);
  if (e.steps.empty()) return start;
  ResultList out;
  for (const auto& a : start) {
    ResultList part = eval_steps(e, 0, a.value, a.bindings);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

ResultList Evaluator::eval_steps(const Expr& e, std::size_t from, const Value& x, const BindingSet& bdgs) {
  ResultList here = eval_step(e.steps[from], x, bdgs);
  if (from + 1 == e.steps.size()) return here;
  ResultList out;
  for (const auto& a : here) {
    ResultList part = eval_steps(e, from + 1, a.value, a.bindings);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

ResultList Evaluator::eval_step(const Step& s, const Value& x, const BindingSet& bdgs) {
  ResultList out;
  if (!x.is_node()) return out;
  for (const auto& m : s_.axis_members(s.axis, x.node_id())) {
    switch (s.test.kind) {
      case NodeTest::Kind::name:
        if (m.name == s.test.text && m.name != kTextName) push(out, m.value, bdgs);
        break;
      case NodeTest::Kind::node:
        if (m.value.is_node()) push(out, m.value, bdgs);
        break;
      case NodeTest::Kind::text:
        if (m.value.is_literal()) push(out, m.value, bdgs);
        break;
      case NodeTest::Kind::variable: {
        BindingSet b;
        Value n = edge_name(m);
        for (const auto& t : bdgs) {
          const Value* old = lookup(t, s.test.text);
          if (old == nullptr) {
            b.insert(with_binding(t, s.test.text, n));
          } else if (same_value(*old, n)) {
            b.insert(t);
          }
        }
        push(out, m.value, std::move(b));
        break;
      }
    }
  }
  for (const auto& q : s.before) out = filter(std::move(out), q, is_backward(s.axis));
  if (s.bind) {
    ResultList bound;
    for (auto& a : out) {
      switch (s.bind->kind) {
        case BindTarget::Kind::variable: {
          BindingSet b;
          for (const auto& t : a.bindings) {
            const Value* old = lookup(t, s.bind->name);
            if (old == nullptr) {
              b.insert(with_binding(t, s.bind->name, a.value));
            } else if (*old == a.value) {
              b.insert(t);
            }
          }
          push(bound, a.value, std::move(b));
          break;
        }
        case BindTarget::Kind::literal:
          if (compare_values(s_, CompareOp::eq, a.value, s.bind->literal)) bound.push_back(std::move(a));
          break;
        case BindTarget::Kind::constant: {
          auto c = s_.constant(s.bind->name);
          if (c && a.value == Value::node(*c)) bound.push_back(std::move(a));
          break;
        }
      }
    }
    out = std::move(bound);
  }
  for (const auto& q : s.after) out = filter(std::move(out), q, is_backward(s.axis));
  return out;
}

ResultList Evaluator::filter(ResultList in, const Qualifier& q, bool backward) {
  ResultList out;
  if (!uses_context_functions(q)) {
    for (auto& a : in) push(out, a.value, eval_qualifier(q, a.value, a.bindings));
    return out;
  }
  // Per-assignment position and size over the list of values selected for it.
  std::map<Tuple, std::int64_t> size;
  for (const auto& a : in) {
    for (const auto& t : a.bindings) ++size[t];
  }
  std::map<Tuple, std::int64_t> seen;
  ++context_depth_;
  const std::string pv = pos_var(context_depth_);
  const std::string sv = size_var(context_depth_);
  for (auto& a : in) {
    BindingSet ext;
    for (const auto& t : a.bindings) {
      std::int64_t j = ++seen[t];
      std::int64_t n = size[t];
      std::int64_t k = backward ? n + 1 - j : j;
      ext.insert(with_binding(with_binding(t, pv, Value::integer(k)), sv, Value::integer(n)));
    }
    BindingSet r;
    try {
      r = eval_qualifier(q, a.value, ext);
    } catch (...) {
      --context_depth_;
      throw;
    }
    push(out, a.value, without(r, {pv, sv}));
  }
  --context_depth_;
  return out;
}

BindingSet Evaluator::eval_qualifier(const Qualifier& q, const Value& x, const BindingSet& bdgs) {
  switch (q.kind) {
    case Qualifier::Kind::expr: {
      BindingSet out;
      for (const auto& a : eval_expr(q.expr, x, bdgs)) out.insert_all(a.bindings);
      return out;
    }
    case Qualifier::Kind::compare: return eval_compare(q, x, bdgs);
    case Qualifier::Kind::predicate: return eval_predicate(q, x, bdgs);
    case Qualifier::Kind::negation: {
      const Qualifier& inner = q.parts.front();
      if (variables_of(inner).empty() && !uses_context_functions(inner)) {
        return eval_qualifier(inner, x, BindingSet::truth()).empty() ? bdgs : BindingSet();
      }
      return subsume_minus(bdgs, eval_qualifier(inner, x, bdgs));
    }
    case Qualifier::Kind::conjunction: {
      BindingSet cur = bdgs;
      for (const auto& p : q.parts) {
        if (cur.empty()) break;
        cur = eval_qualifier(p, x, cur);
      }
      return cur;
    }
  }
  return {};
}

BindingSet Evaluator::eval_compare(const Qualifier& q, const Value& x, const BindingSet& bdgs) {
  const Term& lhs = q.terms[0];
  const Term& rhs = q.terms[1];
  BindingSet out;
  BindingSet rest = bdgs;
  if (q.op == CompareOp::eq) {
    // Assignment for tuples where one side is an unbound variable.
    auto assign = [&](const Term& var, const Term& other) {
      if (var.kind != Term::Kind::variable) return;
      BindingSet free_part;
      BindingSet bound_part;
      for (const auto& t : rest) {
        if (lookup(t, var.name)) {
          bound_part.insert(t);
        } else {
          free_part.insert(t);
        }
      }
      if (free_part.empty()) return;
      if (other.kind == Term::Kind::variable) {
        for (const auto& t : free_part) {
          if (!lookup(t, other.name)) throw UnboundVariable(var.name + " = " + other.name);
        }
      }
      for (const auto& a : eval_term(other, x, free_part)) out.insert_all(extend_all(a.bindings, var.name, a.value));
      rest = std::move(bound_part);
    };
    assign(lhs, rhs);
    assign(rhs, lhs);
    if (rest.empty()) return out;
  }
  ResultList l = eval_term(lhs, x, rest);
  if (l.empty()) return out;
  ResultList r = eval_term(rhs, x, rest);
  for (const auto& a : l) {
    for (const auto& b : r) {
      if (compare_values(s_, q.op, a.value, b.value)) out.insert_all(natural_join(a.bindings, b.bindings));
    }
  }
  return out;
}

BindingSet Evaluator::eval_predicate(const Qualifier& q, const Value& x, const BindingSet& bdgs) {
  BindingSet out;
  if (is_builtin_predicate(q.name)) {
    Term call;
    call.kind = Term::Kind::function;
    call.name = q.name;
    call.args = q.terms;
    for (const auto& a : eval_term(call, x, bdgs)) {
      if (a.value.is_integer() && a.value.as_integer() != 0) out.insert_all(a.bindings);
    }
    return out;
  }
  const std::size_t n = q.terms.size();
  std::vector<const Fact*> facts;
  for (auto it = s_.facts().lower_bound(Fact{q.name, {}}); it != s_.facts().end() && it->first == q.name; ++it) {
    if (it->second.size() == n) facts.push_back(&*it);
  }
  if (facts.empty()) return out;
  for (const auto& beta : bdgs) {
    BindingSet single = BindingSet::single(beta);
    // Unbound variable arguments take their value from the fact.
    std::vector<std::optional<ResultList>> args(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Term& t = q.terms[i];
      if (t.kind == Term::Kind::variable && !lookup(beta, t.name)) continue;
      args[i] = eval_term(t, x, single);
    }
    for (const Fact* f : facts) {
      std::function<void(std::size_t, const BindingSet&)> walk = [&](std::size_t i, const BindingSet& acc) {
        if (acc.empty()) return;
        if (i == n) {
          out.insert_all(acc);
          return;
        }
        const Value& fv = f->second[i];
        if (!args[i]) {
          walk(i + 1, extend_all(acc, q.terms[i].name, fv));
          return;
        }
        for (const auto& a : *args[i]) {
          if (same_value(a.value, fv)) walk(i + 1, natural_join(acc, a.bindings));
        }
      };
      walk(0, single);
    }
  }
  return out;
}

ResultList Evaluator::eval_term(const Term& t, const Value& x, const BindingSet& bdgs) {
  ResultList out;
  switch (t.kind) {
    case Term::Kind::literal: push(out, t.literal, bdgs); return out;
    case Term::Kind::constant: {
      auto c = s_.constant(t.name);
      if (c) push(out, Value::node(*c), bdgs);
      return out;
    }
    case Term::Kind::variable:
      for (const auto& b : bdgs) {
        const Value* v = lookup(b, t.name);
        if (v == nullptr) throw UnboundVariable(t.name);
        out.push_back(Annotated{*v, BindingSet::single(b)});
      }
      return out;
    case Term::Kind::path: return eval_expr(t.path, x, bdgs);
    case Term::Kind::position:
    case Term::Kind::last: {
      const std::string var = t.kind == Term::Kind::position ? pos_var(context_depth_) : size_var(context_depth_);
      std::vector<Value> order;
      std::map<Value, BindingSet> groups;
      for (const auto& b : bdgs) {
        const Value* v = lookup(b, var);
        if (v == nullptr) throw UnboundVariable(t.kind == Term::Kind::position ? "position()" : "last()");
        auto [it, fresh] = groups.try_emplace(*v);
        if (fresh) order.push_back(*v);
        it->second.insert(b);
      }
      for (const auto& v : order) push(out, v, groups[v]);
      return out;
    }
    case Term::Kind::function: {
      std::vector<ResultList> args;
      for (const auto& a : t.args) {
        args.push_back(eval_term(a, x, bdgs));
        if (args.back().empty()) return out;
      }
      std::vector<Value> vals(args.size());
      std::function<void(std::size_t, const BindingSet&)> walk = [&](std::size_t i, const BindingSet& acc) {
        if (acc.empty()) return;
        if (i == args.size()) {
          if (auto r = call_function(s_, t.name, vals)) push(out, *r, acc);
          return;
        }
        for (const auto& a : args[i]) {
          vals[i] = a.value;
          walk(i + 1, i == 0 ? a.bindings : natural_join(acc, a.bindings));
        }
      };
      if (args.empty()) {
        if (auto r = call_function(s_, t.name, vals)) push(out, *r, bdgs);
        return out;
      }
      walk(0, bdgs);
      return out;
    }
  }
  return out;
}

BindingSet Evaluator::answers(const std::vector<Literal>& query) {
  BindingSet r = BindingSet::truth();
  const Value root = Value::node(kPseudoRoot);
  for (const auto& lit : query) {
    if (r.empty()) break;
    auto vars = variables_of(lit.atom);
    BindingSet input = project(r, std::set<std::string>(vars.begin(), vars.end()));
    BindingSet q;
    if (lit.negated) {
      q = subsume_minus(input, eval_qualifier(lit.atom, root, input));
    } else {
      q = eval_qualifier(lit.atom, root, input);
    }
    r = natural_join(r, q);
  }
  return r;
}

BindingSet answers(const XStructure& s, const std::vector<Literal>& query) {
  Evaluator ev(s);
  return ev.answers(query);
}

namespace {

void sources(const Qualifier& q, std::vector<std::string>& out);

void sources(const Term& t, std::vector<std::string>& out);

void sources(const Expr& e, std::vector<std::string>& out) {
  if (e.entry == Entry::document && std::find(out.begin(), out.end(), e.origin) == out.end()) out.push_back(e.origin);
  for (const auto& q : e.entry_quals) sources(q, out);
  for (const auto& s : e.steps) {
    for (const auto& q : s.before) sources(q, out);
    for (const auto& q : s.after) sources(q, out);
  }
}

void sources(const Term& t, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::path) sources(t.path, out);
  for (const auto& a : t.args) sources(a, out);
}

void sources(const Qualifier& q, std::vector<std::string>& out) {
  sources(q.expr, out);
  for (const auto& t : q.terms) sources(t, out);
  for (const auto& p : q.parts) sources(p, out);
}

}  // namespace

std::vector<std::string> document_sources(const Qualifier& q) {
  std::vector<std::string> out;
  sources(q, out);
  return out;
}

std::vector<std::string> document_sources(const std::vector<Literal>& query) {
  std::vector<std::string> out;
  for (const auto& l : query) sources(l.atom, out);
  return out;
}

}  // namespace xpathlog
