// Ground reference semantics: every variable is looked up in one complete
// assignment; nothing is propagated between subexpressions.

#include <functional>

#include "xpathlog/errors.hpp"
#include "xpathlog/eval.hpp"

namespace xpathlog {

namespace {

struct Context {
  std::int64_t pos = 0;
  std::int64_t size = 0;
  bool set = false;
};

class Reference {
 public:
  Reference(const XStructure& s, const Tuple& beta) : s_(s), beta_(beta) {}

  std::vector<Value> expr(const Expr& e, const Value& x, const Context& ctx) {
    std::vector<Value> cur;
    switch (e.entry) {
      case Entry::relative: cur.push_back(x); break;
      case Entry::rooted: cur.push_back(Value::node(kPseudoRoot)); break;
      case Entry::document: {
        auto r = s_.document(e.origin);
        if (!r) throw DocumentUnavailable(e.origin);
        cur.push_back(Value::node(*r));
        break;
      }
      case Entry::constant: {
        auto c = s_.constant(e.origin);
        if (c) cur.push_back(Value::node(*c));
        break;
      }
      case Entry::variable: cur.push_back(var(e.origin)); break;
    }
    for (const auto& q : e.entry_quals) cur = qualify(cur, q, false);
    for (const auto& s : e.steps) {
      std::vector<Value> next;
      for (const auto& y : cur) {
        auto part = step(s, y);
        next.insert(next.end(), part.begin(), part.end());
      }
      cur = std::move(next);
    }
    (void)ctx;
    return cur;
  }

  bool qual(const Qualifier& q, const Value& y, const Context& ctx) {
    switch (q.kind) {
      case Qualifier::Kind::expr: return !expr(q.expr, y, ctx).empty();
      case Qualifier::Kind::compare: {
        auto l = term(q.terms[0], y, ctx);
        auto r = term(q.terms[1], y, ctx);
        for (const auto& a : l) {
          for (const auto& b : r) {
            if (compare_values(s_, q.op, a, b)) return true;
          }
        }
        return false;
      }
      case Qualifier::Kind::predicate: {
        std::vector<std::vector<Value>> args;
        for (const auto& t : q.terms) args.push_back(term(t, y, ctx));
        if (is_builtin_predicate(q.name)) {
          for (const auto& a : args[0]) {
            for (const auto& b : args[1]) {
              auto r = call_function(s_, q.name, {a, b});
              if (r && r->is_integer() && r->as_integer() != 0) return true;
            }
          }
          return false;
        }
        for (const auto& [name, vals] : s_.facts()) {
          if (name != q.name || vals.size() != args.size()) continue;
          bool all = true;
          for (std::size_t i = 0; i < vals.size() && all; ++i) {
            bool hit = false;
            for (const auto& a : args[i]) hit = hit || same_value(a, vals[i]);
            all = hit;
          }
          if (all) return true;
        }
        return false;
      }
      case Qualifier::Kind::negation: return !qual(q.parts.front(), y, ctx);
      case Qualifier::Kind::conjunction:
        for (const auto& p : q.parts) {
          if (!qual(p, y, ctx)) return false;
        }
        return true;
    }
    return false;
  }

 private:
  Value var(const std::string& name) const {
    const Value* v = lookup(beta_, name);
    if (v == nullptr) throw UnboundVariable(name);
    return *v;
  }

  std::vector<Value> term(const Term& t, const Value& x, const Context& ctx) {
    switch (t.kind) {
      case Term::Kind::literal: return {t.literal};
      case Term::Kind::constant: {
        auto c = s_.constant(t.name);
        if (!c) return {};
        return {Value::node(*c)};
      }
      case Term::Kind::variable: return {var(t.name)};
      case Term::Kind::path: return expr(t.path, x, ctx);
      case Term::Kind::position:
        if (!ctx.set) throw UnboundVariable("position()");
        return {Value::integer(ctx.pos)};
      case Term::Kind::last:
        if (!ctx.set) throw UnboundVariable("last()");
        return {Value::integer(ctx.size)};
      case Term::Kind::function: {
        std::vector<std::vector<Value>> args;
        for (const auto& a : t.args) args.push_back(term(a, x, ctx));
        std::vector<Value> out;
        std::vector<Value> cur(args.size());
        std::function<void(std::size_t)> walk = [&](std::size_t i) {
          if (i == args.size()) {
            if (auto r = call_function(s_, t.name, cur)) out.push_back(*r);
            return;
          }
          for (const auto& v : args[i]) {
            cur[i] = v;
            walk(i + 1);
          }
        };
        walk(0);
        return out;
      }
    }
    return {};
  }

  std::vector<Value> qualify(const std::vector<Value>& in, const Qualifier& q, bool backward) {
    std::vector<Value> out;
    const auto n = static_cast<std::int64_t>(in.size());
    for (std::int64_t j = 1; j <= n; ++j) {
      Context ctx{backward ? n + 1 - j : j, n, true};
      const Value& y = in[static_cast<std::size_t>(j - 1)];
      if (qual(q, y, ctx)) out.push_back(y);
    }
    return out;
  }

  std::vector<Value> step(const Step& s, const Value& x) {
    std::vector<Value> out;
    if (!x.is_node()) return out;
    for (const auto& m : s_.axis_members(s.axis, x.node_id())) {
      bool keep = false;
      switch (s.test.kind) {
        case NodeTest::Kind::name: keep = m.name == s.test.text && m.name != kTextName; break;
        case NodeTest::Kind::node: keep = m.value.is_node(); break;
        case NodeTest::Kind::text: keep = m.value.is_literal(); break;
        case NodeTest::Kind::variable: keep = same_value(var(s.test.text), Value::name(m.name)); break;
      }
      if (keep) out.push_back(m.value);
    }
    for (const auto& q : s.before) out = qualify(out, q, is_backward(s.axis));
    if (s.bind) {
      std::vector<Value> kept;
      for (const auto& y : out) {
        switch (s.bind->kind) {
          case BindTarget::Kind::variable:
            if (y == var(s.bind->name)) kept.push_back(y);
            break;
          case BindTarget::Kind::literal:
            if (compare_values(s_, CompareOp::eq, y, s.bind->literal)) kept.push_back(y);
            break;
          case BindTarget::Kind::constant: {
            auto c = s_.constant(s.bind->name);
            if (c && y == Value::node(*c)) kept.push_back(y);
            break;
          }
        }
      }
      out = std::move(kept);
    }
    for (const auto& q : s.after) out = qualify(out, q, is_backward(s.axis));
    return out;
  }

  const XStructure& s_;
  const Tuple& beta_;
};

}  // namespace

bool eval_truth(const XStructure& s, const Atom& atom, const Tuple& beta) {
  Reference r(s, beta);
  return r.qual(atom, Value::node(kPseudoRoot), Context{});
}

std::vector<Value> eval_reference(const XStructure& s, const Expr& e, const Tuple& beta) {
  Reference r(s, beta);
  return r.expr(e, Value::node(kPseudoRoot), Context{});
}

}  // namespace xpathlog
