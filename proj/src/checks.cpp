#include <set>

#include "xpathlog/errors.hpp"
#include "xpathlog/syntax.hpp"

namespace xpathlog {

namespace {

// ---- definiteness ----

void definite(const Qualifier& q, bool nested);
void definite(const Term& t);

void definite(const Expr& e, bool nested) {
  switch (e.entry) {
    case Entry::relative:
      if (!nested) throw DefinitenessError("relative path at atom level");
      break;
    case Entry::rooted:
      if (e.steps.empty()) throw DefinitenessError("bare root '/'");
      break;
    case Entry::document: throw DefinitenessError("document() entry");
    case Entry::constant:
    case Entry::variable: break;
  }
  for (const auto& q : e.entry_quals) definite(q, true);
  for (const auto& s : e.steps) {
    switch (s.axis) {
      case Axis::child:
      case Axis::following_sibling:
      case Axis::preceding_sibling: break;
      case Axis::attribute:
        if (s.position) throw DefinitenessError("position on attribute axis");
        break;
      default: throw DefinitenessError(std::string(axis_name(s.axis)) + " axis");
    }
    if (s.test.kind == NodeTest::Kind::node) throw DefinitenessError("node() test");
    for (const auto& q : s.before) definite(q, true);
    for (const auto& q : s.after) definite(q, true);
  }
}

void definite(const Term& t) {
  switch (t.kind) {
    case Term::Kind::literal:
    case Term::Kind::variable:
    case Term::Kind::constant: return;
    case Term::Kind::path: definite(t.path, true); return;
    case Term::Kind::function: throw DefinitenessError("function " + t.name);
    case Term::Kind::position: throw DefinitenessError("position()");
    case Term::Kind::last: throw DefinitenessError("last()");
  }
}

void definite(const Qualifier& q, bool nested) {
  switch (q.kind) {
    case Qualifier::Kind::expr: definite(q.expr, nested); return;
    case Qualifier::Kind::compare:
      if (q.op != CompareOp::eq) throw DefinitenessError("comparison " + std::string(compare_op_text(q.op)));
      for (const auto& t : q.terms) definite(t);
      return;
    case Qualifier::Kind::predicate:
      for (const auto& t : q.terms) definite(t);
      return;
    case Qualifier::Kind::negation: throw DefinitenessError("negation");
    case Qualifier::Kind::conjunction:
      for (const auto& p : q.parts) definite(p, nested);
      return;
  }
}

// ---- safety ----

class SafetyWalk {
 public:
  explicit SafetyWalk(std::set<std::string>& bound) : bound_(bound) {}

  void literal(const Literal& l, const std::string& where) {
    where_ = where;
    if (l.negated) {
      std::set<std::string> scratch = bound_;
      SafetyWalk inner(scratch);
      inner.where_ = where;
      inner.negated_ = true;
      inner.qualifier(l.atom);
      return;
    }
    qualifier(l.atom);
  }

  void qualifier(const Qualifier& q) {
    switch (q.kind) {
      case Qualifier::Kind::expr: expr(q.expr); return;
      case Qualifier::Kind::compare: compare(q); return;
      case Qualifier::Kind::predicate:
        for (const auto& t : q.terms) term(t);
        return;
      case Qualifier::Kind::negation: {
        std::set<std::string> scratch = bound_;
        SafetyWalk inner(scratch);
        inner.where_ = where_;
        inner.negated_ = true;
        inner.qualifier(q.parts.front());
        return;
      }
      case Qualifier::Kind::conjunction:
        for (const auto& p : q.parts) qualifier(p);
        return;
    }
  }

 private:
  void occurrence(const std::string& v) {
    if (bound_.count(v)) return;
    if (negated_ || in_comparison_) throw SafetyError(v + " in " + where_);
    bound_.insert(v);
  }

  void compare(const Qualifier& q) {
    const Term& l = q.terms[0];
    const Term& r = q.terms[1];
    if (q.op == CompareOp::eq) {
      bool lfree = l.kind == Term::Kind::variable && !bound_.count(l.name);
      bool rfree = r.kind == Term::Kind::variable && !bound_.count(r.name);
      if (lfree && rfree) throw SafetyError(l.name + " in " + where_);
      // Assignment form: evaluate the other side first.
      if (lfree) {
        term(r);
        occurrence(l.name);
        return;
      }
      if (rfree) {
        term(l);
        occurrence(r.name);
        return;
      }
      term(l);
      term(r);
      return;
    }
    bool saved = in_comparison_;
    in_comparison_ = true;
    term(l);
    term(r);
    in_comparison_ = saved;
  }

  void term(const Term& t) {
    switch (t.kind) {
      case Term::Kind::variable: occurrence(t.name); return;
      case Term::Kind::path: expr(t.path); return;
      case Term::Kind::function: {
        bool saved = in_comparison_;
        in_comparison_ = true;
        for (const auto& a : t.args) term(a);
        in_comparison_ = saved;
        return;
      }
      default: return;
    }
  }

  void expr(const Expr& e) {
    // Path expressions are generators even inside comparison operands.
    bool saved = in_comparison_;
    in_comparison_ = false;
    if (e.entry == Entry::variable) occurrence(e.origin);
    for (const auto& q : e.entry_quals) qualifier(q);
    for (const auto& s : e.steps) {
      if (s.test.kind == NodeTest::Kind::variable) occurrence(s.test.text);
      for (const auto& q : s.before) qualifier(q);
      if (s.bind && s.bind->kind == BindTarget::Kind::variable) occurrence(s.bind->name);
      for (const auto& q : s.after) qualifier(q);
    }
    in_comparison_ = saved;
  }

  std::set<std::string>& bound_;
  std::string where_;
  bool negated_ = false;
  bool in_comparison_ = false;
};

}  // namespace

void check_definite(const Atom& a) { definite(a, false); }

void check_safety(const std::vector<Literal>& query) {
  std::set<std::string> bound;
  SafetyWalk walk(bound);
  for (std::size_t i = 0; i < query.size(); ++i) {
    walk.literal(query[i], "literal " + std::to_string(i + 1) + " (" + to_string(query[i]) + ")");
  }
}

void check_rule(const Rule& r) {
  for (const auto& h : r.head) {
    if (h.kind == Qualifier::Kind::negation) throw HeadNotDefinite("line " + std::to_string(r.line) + ": negated head");
    try {
      check_definite(h);
    } catch (const DefinitenessError& e) {
      throw HeadNotDefinite("line " + std::to_string(r.line) + ": " + to_string(h) + ": " + e.what());
    }
  }
  check_safety(r.body);
  auto body = variables_of(r.body);
  std::set<std::string> known(body.begin(), body.end());
  for (const auto& h : r.head) {
    for (const auto& v : variables_of(h)) {
      if (!known.count(v)) throw UnsafeHeadVariable(v + " (line " + std::to_string(r.line) + ")");
    }
  }
}

}  // namespace xpathlog
