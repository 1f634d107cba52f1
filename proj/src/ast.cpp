#include "xpathlog/ast.hpp"

#include <algorithm>

namespace xpathlog {

bool Step::operator==(const Step& o) const {
  return axis == o.axis && position == o.position && test == o.test && before == o.before && bind == o.bind &&
         after == o.after;
}

bool Expr::operator==(const Expr& o) const { return entry == o.entry && origin == o.origin && entry_quals == o.entry_quals && steps == o.steps; }

bool Term::operator==(const Term& o) const {
  return kind == o.kind && literal == o.literal && name == o.name && path == o.path && args == o.args;
}

bool Qualifier::operator==(const Qualifier& o) const {
  return kind == o.kind && expr == o.expr && op == o.op && name == o.name && terms == o.terms && parts == o.parts;
}

Term literal_term(Value v) {
  Term t;
  t.kind = Term::Kind::literal;
  t.literal = std::move(v);
  return t;
}

Term variable_term(std::string name) {
  Term t;
  t.kind = Term::Kind::variable;
  t.name = std::move(name);
  return t;
}

Term path_term(Expr e) {
  Term t;
  t.kind = Term::Kind::path;
  t.path = std::move(e);
  return t;
}

Qualifier expr_qualifier(Expr e) {
  Qualifier q;
  q.kind = Qualifier::Kind::expr;
  q.expr = std::move(e);
  return q;
}

Qualifier compare_qualifier(CompareOp op, Term lhs, Term rhs) {
  Qualifier q;
  q.kind = Qualifier::Kind::compare;
  q.op = op;
  q.terms = {std::move(lhs), std::move(rhs)};
  return q;
}

Qualifier conjunction(std::vector<Qualifier> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  Qualifier q;
  q.kind = Qualifier::Kind::conjunction;
  q.parts = std::move(parts);
  return q;
}

std::string_view compare_op_text(CompareOp op) {
  switch (op) {
    case CompareOp::eq: return "=";
    case CompareOp::ne: return "!=";
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
  }
  return "?";
}

namespace {

void add(std::vector<std::string>& out, const std::string& v) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

void collect(const Qualifier& q, std::vector<std::string>& out);
void collect(const Term& t, std::vector<std::string>& out);

void collect(const Expr& e, std::vector<std::string>& out) {
  if (e.entry == Entry::variable) add(out, e.origin);
  for (const auto& q : e.entry_quals) collect(q, out);
  for (const auto& s : e.steps) {
    if (s.test.kind == NodeTest::Kind::variable) add(out, s.test.text);
    for (const auto& q : s.before) collect(q, out);
    if (s.bind && s.bind->kind == BindTarget::Kind::variable) add(out, s.bind->name);
    for (const auto& q : s.after) collect(q, out);
  }
}

void collect(const Term& t, std::vector<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::variable: add(out, t.name); break;
    case Term::Kind::path: collect(t.path, out); break;
    case Term::Kind::function:
      for (const auto& a : t.args) collect(a, out);
      break;
    default: break;
  }
}

void collect(const Qualifier& q, std::vector<std::string>& out) {
  switch (q.kind) {
    case Qualifier::Kind::expr: collect(q.expr, out); break;
    case Qualifier::Kind::compare:
    case Qualifier::Kind::predicate:
      for (const auto& t : q.terms) collect(t, out);
      break;
    case Qualifier::Kind::negation:
    case Qualifier::Kind::conjunction:
      for (const auto& p : q.parts) collect(p, out);
      break;
  }
}

}  // namespace

std::vector<std::string> variables_of(const Qualifier& q) {
  std::vector<std::string> out;
  collect(q, out);
  return out;
}

std::vector<std::string> variables_of(const Expr& e) {
  std::vector<std::string> out;
  collect(e, out);
  return out;
}

std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  collect(t, out);
  return out;
}

std::vector<std::string> variables_of(const std::vector<Literal>& body) {
  std::vector<std::string> out;
  for (const auto& l : body) collect(l.atom, out);
  return out;
}

std::set<std::string> variable_set(const Qualifier& q) {
  auto v = variables_of(q);
  return {v.begin(), v.end()};
}

bool uses_context_functions(const Term& t) {
  switch (t.kind) {
    case Term::Kind::position:
    case Term::Kind::last: return true;
    case Term::Kind::function:
      return std::any_of(t.args.begin(), t.args.end(), [](const Term& a) { return uses_context_functions(a); });
    default: return false;
  }
}

bool uses_context_functions(const Qualifier& q) {
  switch (q.kind) {
    case Qualifier::Kind::expr: return false;
    case Qualifier::Kind::compare:
    case Qualifier::Kind::predicate:
      return std::any_of(q.terms.begin(), q.terms.end(), [](const Term& t) { return uses_context_functions(t); });
    case Qualifier::Kind::negation:
    case Qualifier::Kind::conjunction:
      return std::any_of(q.parts.begin(), q.parts.end(), [](const Qualifier& p) { return uses_context_functions(p); });
  }
  return false;
}

}  // namespace xpathlog
