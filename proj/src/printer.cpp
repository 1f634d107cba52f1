#include <sstream>

#include "xpathlog/syntax.hpp"

namespace xpathlog {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string literal_source(const Value& v) {
  if (v.is_string()) return quote(v.as_string());
  std::string t = literal_text(v);
  if (v.is_real() && t.find_first_of(".eEn") == std::string::npos) t += ".0";
  return t;
}

std::string qualifiers(const std::vector<Qualifier>& qs) {
  std::string out;
  for (const auto& q : qs) out += "[" + to_string(q) + "]";
  return out;
}

std::string step_text(const Step& s) {
  std::string out(axis_name(s.axis));
  if (s.position) out += "(" + std::to_string(*s.position) + ")";
  out += "::";
  switch (s.test.kind) {
    case NodeTest::Kind::name:
    case NodeTest::Kind::variable: out += s.test.text; break;
    case NodeTest::Kind::text: out += "text()"; break;
    case NodeTest::Kind::node: out += "node()"; break;
  }
  out += qualifiers(s.before);
  if (s.bind) {
    out += "->";
    switch (s.bind->kind) {
      case BindTarget::Kind::variable:
      case BindTarget::Kind::constant: out += s.bind->name; break;
      case BindTarget::Kind::literal: out += literal_source(s.bind->literal); break;
    }
    out += qualifiers(s.after);
  }
  return out;
}

bool is_operator(const std::string& name) { return name == "+" || name == "-" || name == "*" || name == "div"; }

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  switch (e.entry) {
    case Entry::relative: break;
    case Entry::rooted: out = "/"; break;
    case Entry::document: out = "document(" + quote(e.origin) + ")"; break;
    case Entry::constant:
    case Entry::variable: out = e.origin; break;
  }
  out += qualifiers(e.entry_quals);
  for (std::size_t i = 0; i < e.steps.size(); ++i) {
    bool slash = i > 0 || e.entry == Entry::document || e.entry == Entry::constant || e.entry == Entry::variable;
    if (slash) out += "/";
    out += step_text(e.steps[i]);
  }
  return out;
}

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::literal: return literal_source(t.literal);
    case Term::Kind::variable:
    case Term::Kind::constant: return t.name;
    case Term::Kind::path: return to_string(t.path);
    case Term::Kind::position: return "position()";
    case Term::Kind::last: return "last()";
    case Term::Kind::function: {
      if (is_operator(t.name) && t.args.size() == 2) {
        return "(" + to_string(t.args[0]) + " " + t.name + " " + to_string(t.args[1]) + ")";
      }
      if (t.name == "neg" && t.args.size() == 1) return "(-" + to_string(t.args[0]) + ")";
      std::string out = t.name + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t.args[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

std::string to_string(const Qualifier& q) {
  switch (q.kind) {
    case Qualifier::Kind::expr: return to_string(q.expr);
    case Qualifier::Kind::compare:
      return to_string(q.terms[0]) + " " + std::string(compare_op_text(q.op)) + " " + to_string(q.terms[1]);
    case Qualifier::Kind::predicate: {
      std::string out = q.name + "(";
      for (std::size_t i = 0; i < q.terms.size(); ++i) {
        if (i) out += ", ";
        out += to_string(q.terms[i]);
      }
      return out + ")";
    }
    case Qualifier::Kind::negation: {
      const Qualifier& inner = q.parts.front();
      if (inner.kind == Qualifier::Kind::conjunction) return "not (" + to_string(inner) + ")";
      return "not " + to_string(inner);
    }
    case Qualifier::Kind::conjunction: {
      std::string out;
      for (std::size_t i = 0; i < q.parts.size(); ++i) {
        if (i) out += " and ";
        const Qualifier& p = q.parts[i];
        out += p.kind == Qualifier::Kind::conjunction ? "(" + to_string(p) + ")" : to_string(p);
      }
      return out;
    }
  }
  return "?";
}

std::string to_string(const Literal& l) { return (l.negated ? "not " : "") + to_string(l.atom); }

std::string to_string(const Rule& r) {
  std::string out;
  for (std::size_t i = 0; i < r.head.size(); ++i) {
    if (i) out += ", ";
    out += to_string(r.head[i]);
  }
  if (!r.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      if (i) out += ", ";
      out += to_string(r.body[i]);
    }
  }
  return out + ".";
}

std::string query_to_string(const std::vector<Literal>& q) {
  std::string out = "?- ";
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) out += ", ";
    out += to_string(q[i]);
  }
  return out + ".";
}

}  // namespace xpathlog
