#include "xpathlog/atomizer.hpp"

#include "xpathlog/errors.hpp"
#include "xpathlog/syntax.hpp"

namespace xpathlog {

namespace {

bool plain_descendant_or_self(const Step& s) {
  return s.axis == Axis::descendant_or_self && s.test.kind == NodeTest::Kind::node && !s.position && s.before.empty() &&
         !s.bind && s.after.empty();
}

FlatTerm bind_term(const BindTarget& b) {
  switch (b.kind) {
    case BindTarget::Kind::variable: return FlatTerm::variable(b.name);
    case BindTarget::Kind::constant: return FlatTerm::constant(b.name);
    case BindTarget::Kind::literal: return FlatTerm::lit(b.literal);
  }
  return FlatTerm::root();
}

}  // namespace

std::string Atomizer::fresh() {
  for (;;) {
    std::string n = "_X" + std::to_string(++counter_);
    if (!avoid_.count(n)) {
      out_.locals.push_back(n);
      return n;
    }
  }
}

FlatTerm Atomizer::expr(const Expr& e, const FlatTerm& context) {
  FlatTerm host;
  switch (e.entry) {
    case Entry::relative: host = context; break;
    case Entry::rooted: host = FlatTerm::root(); break;
    case Entry::constant: host = FlatTerm::constant(e.origin); break;
    case Entry::variable: host = FlatTerm::variable(e.origin); break;
    case Entry::document: throw DefinitenessError("document() entry cannot be atomized");
  }
  for (const auto& q : e.entry_quals) qualifier(host, q);
  for (std::size_t i = 0; i < e.steps.size(); ++i) {
    const Step* s = &e.steps[i];
    Axis axis = s->axis;
    // `//n` reads as one descendant step.
    if (plain_descendant_or_self(*s) && i + 1 < e.steps.size() && e.steps[i + 1].axis == Axis::child &&
        !e.steps[i + 1].position) {
      ++i;
      s = &e.steps[i];
      axis = Axis::descendant;
    }
    FlatAtom a;
    a.kind = FlatAtom::Kind::step;
    a.host = host;
    a.axis = axis;
    a.position = s->position;
    a.test = s->test;
    a.result = s->bind ? bind_term(*s->bind) : FlatTerm::variable(fresh());
    // A literal cannot host further steps: keep the node and compare it.
    bool continues = i + 1 < e.steps.size() || !s->before.empty() || !s->after.empty();
    std::optional<FlatTerm> literal_check;
    if (a.result.kind == FlatTerm::Kind::literal && continues) {
      literal_check = a.result;
      a.result = FlatTerm::variable(fresh());
    }
    out_.atoms.push_back(a);
    host = a.result;
    if (literal_check) {
      FlatAtom c;
      c.kind = FlatAtom::Kind::compare;
      c.args = {host, *literal_check};
      out_.atoms.push_back(std::move(c));
    }
    for (const auto& q : s->before) qualifier(host, q);
    for (const auto& q : s->after) qualifier(host, q);
  }
  return host;
}

FlatTerm Atomizer::argument(const FlatTerm& host, const Term& t) {
  switch (t.kind) {
    case Term::Kind::literal: return FlatTerm::lit(t.literal);
    case Term::Kind::variable: return FlatTerm::variable(t.name);
    case Term::Kind::constant: return FlatTerm::constant(t.name);
    case Term::Kind::path:
      if (t.path.steps.empty() && t.path.entry_quals.empty()) {
        if (t.path.entry == Entry::variable) return FlatTerm::variable(t.path.origin);
        if (t.path.entry == Entry::constant) return FlatTerm::constant(t.path.origin);
      }
      return expr(t.path, host);
    case Term::Kind::function: throw DefinitenessError("function " + t.name + " cannot be atomized");
    case Term::Kind::position:
    case Term::Kind::last: throw DefinitenessError("context function cannot be atomized");
  }
  return FlatTerm::root();
}

void Atomizer::qualifier(const FlatTerm& host, const Qualifier& q) {
  switch (q.kind) {
    case Qualifier::Kind::conjunction:
      for (const auto& p : q.parts) qualifier(host, p);
      return;
    case Qualifier::Kind::expr: expr(q.expr, host); return;
    case Qualifier::Kind::compare: {
      FlatAtom a;
      a.kind = FlatAtom::Kind::compare;
      a.op = q.op;
      a.args.push_back(argument(host, q.terms[0]));
      a.args.push_back(argument(host, q.terms[1]));
      out_.atoms.push_back(std::move(a));
      return;
    }
    case Qualifier::Kind::predicate: {
      FlatAtom a;
      a.kind = FlatAtom::Kind::predicate;
      a.name = q.name;
      for (const auto& t : q.terms) a.args.push_back(argument(host, t));
      out_.atoms.push_back(std::move(a));
      return;
    }
    case Qualifier::Kind::negation: throw DefinitenessError("negation cannot be atomized");
  }
}

void Atomizer::add(const Atom& a) { qualifier(FlatTerm::root(), a); }

Atomization Atomizer::take() {
  Atomization r = std::move(out_);
  out_ = {};
  return r;
}

Atomization atomize(const Atom& a) {
  auto vars = variables_of(a);
  Atomizer z(std::set<std::string>(vars.begin(), vars.end()));
  z.add(a);
  return z.take();
}

Atomization atomize_all(const std::vector<Atom>& atoms, const std::set<std::string>& avoid) {
  std::set<std::string> all = avoid;
  for (const auto& a : atoms) {
    for (const auto& v : variables_of(a)) all.insert(v);
  }
  Atomizer z(std::move(all));
  for (const auto& a : atoms) z.add(a);
  return z.take();
}

std::string to_string(const FlatTerm& t) {
  switch (t.kind) {
    case FlatTerm::Kind::root: return "root";
    case FlatTerm::Kind::variable:
    case FlatTerm::Kind::constant: return t.name;
    case FlatTerm::Kind::literal: return to_string(literal_term(t.literal));
  }
  return "?";
}

std::string to_string(const FlatAtom& a) {
  switch (a.kind) {
    case FlatAtom::Kind::step: {
      std::string out = to_string(a.host) + "[" + std::string(axis_name(a.axis));
      if (a.position) out += "(" + std::to_string(*a.position) + ")";
      out += "::";
      switch (a.test.kind) {
        case NodeTest::Kind::name:
        case NodeTest::Kind::variable: out += a.test.text; break;
        case NodeTest::Kind::text: out += "text()"; break;
        case NodeTest::Kind::node: out += "node()"; break;
      }
      return out + "->" + to_string(a.result) + "]";
    }
    case FlatAtom::Kind::predicate: {
      std::string out = a.name + "(";
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(a.args[i]);
      }
      return out + ")";
    }
    case FlatAtom::Kind::compare:
      return to_string(a.args[0]) + " " + std::string(compare_op_text(a.op)) + " " + to_string(a.args[1]);
  }
  return "?";
}

namespace {

Term flat_term(const FlatTerm& t) {
  switch (t.kind) {
    case FlatTerm::Kind::variable: return variable_term(t.name);
    case FlatTerm::Kind::literal: return literal_term(t.literal);
    case FlatTerm::Kind::constant: {
      Term c;
      c.kind = Term::Kind::constant;
      c.name = t.name;
      return c;
    }
    case FlatTerm::Kind::root: {
      Expr e;
      e.entry = Entry::rooted;
      return path_term(std::move(e));
    }
  }
  return {};
}

}  // namespace

std::vector<Literal> to_literals(const std::vector<FlatAtom>& atoms) {
  std::vector<Literal> out;
  for (const auto& a : atoms) {
    Literal l;
    switch (a.kind) {
      case FlatAtom::Kind::step: {
        Expr e;
        switch (a.host.kind) {
          case FlatTerm::Kind::root: e.entry = Entry::rooted; break;
          case FlatTerm::Kind::variable: e.entry = Entry::variable; break;
          case FlatTerm::Kind::constant: e.entry = Entry::constant; break;
          case FlatTerm::Kind::literal:
            // Literals have no outgoing edges.
            out.push_back(Literal{false, compare_qualifier(CompareOp::eq, literal_term(Value::integer(0)),
                                                            literal_term(Value::integer(1)))});
            continue;
        }
        e.origin = a.host.name;
        Step s;
        s.axis = a.axis;
        s.position = a.position;
        s.test = a.test;
        BindTarget b;
        switch (a.result.kind) {
          case FlatTerm::Kind::variable: b.kind = BindTarget::Kind::variable; b.name = a.result.name; break;
          case FlatTerm::Kind::constant: b.kind = BindTarget::Kind::constant; b.name = a.result.name; break;
          case FlatTerm::Kind::literal: b.kind = BindTarget::Kind::literal; b.literal = a.result.literal; break;
          case FlatTerm::Kind::root: break;
        }
        s.bind = b;
        e.steps.push_back(std::move(s));
        l.atom = expr_qualifier(std::move(e));
        break;
      }
      case FlatAtom::Kind::predicate:
        l.atom.kind = Qualifier::Kind::predicate;
        l.atom.name = a.name;
        for (const auto& t : a.args) l.atom.terms.push_back(flat_term(t));
        break;
      case FlatAtom::Kind::compare:
        l.atom = compare_qualifier(a.op, flat_term(a.args[0]), flat_term(a.args[1]));
        break;
    }
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace xpathlog
