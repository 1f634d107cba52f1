#include <cctype>
#include <sstream>

#include "xpathlog/errors.hpp"
#include "xpathlog/syntax.hpp"

namespace xpathlog {

namespace {

enum class Tok {
  end,
  ident,
  var,
  string,
  integer,
  real,
  slash,
  dslash,
  lbrack,
  rbrack,
  lparen,
  rparen,
  comma,
  stop,
  dot,
  dotdot,
  at,
  dcolon,
  arrow,
  neck,
  query,
  eq,
  ne,
  lt,
  le,
  gt,
  ge,
  plus,
  minus,
  star,
  stratum,
  command,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '.' || c == '-';
}
bool space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool statement_start = true;
    for (;;) {
      skip_blank(out);
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::end;
        out.push_back(t);
        return out;
      }
      if (!out.empty() && out.back().kind == Tok::stratum) statement_start = true;
      char c = src_[pos_];
      if (c == '@' && statement_start) {
        lex_command(t);
      } else {
        lex_token(t);
      }
      statement_start = t.kind == Tok::stop || t.kind == Tok::command;
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(line_, col_, expected); }

  bool at_terminator(std::size_t k) const {
    char n = peek(k);
    return n == '\0' || space(n) || n == '%';
  }

  void skip_blank(std::vector<Token>& out) {
    for (;;) {
      while (pos_ < src_.size() && space(src_[pos_])) advance();
      if (peek() != '%') return;
      Token t;
      t.line = line_;
      t.col = col_;
      std::size_t start = pos_;
      while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      std::string_view comment = src_.substr(start, pos_ - start);
      while (!comment.empty() && space(comment.back())) comment.remove_suffix(1);
      if (comment.rfind("%%", 0) == 0) {
        std::string_view rest = comment.substr(2);
        while (!rest.empty() && space(rest.front())) rest.remove_prefix(1);
        if (rest == "stratum") {
          t.kind = Tok::stratum;
          out.push_back(t);
        }
      }
    }
  }

  void lex_command(Token& t) {
    advance();
    std::size_t start = pos_;
    while (pos_ < src_.size()) {
      if (src_[pos_] == '.' && at_terminator(1)) break;
      if (src_[pos_] == '"') {
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"') advance();
      }
      advance();
    }
    if (pos_ >= src_.size()) fail("'.' ending the command");
    t.kind = Tok::command;
    t.text = std::string(src_.substr(start, pos_ - start));
    advance();
  }

  void lex_token(Token& t) {
    char c = peek();
    auto two = [&](char a, char b) { return c == a && peek(1) == b; };
    auto simple = [&](Tok k, std::size_t n) {
      t.kind = k;
      t.text = std::string(src_.substr(pos_, n));
      advance(n);
    };
    if (two('?', '-')) return simple(Tok::query, 2);
    if (two(':', '-')) return simple(Tok::neck, 2);
    if (two(':', ':')) return simple(Tok::dcolon, 2);
    if (two('-', '>')) return simple(Tok::arrow, 2);
    if (two('!', '=')) return simple(Tok::ne, 2);
    if (two('<', '=')) return simple(Tok::le, 2);
    if (two('>', '=')) return simple(Tok::ge, 2);
    if (two('/', '/')) return simple(Tok::dslash, 2);
    if (two('.', '.')) return simple(Tok::dotdot, 2);
    switch (c) {
      case '/': return simple(Tok::slash, 1);
      case '[': return simple(Tok::lbrack, 1);
      case ']': return simple(Tok::rbrack, 1);
      case '(': return simple(Tok::lparen, 1);
      case ')': return simple(Tok::rparen, 1);
      case ',': return simple(Tok::comma, 1);
      case '@': return simple(Tok::at, 1);
      case '=': return simple(Tok::eq, 1);
      case '<': return simple(Tok::lt, 1);
      case '>': return simple(Tok::gt, 1);
      case '+': return simple(Tok::plus, 1);
      case '-': return simple(Tok::minus, 1);
      case '*': return simple(Tok::star, 1);
      case '.':
        if (at_terminator(1)) return simple(Tok::stop, 1);
        return simple(Tok::dot, 1);
      case '"': return lex_string(t);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(t);
    if (ident_start(c)) return lex_ident(t);
    fail("a token");
  }

  void lex_string(Token& t) {
    advance();
    std::string out;
    for (;;) {
      if (pos_ >= src_.size()) fail("closing '\"'");
      char c = src_[pos_];
      if (c == '"') break;
      if (c == '\\') {
        advance();
        char e = peek();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail("escape sequence");
        }
        advance();
        continue;
      }
      out += c;
      advance();
    }
    advance();
    t.kind = Tok::string;
    t.text = std::move(out);
  }

  void lex_number(Token& t) {
    std::size_t start = pos_;
    bool real = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      real = true;
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      real = true;
      advance(2);
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    t.kind = real ? Tok::real : Tok::integer;
    t.text = std::string(src_.substr(start, pos_ - start));
  }

  void lex_ident(Token& t) {
    std::size_t start = pos_;
    std::size_t end = pos_;
    while (end < src_.size() && ident_char(src_[end])) {
      char c = src_[end];
      char n = end + 1 < src_.size() ? src_[end + 1] : '\0';
      if (c == ':' && (n == ':' || n == '-')) break;
      if (c == '-' && n == '>') break;
      ++end;
    }
    // A trailing '.' before blank text ends the statement.
    while (end > start + 1 && src_[end - 1] == '.') {
      char n = end < src_.size() ? src_[end] : '\0';
      if (n == '\0' || space(n) || n == '%') {
        --end;
      } else {
        break;
      }
    }
    std::string text(src_.substr(start, end - start));
    advance(end - start);
    bool upper = std::isupper(static_cast<unsigned char>(text[0])) || text[0] == '_';
    t.kind = upper ? Tok::var : Tok::ident;
    t.text = std::move(text);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::string: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<Statement> script() {
    std::vector<Statement> out;
    while (peek().kind != Tok::end) out.push_back(statement());
    return out;
  }

  std::vector<Literal> query_only() {
    if (peek().kind == Tok::query) next();
    auto lits = literals();
    expect(Tok::stop, "'.' ending the query");
    expect(Tok::end, "end of input");
    return lits;
  }

  Atom atom_only(bool head) {
    head_ = head;
    Atom a = atom(true);
    if (peek().kind == Tok::stop) next();
    expect(Tok::end, "end of input");
    return a;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw SyntaxError(t.line, t.col, expected + " before " + describe(t));
  }
  Token expect(Tok k, const std::string& expected) {
    if (peek().kind != k) fail(expected);
    return next();
  }

  std::string variable_name(const Token& t) const {
    if (t.text == "Pos" || t.text == "Size") {
      throw SyntaxError(t.line, t.col, "a variable other than the reserved name " + t.text);
    }
    return t.text;
  }

  Statement statement() {
    Statement s;
    s.line = peek().line;
    if (peek().kind == Tok::stratum) {
      next();
      s.kind = Statement::Kind::stratum_break;
      return s;
    }
    if (peek().kind == Tok::command) {
      Token t = next();
      s.kind = Statement::Kind::command;
      std::istringstream in(t.text);
      in >> s.command.name;
      std::string w;
      while (in >> w) s.command.args.push_back(w);
      std::string raw = t.text.substr(std::min(t.text.size(), s.command.name.size()));
      auto b = raw.find_first_not_of(" \t\r\n");
      s.command.raw = b == std::string::npos ? std::string() : raw.substr(b);
      while (!s.command.raw.empty() && space(s.command.raw.back())) s.command.raw.pop_back();
      if (s.command.name.empty()) throw SyntaxError(t.line, t.col, "a command name after '@'");
      return s;
    }
    if (accept(Tok::query)) {
      s.kind = Statement::Kind::query;
      head_ = false;
      s.query = literals();
      expect(Tok::stop, "'.' ending the query");
      return s;
    }
    s.kind = Statement::Kind::rule;
    s.rule.line = s.line;
    head_ = true;
    s.rule.head.push_back(atom(true));
    while (accept(Tok::comma)) s.rule.head.push_back(atom(true));
    head_ = false;
    if (accept(Tok::neck)) s.rule.body = literals();
    expect(Tok::stop, "'.' ending the rule");
    return s;
  }

  std::vector<Literal> literals() {
    std::vector<Literal> out;
    out.push_back(literal());
    while (accept(Tok::comma)) out.push_back(literal());
    return out;
  }

  bool is_keyword(const Token& t, std::string_view kw) const { return t.kind == Tok::ident && t.text == kw; }

  Literal literal() {
    Literal l;
    if (is_keyword(peek(), "not")) {
      next();
      l.negated = true;
    }
    l.atom = atom(true);
    return l;
  }

  static bool is_compare(Tok k) {
    return k == Tok::eq || k == Tok::ne || k == Tok::lt || k == Tok::le || k == Tok::gt || k == Tok::ge;
  }

  static CompareOp compare_op(Tok k) {
    switch (k) {
      case Tok::ne: return CompareOp::ne;
      case Tok::lt: return CompareOp::lt;
      case Tok::le: return CompareOp::le;
      case Tok::gt: return CompareOp::gt;
      case Tok::ge: return CompareOp::ge;
      default: return CompareOp::eq;
    }
  }

  // Atom or comparison. `top` selects absolute reading of bare names.
  Qualifier atom(bool top) {
    const Token start = peek();
    Term lhs = term(top);
    if (is_compare(peek().kind)) {
      Tok op = next().kind;
      Term rhs = term(top);
      return compare_qualifier(compare_op(op), std::move(lhs), std::move(rhs));
    }
    return term_to_atom(std::move(lhs), start);
  }

  Qualifier term_to_atom(Term t, const Token& at) {
    switch (t.kind) {
      case Term::Kind::path: return expr_qualifier(std::move(t.path));
      case Term::Kind::variable: {
        Expr e;
        e.entry = Entry::variable;
        e.origin = t.name;
        return expr_qualifier(std::move(e));
      }
      case Term::Kind::constant: {
        Expr e;
        e.entry = Entry::constant;
        e.origin = t.name;
        return expr_qualifier(std::move(e));
      }
      case Term::Kind::function:
        if (t.name == "+" || t.name == "-" || t.name == "*" || t.name == "div" || t.name == "neg") break;
        {
          Qualifier q;
          q.kind = Qualifier::Kind::predicate;
          q.name = std::move(t.name);
          q.terms = std::move(t.args);
          return q;
        }
      default: break;
    }
    throw SyntaxError(at.line, at.col, "an atom (path expression, predicate or comparison)");
  }

  Qualifier qualifier() {
    std::vector<Qualifier> parts;
    parts.push_back(qualifier_unary());
    while (is_keyword(peek(), "and")) {
      next();
      parts.push_back(qualifier_unary());
    }
    return conjunction(std::move(parts));
  }

  Qualifier qualifier_unary() {
    if (is_keyword(peek(), "not")) {
      next();
      Qualifier q;
      q.kind = Qualifier::Kind::negation;
      q.parts.push_back(qualifier_unary());
      return q;
    }
    if (peek().kind == Tok::lparen) {
      std::size_t save = pos_;
      try {
        next();
        Qualifier q = qualifier();
        expect(Tok::rparen, "')'");
        if (!is_compare(peek().kind) && !is_arith(peek())) return q;
      } catch (const SyntaxError&) {
      }
      pos_ = save;
    }
    return atom(false);
  }

  bool is_arith(const Token& t) const {
    return t.kind == Tok::plus || t.kind == Tok::minus || t.kind == Tok::star || is_keyword(t, "div");
  }

  static Term function(std::string name, std::vector<Term> args) {
    Term t;
    t.kind = Term::Kind::function;
    t.name = std::move(name);
    t.args = std::move(args);
    return t;
  }

  Term term(bool top) {
    Term lhs = term_mult(top);
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      std::string op = next().kind == Tok::plus ? "+" : "-";
      lhs = function(op, {std::move(lhs), term_mult(top)});
    }
    return lhs;
  }

  Term term_mult(bool top) {
    Term lhs = term_unary(top);
    while (peek().kind == Tok::star || is_keyword(peek(), "div")) {
      std::string op = next().kind == Tok::star ? "*" : "div";
      lhs = function(op, {std::move(lhs), term_unary(top)});
    }
    return lhs;
  }

  Term term_unary(bool top) {
    if (accept(Tok::minus)) {
      Term t = term_unary(top);
      if (t.kind == Term::Kind::literal && t.literal.is_integer()) return literal_term(Value::integer(-t.literal.as_integer()));
      if (t.kind == Term::Kind::literal && t.literal.is_real()) return literal_term(Value::real(-t.literal.as_real()));
      return function("neg", {std::move(t)});
    }
    return primary(top);
  }

  static bool is_axis_token(const Token& t) { return t.kind == Tok::ident && axis_from_name(t.text).has_value(); }

  Term primary(bool top) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::integer: {
        Token n = next();
        return literal_term(parse_literal(n.text));
      }
      case Tok::real: {
        Token n = next();
        return literal_term(Value::real(std::stod(n.text)));
      }
      case Tok::string: {
        Token n = next();
        return literal_term(Value::string(n.text));
      }
      case Tok::lparen: {
        next();
        Term inner = term(top);
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::slash:
      case Tok::dslash:
      case Tok::at:
      case Tok::dot:
      case Tok::dotdot: return path_term(path(top));
      case Tok::var: {
        if (!top) {
          Tok n = peek(1).kind;
          if (n == Tok::arrow || n == Tok::lbrack || n == Tok::slash || n == Tok::dslash) return path_term(path(top));
          return variable_term(variable_name(next()));
        }
        Tok n = peek(1).kind;
        if (n == Tok::lbrack || n == Tok::slash || n == Tok::dslash) return path_term(path(top));
        return variable_term(variable_name(next()));
      }
      case Tok::ident: {
        if (peek(1).kind == Tok::lparen) {
          if (t.text == "position" || t.text == "last") {
            next();
            next();
            expect(Tok::rparen, "')'");
            Term c;
            c.kind = t.text == "position" ? Term::Kind::position : Term::Kind::last;
            return c;
          }
          if (t.text == "text" || t.text == "node" || t.text == "document" || is_axis_token(t)) return path_term(path(top));
          Token name = next();
          next();
          std::vector<Term> args;
          if (peek().kind != Tok::rparen) {
            args.push_back(term(top));
            while (accept(Tok::comma)) args.push_back(term(top));
          }
          expect(Tok::rparen, "')' closing the argument list");
          return function(name.text, std::move(args));
        }
        if (top && peek(1).kind != Tok::dcolon) {
          Tok n = peek(1).kind;
          if (n == Tok::lbrack || n == Tok::slash || n == Tok::dslash) return path_term(path(top));
          Term c;
          c.kind = Term::Kind::constant;
          c.name = next().text;
          return c;
        }
        return path_term(path(top));
      }
      default: break;
    }
    fail("a term");
  }

  static Step descendant_or_self_step() {
    Step s;
    s.axis = Axis::descendant_or_self;
    s.test.kind = NodeTest::Kind::node;
    return s;
  }

  Expr path(bool top) {
    Expr e;
    const Token& t = peek();
    if (t.kind == Tok::slash) {
      next();
      e.entry = Entry::rooted;
      if (starts_step(peek())) relative_path(e);
      return e;
    }
    if (t.kind == Tok::dslash) {
      next();
      e.entry = Entry::rooted;
      e.steps.push_back(descendant_or_self_step());
      relative_path(e);
      return e;
    }
    if (t.kind == Tok::ident && t.text == "document" && peek(1).kind == Tok::lparen) {
      next();
      next();
      e.entry = Entry::document;
      e.origin = expect(Tok::string, "a document source string").text;
      expect(Tok::rparen, "')'");
      continue_path(e);
      return e;
    }
    if (top && t.kind == Tok::var) {
      e.entry = Entry::variable;
      e.origin = variable_name(next());
      while (accept(Tok::lbrack)) {
        e.entry_quals.push_back(qualifier());
        expect(Tok::rbrack, "']'");
      }
      continue_path(e);
      return e;
    }
    if (top && t.kind == Tok::ident && peek(1).kind != Tok::dcolon && peek(1).kind != Tok::lparen) {
      e.entry = Entry::constant;
      e.origin = next().text;
      while (accept(Tok::lbrack)) {
        e.entry_quals.push_back(qualifier());
        expect(Tok::rbrack, "']'");
      }
      continue_path(e);
      return e;
    }
    e.entry = Entry::relative;
    relative_path(e);
    return e;
  }

  void continue_path(Expr& e) {
    if (accept(Tok::slash)) {
      relative_path(e);
    } else if (accept(Tok::dslash)) {
      e.steps.push_back(descendant_or_self_step());
      relative_path(e);
    }
  }

  bool starts_step(const Token& t) const {
    return t.kind == Tok::ident || t.kind == Tok::var || t.kind == Tok::at || t.kind == Tok::dot ||
           t.kind == Tok::dotdot;
  }

  void relative_path(Expr& e) {
    e.steps.push_back(step());
    for (;;) {
      if (accept(Tok::slash)) {
        e.steps.push_back(step());
      } else if (accept(Tok::dslash)) {
        e.steps.push_back(descendant_or_self_step());
        e.steps.push_back(step());
      } else {
        return;
      }
    }
  }

  Step step() {
    Step s;
    const Token t = peek();
    if (t.kind == Tok::dot || t.kind == Tok::dotdot) {
      next();
      s.axis = t.kind == Tok::dot ? Axis::self : Axis::parent;
      s.test.kind = NodeTest::Kind::node;
      step_ops(s);
      return s;
    }
    if (accept(Tok::at)) {
      s.axis = Axis::attribute;
    } else if (is_axis_token(t) && peek(1).kind == Tok::dcolon) {
      next();
      next();
      s.axis = *axis_from_name(t.text);
    } else if (is_axis_token(t) && peek(1).kind == Tok::lparen && peek(2).kind == Tok::integer &&
               peek(3).kind == Tok::rparen && peek(4).kind == Tok::dcolon) {
      Axis a = *axis_from_name(t.text);
      if (!head_) throw SyntaxError(t.line, t.col, "a plain axis (positional axes are only allowed in rule heads)");
      if (a != Axis::child && a != Axis::following_sibling && a != Axis::preceding_sibling) {
        throw SyntaxError(t.line, t.col, "child, following-sibling or preceding-sibling before a position");
      }
      next();
      next();
      s.position = std::stoi(next().text);
      next();
      next();
      s.axis = a;
    }
    s.test = node_test();
    step_ops(s);
    return s;
  }

  NodeTest node_test() {
    const Token t = peek();
    NodeTest n;
    if (t.kind == Tok::var) {
      n.kind = NodeTest::Kind::variable;
      n.text = variable_name(next());
      return n;
    }
    if (t.kind == Tok::ident) {
      if ((t.text == "text" || t.text == "node") && peek(1).kind == Tok::lparen && peek(2).kind == Tok::rparen) {
        next();
        next();
        next();
        n.kind = t.text == "text" ? NodeTest::Kind::text : NodeTest::Kind::node;
        return n;
      }
      n.kind = NodeTest::Kind::name;
      n.text = next().text;
      return n;
    }
    fail("a node test");
  }

  void step_ops(Step& s) {
    while (accept(Tok::lbrack)) {
      s.before.push_back(qualifier());
      expect(Tok::rbrack, "']'");
    }
    if (accept(Tok::arrow)) {
      s.bind = bind_target();
      while (accept(Tok::lbrack)) {
        s.after.push_back(qualifier());
        expect(Tok::rbrack, "']'");
      }
    }
  }

  BindTarget bind_target() {
    BindTarget b;
    const Token t = peek();
    switch (t.kind) {
      case Tok::var:
        b.kind = BindTarget::Kind::variable;
        b.name = variable_name(next());
        return b;
      case Tok::ident:
        b.kind = BindTarget::Kind::constant;
        b.name = next().text;
        return b;
      case Tok::string:
        b.kind = BindTarget::Kind::literal;
        b.literal = Value::string(next().text);
        return b;
      case Tok::integer:
        b.kind = BindTarget::Kind::literal;
        b.literal = parse_literal(next().text);
        return b;
      case Tok::real:
        b.kind = BindTarget::Kind::literal;
        b.literal = Value::real(std::stod(next().text));
        return b;
      case Tok::minus:
        if (peek(1).kind == Tok::integer || peek(1).kind == Tok::real) {
          next();
          Token n = next();
          b.kind = BindTarget::Kind::literal;
          b.literal = n.kind == Tok::integer ? Value::integer(-parse_literal(n.text).as_integer())
                                             : Value::real(-std::stod(n.text));
          return b;
        }
        break;
      default: break;
    }
    fail("a variable, literal or constant after '->'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool head_ = false;
};

}  // namespace

std::vector<Statement> parse_script(std::string_view text) {
  Parser p(Lexer(text).run());
  return p.script();
}

std::vector<Literal> parse_query(std::string_view text) {
  Parser p(Lexer(text).run());
  return p.query_only();
}

Atom parse_atom(std::string_view text, bool head) {
  Parser p(Lexer(text).run());
  return p.atom_only(head);
}

Program parse_program(std::string_view text) {
  Program prog;
  prog.strata.emplace_back();
  for (auto& s : parse_script(text)) {
    switch (s.kind) {
      case Statement::Kind::stratum_break:
        if (!prog.strata.back().empty()) prog.strata.emplace_back();
        break;
      case Statement::Kind::rule:
        check_rule(s.rule);
        prog.strata.back().push_back(std::move(s.rule));
        break;
      case Statement::Kind::query:
        throw SyntaxError(s.line, 1, "a rule (queries are not part of programs)");
      case Statement::Kind::command:
        throw SyntaxError(s.line, 1, "a rule (commands are not part of programs)");
    }
  }
  if (prog.strata.size() > 1 && prog.strata.back().empty()) prog.strata.pop_back();
  return prog;
}

}  // namespace xpathlog
