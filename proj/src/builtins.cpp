#include <cmath>

#include "xpathlog/errors.hpp"
#include "xpathlog/eval.hpp"

namespace xpathlog {

namespace {

template <class T>
bool apply(CompareOp op, const T& a, const T& b) {
  switch (op) {
    case CompareOp::eq: return a == b;
    case CompareOp::ne: return a != b;
    case CompareOp::lt: return a < b;
    case CompareOp::le: return a <= b;
    case CompareOp::gt: return a > b;
    case CompareOp::ge: return a >= b;
  }
  return false;
}

Value number_value(double d) {
  if (std::isfinite(d) && d == std::trunc(d) && std::fabs(d) < 9.0e15) return Value::integer(static_cast<std::int64_t>(d));
  return Value::real(d);
}

std::optional<std::string> string_of(const XStructure& s, const Value& v) {
  Value lv = s.literal_value(v);
  return lv.text();
}

}  // namespace

bool compare_values(const XStructure& s, CompareOp op, const Value& a, const Value& b) {
  Value la = s.literal_value(a);
  Value lb = s.literal_value(b);
  if (la.is_node() || lb.is_node()) {
    if (!(la.is_node() && lb.is_node())) return false;
    if (op == CompareOp::eq) return la.node_id() == lb.node_id();
    if (op == CompareOp::ne) return la.node_id() != lb.node_id();
    return false;
  }
  if (la.is_integer() && lb.is_integer()) return apply(op, la.as_integer(), lb.as_integer());
  auto na = la.numeric();
  auto nb = lb.numeric();
  if (na && nb) return apply(op, *na, *nb);
  return apply(op, *la.text(), *lb.text());
}

bool is_builtin_predicate(const std::string& name) { return name == "contains" || name == "starts-with"; }

std::optional<Value> call_function(const XStructure& s, const std::string& name, const std::vector<Value>& args) {
  auto arity = [&](std::size_t n) {
    if (args.size() != n) {
      throw UnknownFunction(name + "/" + std::to_string(args.size()) + " (expects " + std::to_string(n) + " arguments)");
    }
  };
  if (name == "+" || name == "-" || name == "*" || name == "div") {
    arity(2);
    Value a = s.literal_value(args[0]);
    Value b = s.literal_value(args[1]);
    if (a.is_integer() && b.is_integer() && name != "div") {
      std::int64_t x = a.as_integer(), y = b.as_integer(), r = 0;
      bool overflow = name == "+" ? __builtin_add_overflow(x, y, &r)
                      : name == "-" ? __builtin_sub_overflow(x, y, &r)
                                    : __builtin_mul_overflow(x, y, &r);
      if (!overflow) return Value::integer(r);
    }
    auto x = a.numeric();
    auto y = b.numeric();
    if (!x || !y) return std::nullopt;
    if (name == "+") return number_value(*x + *y);
    if (name == "-") return number_value(*x - *y);
    if (name == "*") return number_value(*x * *y);
    if (*y == 0) return std::nullopt;
    return number_value(*x / *y);
  }
  if (name == "neg") {
    arity(1);
    Value a = s.literal_value(args[0]);
    if (a.is_integer()) return Value::integer(-a.as_integer());
    auto x = a.numeric();
    if (!x) return std::nullopt;
    return number_value(-*x);
  }
  if (name == "concat") {
    if (args.empty()) throw UnknownFunction("concat/0");
    std::string out;
    for (const auto& a : args) {
      auto t = string_of(s, a);
      if (!t) return std::nullopt;
      out += *t;
    }
    return Value::string(std::move(out));
  }
  if (name == "contains" || name == "starts-with") {
    arity(2);
    auto a = string_of(s, args[0]);
    auto b = string_of(s, args[1]);
    if (!a || !b) return std::nullopt;
    bool r = name == "contains" ? a->find(*b) != std::string::npos : a->rfind(*b, 0) == 0;
    return Value::integer(r ? 1 : 0);
  }
  if (name == "number") {
    arity(1);
    auto x = s.literal_value(args[0]).numeric();
    if (!x) return std::nullopt;
    return number_value(*x);
  }
  if (name == "string") {
    arity(1);
    auto t = string_of(s, args[0]);
    if (!t) return std::nullopt;
    return Value::string(*t);
  }
  if (name == "string-length") {
    arity(1);
    auto t = string_of(s, args[0]);
    if (!t) return std::nullopt;
    return Value::integer(static_cast<std::int64_t>(t->size()));
  }
  throw UnknownFunction(name);
}

}  // namespace xpathlog
