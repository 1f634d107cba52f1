#include "xpathlog/value.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace xpathlog {

namespace {

bool looks_numeric(std::string_view t) {
  if (t.empty()) return false;
  for (char c : t) {
    if (!((c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E')) return false;
  }
  return true;
}

std::optional<std::int64_t> parse_int(std::string_view t) {
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) return std::nullopt;
  return v;
}

std::optional<double> parse_real(std::string_view t) {
  if (!looks_numeric(t)) return std::nullopt;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string_view trim(std::string_view t) {
  while (!t.empty() && (t.front() == ' ' || t.front() == '\t' || t.front() == '\n' || t.front() == '\r')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t' || t.back() == '\n' || t.back() == '\r')) t.remove_suffix(1);
  return t;
}

}  // namespace

std::optional<double> Value::numeric() const {
  if (is_integer()) return static_cast<double>(as_integer());
  if (is_real()) return as_real();
  if (is_string()) return parse_real(trim(as_string()));
  return std::nullopt;
}

std::optional<std::string> Value::text() const {
  if (is_node()) return std::nullopt;
  if (is_name()) return as_name();
  return literal_text(*this);
}

std::strong_ordering Value::operator<=>(const Value& o) const {
  if (v_.index() != o.v_.index()) return v_.index() <=> o.v_.index();
  if (is_real()) {
    double a = as_real(), b = o.as_real();
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  if (is_node()) return node_id() <=> o.node_id();
  if (is_integer()) return as_integer() <=> o.as_integer();
  if (is_string()) return as_string().compare(o.as_string()) <=> 0;
  return as_name().compare(o.as_name()) <=> 0;
}

Value parse_literal(std::string_view raw) {
  std::string_view t = trim(raw);
  if (looks_numeric(t)) {
    if (auto i = parse_int(t)) return Value::integer(*i);
    if (auto d = parse_real(t)) return Value::real(*d);
  }
  return Value::string(std::string(raw));
}

std::string literal_text(const Value& v) {
  if (v.is_integer()) return std::to_string(v.as_integer());
  if (v.is_real()) {
    std::array<char, 64> buf{};
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v.as_real());
    return std::string(buf.data(), p);
  }
  if (v.is_string()) return v.as_string();
  if (v.is_name()) return v.as_name();
  return {};
}

bool same_value(const Value& a, const Value& b) {
  if (a.is_node() || b.is_node()) return a.is_node() && b.is_node() && a.node_id() == b.node_id();
  if (a.is_number() && b.is_number()) return *a.numeric() == *b.numeric();
  if (a.is_number() || b.is_number()) return false;
  return *a.text() == *b.text();
}

}  // namespace xpathlog
