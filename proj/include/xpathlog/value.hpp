#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace xpathlog {

using NodeId = std::uint32_t;

// Engine-level parent of every root. Never a member of the node set.
inline constexpr NodeId kPseudoRoot = 0;

// Reserved element name of text children.
inline constexpr std::string_view kTextName = "text()";

struct NodeRef {
  NodeId id = kPseudoRoot;
  auto operator<=>(const NodeRef&) const = default;
};

struct NameRef {
  std::string text;
  auto operator<=>(const NameRef&) const = default;
};

// Node | integer | float | string | name. The variant order is also the
// canonical ordering across kinds.
class Value {
 public:
  using Storage = std::variant<NodeRef, std::int64_t, double, std::string, NameRef>;

  Value() = default;
  static Value node(NodeId id) { return Value(NodeRef{id}); }
  static Value integer(std::int64_t v) { return Value(v); }
  static Value real(double v) { return Value(v); }
  static Value string(std::string v) { return Value(std::move(v)); }
  static Value name(std::string v) { return Value(NameRef{std::move(v)}); }

  bool is_node() const { return std::holds_alternative<NodeRef>(v_); }
  bool is_name() const { return std::holds_alternative<NameRef>(v_); }
  bool is_integer() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_real() const { return std::holds_alternative<double>(v_); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  bool is_number() const { return is_integer() || is_real(); }
  bool is_literal() const { return is_number() || is_string(); }

  NodeId node_id() const { return std::get<NodeRef>(v_).id; }
  std::int64_t as_integer() const { return std::get<std::int64_t>(v_); }
  double as_real() const { return std::get<double>(v_); }
  const std::string& as_string() const { return std::get<std::string>(v_); }
  const std::string& as_name() const { return std::get<NameRef>(v_).text; }

  // Numeric view: numbers directly, strings when they parse as numbers.
  std::optional<double> numeric() const;

  // Text of literals and names; nullopt for nodes.
  std::optional<std::string> text() const;

  const Storage& storage() const { return v_; }

  bool operator==(const Value& o) const { return v_ == o.v_; }
  std::strong_ordering operator<=>(const Value& o) const;

 private:
  template <class T>
  explicit Value(T v) : v_(std::move(v)) {}
  Storage v_{NodeRef{}};
};

// Ingestion typing: integer, then float, else string.
Value parse_literal(std::string_view text);

// Literal rendering without quotes; shortest round-trip form for floats.
std::string literal_text(const Value& v);

// Identity on nodes, numeric equality across integer and float, text
// equality between names and strings.
bool same_value(const Value& a, const Value& b);

}  // namespace xpathlog
