#pragma once

#include <stdexcept>
#include <string>

namespace xpathlog {

// Base of every error raised by the library. `user_error()` separates bad
// input (exit code 1) from engine faults (exit code 2).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message, bool user = true)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)), user_(user) {}

  const std::string& kind() const noexcept { return kind_; }
  bool user_error() const noexcept { return user_; }

 private:
  std::string kind_;
  bool user_;
};

#define XPATHLOG_ERROR(Name, User)                                  \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& message) : Error(#Name, message, User) {} \
  };

// xtree-core
XPATHLOG_ERROR(NodeUnknown, false)
XPATHLOG_ERROR(CyclicDescent, true)

// xml-io
XPATHLOG_ERROR(MalformedXml, true)
XPATHLOG_ERROR(DocumentUnavailable, true)
XPATHLOG_ERROR(CyclicView, true)

// syntax
XPATHLOG_ERROR(HeadNotDefinite, true)
XPATHLOG_ERROR(UnsafeHeadVariable, true)
XPATHLOG_ERROR(DefinitenessError, true)
XPATHLOG_ERROR(SafetyError, true)

// query-eval
XPATHLOG_ERROR(UnboundVariable, true)
XPATHLOG_ERROR(UnknownFunction, true)

// update-engine
XPATHLOG_ERROR(UnboundHeadVariable, true)
XPATHLOG_ERROR(HostUnknown, true)
XPATHLOG_ERROR(IndexOutOfRange, true)
XPATHLOG_ERROR(UnsupportedFusion, true)

// fixpoint
XPATHLOG_ERROR(DivergenceError, true)

#undef XPATHLOG_ERROR

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& expected)
      : Error("SyntaxError", std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected),
        line_(line),
        column_(column),
        expected_(expected) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

}  // namespace xpathlog
