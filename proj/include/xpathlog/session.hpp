#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "xpathlog/fixpoint.hpp"
#include "xpathlog/syntax.hpp"
#include "xpathlog/xml_io.hpp"
#include "xpathlog/xstructure.hpp"

namespace xpathlog {

enum class OutputMode { bindings, xml };

struct SessionOptions {
  Limits limits;
  OutputMode output = OutputMode::bindings;
  bool trace = false;
  LoadOptions load;
};

// One interpreter state: a structure, the rules not yet run, and the
// streams answers and diagnostics go to.
class Session {
 public:
  Session(SessionOptions opts, std::ostream& out, std::ostream& err);

  // Executes a script. Relative paths in commands resolve against
  // `base`. Rules are collected and run to fixpoint before the next query
  // or command, and at the end of the text.
  void execute(std::string_view text, const std::filesystem::path& base = {});
  void execute_file(const std::filesystem::path& path);

  // Batch entry point: executes the files in order and maps errors to
  // exit codes (0 ok, 1 user error, 2 internal error).
  int run_files(const std::vector<std::string>& paths);

  // Reads statements from `in` until EOF. Errors are reported and the
  // state is kept as it was before the failing statement.
  int repl(std::istream& in, bool prompt);

  const XStructure& structure() const { return structure_; }

 private:
  void statement(const Statement& st, const std::filesystem::path& base);
  void flush_rules(const std::filesystem::path& base);
  void preload_documents(const std::vector<Literal>& body, const std::filesystem::path& base);
  void query(const std::vector<Literal>& q, const std::filesystem::path& base);
  void command(const Command& c, const std::filesystem::path& base);
  NodeId export_root(const std::string& target) const;
  std::string show(const Value& v) const;

  SessionOptions opts_;
  std::ostream& out_;
  std::ostream& err_;
  XStructure structure_;
  Program pending_;
};

}  // namespace xpathlog
