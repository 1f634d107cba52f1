#include "xpathlog/session.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xpathlog/atomizer.hpp"
#include "xpathlog/errors.hpp"
#include "xpathlog/eval.hpp"

namespace xpathlog {

namespace fs = std::filesystem;

namespace {

class CommandError : public Error {
 public:
  explicit CommandError(const std::string& message) : Error("CommandError", message) {}
};

bool visible(const std::string& var) { return !var.empty() && var[0] != '_' && var[0] != kInternalPrefix; }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string xml_escape(const std::string& in) {
  std::string out;
  for (char c : in) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DocumentUnavailable(p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  if (path.is_absolute() || base.empty()) return path;
  return base / path;
}

// A statement is complete once its final token is a terminating '.'.
bool complete(const std::string& buf) {
  std::string t = buf;
  // Drop `%` comments line by line, ignoring '%' inside strings.
  std::string cleaned;
  bool in_string = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    char c = t[i];
    if (c == '"') in_string = !in_string;
    if (c == '%' && !in_string) {
      while (i < t.size() && t[i] != '\n') ++i;
      cleaned += '\n';
      continue;
    }
    cleaned += c;
  }
  while (!cleaned.empty() && std::isspace(static_cast<unsigned char>(cleaned.back()))) cleaned.pop_back();
  return !in_string && !cleaned.empty() && cleaned.back() == '.';
}

}  // namespace

Session::Session(SessionOptions opts, std::ostream& out, std::ostream& err)
    : opts_(std::move(opts)), out_(out), err_(err) {
  pending_.strata.emplace_back();
}

void Session::execute(std::string_view text, const fs::path& base) {
  for (const auto& st : parse_script(text)) statement(st, base);
  flush_rules(base);
}

void Session::execute_file(const fs::path& path) { execute(read_text(path), path.parent_path()); }

void Session::statement(const Statement& st, const fs::path& base) {
  switch (st.kind) {
    case Statement::Kind::rule:
      pending_.strata.back().push_back(st.rule);
      break;
    case Statement::Kind::stratum_break:
      if (!pending_.strata.back().empty()) pending_.strata.emplace_back();
      break;
    case Statement::Kind::query:
      flush_rules(base);
      query(st.query, base);
      break;
    case Statement::Kind::command:
      flush_rules(base);
      command(st.command, base);
      break;
  }
}

// Relative sources resolve against the script directory but register
// under the name used in the program.
void Session::preload_documents(const std::vector<Literal>& body, const fs::path& base) {
  for (const auto& src : document_sources(body)) {
    if (structure_.document(src)) continue;
    fs::path path = resolve(base, src);
    if (!fs::is_regular_file(path)) throw DocumentUnavailable(src);
    load_xml(structure_, read_text(path), src, opts_.load);
  }
}

void Session::flush_rules(const fs::path& base) {
  Program p;
  for (auto& stratum : pending_.strata) {
    if (!stratum.empty()) p.strata.push_back(std::move(stratum));
  }
  pending_.strata.assign(1, {});
  if (p.strata.empty()) return;

  XStructure before = structure_;
  try {
    for (const auto& stratum : p.strata) {
      for (const auto& r : stratum) preload_documents(r.body, base);
    }
    TraceSink trace;
    if (opts_.trace) trace = [this](const std::string& line) { err_ << line << '\n'; };
    structure_ = run_program(structure_, p, opts_.limits, trace);
    assign_display_hints(structure_);
  } catch (...) {
    structure_ = std::move(before);
    throw;
  }
}

std::string Session::show(const Value& v) const {
  if (v.is_node()) return structure_.display(v.node_id());
  if (v.is_string()) return quote(v.as_string());
  return literal_text(v);
}

void Session::query(const std::vector<Literal>& q, const fs::path& base) {
  check_safety(q);
  XStructure before = structure_;
  try {
    preload_documents(q, base);
  } catch (...) {
    structure_ = std::move(before);
    throw;
  }
  BindingSet result = answers(structure_, q);

  std::vector<std::string> vars;
  for (const auto& v : variables_of(q)) {
    if (visible(v)) vars.push_back(v);
  }

  if (vars.empty() || result.empty()) {
    bool truth = !result.empty();
    if (opts_.output == OutputMode::xml) {
      out_ << (truth ? "<true/>" : "<false/>") << '\n';
    } else {
      out_ << (truth ? "true" : "false") << '\n';
    }
    return;
  }

  std::vector<std::string> lines;
  for (const auto& t : result) {
    std::string line;
    for (const auto& var : vars) {
      const Value* v = lookup(t, var);
      if (!v) continue;
      if (opts_.output == OutputMode::xml) {
        line += " " + var + "=\"" + xml_escape(v->is_node() ? structure_.display(v->node_id()) : literal_text(*v)) + '"';
      } else {
        if (!line.empty()) line += "  ";
        line += var + "/" + show(*v);
      }
    }
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());

  if (opts_.output == OutputMode::xml) {
    out_ << "<answers>\n";
    for (const auto& l : lines) out_ << "  <answer" << l << "/>\n";
    out_ << "</answers>\n";
  } else {
    for (const auto& l : lines) out_ << l << '\n';
  }
}

NodeId Session::export_root(const std::string& target) const {
  if (auto c = structure_.constant(target)) return *c;
  for (NodeId id : structure_.node_ids()) {
    if (structure_.display(id) == target) return id;
  }
  throw HostUnknown("no constant or node named " + target);
}

void Session::command(const Command& c, const fs::path& base) {
  const auto& a = c.args;
  if (c.name == "load") {
    if (a.size() != 3 || a[1] != "as") throw CommandError("usage: @load <path> as <constant>.");
    XStructure work = structure_;
    fs::path path = resolve(base, a[0]);
    LoadReport rep = load_xml(work, read_text(path), a[0], opts_.load);
    for (const auto& d : rep.dangling_idrefs) err_ << "warning: dangling reference " << d << '\n';
    work.bind_constant(a[2], rep.root);
    structure_ = std::move(work);
  } else if (c.name == "run") {
    if (a.size() != 1) throw CommandError("usage: @run <path>.");
    execute_file(resolve(base, a[0]));
  } else if (c.name == "export") {
    auto to = std::find(a.begin(), a.end(), "to");
    if (a.empty() || to == a.begin() || to + 2 != a.end()) {
      throw CommandError("usage: @export <constant> [names...] to <path>.");
    }
    std::optional<std::set<std::string>> names;
    if (to - a.begin() > 1) names = std::set<std::string>(a.begin() + 1, to);
    std::string xml = serialize_view(structure_, export_root(a[0]), names);
    if (*(to + 1) == "-") {
      out_ << xml;
    } else {
      std::ofstream f(resolve(base, *(to + 1)), std::ios::binary);
      if (!f) throw CommandError("cannot write " + *(to + 1));
      f << xml;
    }
  } else if (c.name == "explain") {
    Atom atom = parse_atom(c.raw, true);
    Atomization flat = atomize(atom);
    std::string line;
    for (const auto& f : flat.atoms) {
      if (!line.empty()) line += ", ";
      line += to_string(f);
    }
    out_ << line << '\n';
  } else if (c.name == "stats") {
    const auto& s = structure_;
    out_ << "nodes=" << s.node_count() << " edges=" << s.edge_count() << " roots=" << s.roots().size()
         << " facts=" << s.facts().size() << " constants=" << s.constants().size()
         << " documents=" << s.documents().size() << '\n';
  } else {
    throw CommandError("unknown command @" + c.name);
  }
}

int Session::run_files(const std::vector<std::string>& paths) {
  try {
    for (const auto& p : paths) execute_file(p);
    return 0;
  } catch (const Error& e) {
    err_ << "error: " << e.what() << '\n';
    return e.user_error() ? 1 : 2;
  } catch (const std::exception& e) {
    err_ << "internal error: " << e.what() << '\n';
    return 2;
  }
}

int Session::repl(std::istream& in, bool prompt) {
  std::string buf, line;
  int status = 0;
  if (prompt) out_ << "?- " << std::flush;
  while (std::getline(in, line)) {
    buf += line;
    buf += '\n';
    if (!complete(buf)) continue;
    try {
      execute(buf, fs::current_path());
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      status = e.user_error() ? 1 : 2;
    } catch (const std::exception& e) {
      err_ << "internal error: " << e.what() << '\n';
      status = 2;
    }
    buf.clear();
    if (prompt) out_ << "?- " << std::flush;
  }
  if (!buf.empty() && buf.find_first_not_of(" \t\r\n") != std::string::npos) {
    err_ << "error: incomplete statement at end of input\n";
    status = 1;
  }
  return status;
}

}  // namespace xpathlog
