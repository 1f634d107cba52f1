#include "xpathlog/xml_io.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "xpathlog/errors.hpp"

namespace xpathlog {

namespace {

std::string trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::optional<AttrType> type_from_name(std::string_view t) {
  if (t == "CDATA") return AttrType::cdata;
  if (t == "ID") return AttrType::id;
  if (t == "IDREF") return AttrType::idref;
  if (t == "IDREFS") return AttrType::idrefs;
  if (t == "NMTOKENS") return AttrType::nmtokens;
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentUnavailable(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct PendingAttr {
  std::string name;
  std::string raw;
  AttrType type = AttrType::cdata;
};

struct Loader {
  XStructure& s;
  AttrTypes declared;
  const AttrTypes& overrides;

  std::vector<NodeId> stack;
  std::string text;
  NodeId root = kPseudoRoot;
  std::vector<std::pair<NodeId, std::vector<PendingAttr>>> pending;
  std::map<std::string, NodeId> ids;

  AttrType type_of(const std::string& elem, const std::string& attr) const {
    auto key = std::make_pair(elem, attr);
    if (auto it = overrides.find(key); it != overrides.end()) return it->second;
    if (auto it = declared.find(key); it != declared.end()) return it->second;
    return AttrType::cdata;
  }

  void flush_text() {
    std::string t = trim(text);
    text.clear();
    if (t.empty() || stack.empty()) return;
    s.append_child(stack.back(), std::string(kTextName), parse_literal(t));
  }

  void start(const XML_Char* name, const XML_Char** atts) {
    flush_text();
    NodeId n = s.alloc_node(std::nullopt, name);
    if (stack.empty()) {
      root = n;
    } else {
      s.append_child(stack.back(), name, Value::node(n));
    }
    std::vector<PendingAttr> attrs;
    for (std::size_t i = 0; atts[i]; i += 2) {
      PendingAttr a{atts[i], atts[i + 1], type_of(name, atts[i])};
      if (a.type == AttrType::id) {
        s.set_id_value(n, a.raw);
        ids.emplace(a.raw, n);
      }
      attrs.push_back(std::move(a));
    }
    pending.emplace_back(n, std::move(attrs));
    stack.push_back(n);
  }

  void end() {
    flush_text();
    stack.pop_back();
  }
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** atts) {
  static_cast<Loader*>(data)->start(name, atts);
}

void XMLCALL on_end(void* data, const XML_Char*) { static_cast<Loader*>(data)->end(); }

void XMLCALL on_text(void* data, const XML_Char* s, int len) {
  static_cast<Loader*>(data)->text.append(s, static_cast<std::size_t>(len));
}

// Comments and processing instructions end a character-data run.
void XMLCALL on_break(void* data, const XML_Char*) { static_cast<Loader*>(data)->flush_text(); }
void XMLCALL on_pi(void* data, const XML_Char*, const XML_Char*) { static_cast<Loader*>(data)->flush_text(); }

void XMLCALL on_attlist(void* data, const XML_Char* elem, const XML_Char* attr, const XML_Char* type,
                        const XML_Char*, int) {
  if (auto t = type_from_name(type)) static_cast<Loader*>(data)->declared[{elem, attr}] = *t;
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return c == ' ' ? '-' : static_cast<char>(std::tolower(c));
  });
  return s;
}

}  // namespace

// Display labels from the text of a `name` subelement, else a `name`
// attribute. A label already
// taken is qualified by the element name, then numbered.
void assign_display_hints(XStructure& s) {
  std::unordered_set<std::string> used;
  for (NodeId id : s.node_ids()) {
    if (s.hint(id)) used.insert(*s.hint(id));
  }
  for (NodeId id : s.node_ids()) {
    if (s.hint(id)) continue;
    std::optional<std::string> label;
    for (const auto& c : s.children(id)) {
      if (c.name != "name" || !c.value.is_node()) continue;
      Value lit = s.literal_value(c.value);
      if (auto t = lit.text(); !lit.is_node() && t && !t->empty()) label = lowercase(*t);
      break;
    }
    for (const auto& a : s.attributes(id)) {
      if (label || a.name != "name" || a.value.is_node()) continue;
      if (auto t = a.value.text(); t && !t->empty()) label = lowercase(*t);
    }
    if (!label) continue;
    std::string candidate = *label;
    if (used.count(candidate)) candidate = s.tag(id) + "-" + *label;
    for (int k = 2; used.count(candidate); ++k) candidate = s.tag(id) + "-" + *label + "-" + std::to_string(k);
    used.insert(candidate);
    s.set_hint(id, candidate);
  }
}

AttrTypes parse_attr_types(const std::string& text) {
  AttrTypes out;
  std::istringstream in(text);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tok = split_tokens(line);
    if (tok.empty()) continue;
    std::optional<AttrType> t = tok.size() == 3 ? type_from_name(tok[2]) : std::nullopt;
    if (!t) throw MalformedXml("attribute types line " + std::to_string(lineno) + ": expected `element attribute TYPE`");
    out[{tok[0], tok[1]}] = *t;
  }
  return out;
}

AttrTypes load_attr_types(const std::string& path) { return parse_attr_types(read_file(path)); }

LoadReport load_xml(XStructure& s, const std::string& text, const std::string& source, const LoadOptions& opts) {
  // Work on a copy so a malformed document leaves `s` untouched.
  XStructure work = s;
  Loader ld{work, {}, opts.attr_types, {}, {}, kPseudoRoot, {}, {}};

  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(XML_ParserCreate(nullptr),
                                                                                       &XML_ParserFree);
  XML_SetUserData(parser.get(), &ld);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  XML_SetCommentHandler(parser.get(), on_break);
  XML_SetProcessingInstructionHandler(parser.get(), on_pi);
  XML_SetAttlistDeclHandler(parser.get(), on_attlist);
  if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE) == XML_STATUS_ERROR) {
    throw MalformedXml(source + ":" + std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                       XML_ErrorString(XML_GetErrorCode(parser.get())));
  }

  // References may point forward, so they are resolved once all IDs are known.
  LoadReport rep;
  auto resolve = [&](const std::string& token) {
    if (auto it = ld.ids.find(token); it != ld.ids.end()) return Value::node(it->second);
    rep.dangling_idrefs.push_back(token);
    return parse_literal(token);
  };
  for (const auto& [node, attrs] : ld.pending) {
    for (const auto& a : attrs) {
      switch (a.type) {
        case AttrType::cdata:
        case AttrType::id:
          work.add_attribute(node, a.name, parse_literal(a.raw));
          break;
        case AttrType::idref:
          work.add_attribute(node, a.name, resolve(trim(a.raw)));
          break;
        case AttrType::idrefs:
          for (const auto& t : split_tokens(a.raw)) work.add_attribute(node, a.name, resolve(t));
          break;
        case AttrType::nmtokens:
          for (const auto& t : split_tokens(a.raw)) work.add_attribute(node, a.name, parse_literal(t));
          break;
      }
    }
  }

  work.add_root(ld.root);
  work.register_document(source, ld.root);
  assign_display_hints(work);
  s = std::move(work);
  rep.root = ld.root;
  return rep;
}

LoadReport load_xml_file(XStructure& s, const std::string& path, const LoadOptions& opts) {
  return load_xml(s, read_file(path), path, opts);
}

NodeId document_root(XStructure& s, const std::string& source, const LoadOptions& opts) {
  if (auto r = s.document(source)) return *r;
  if (!std::filesystem::is_regular_file(source)) throw DocumentUnavailable(source);
  return load_xml_file(s, source, opts).root;
}

namespace {

std::string escape(const std::string& in) {
  std::string out;
  out.reserve(in.size());
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

class ViewWriter {
 public:
  ViewWriter(const XStructure& s, const std::optional<std::set<std::string>>& names) : s_(s), names_(names) {}

  std::string run(NodeId root) {
    std::vector<NodeId> path;
    number(root, path);
    const std::string& tag = s_.tag(root);
    element(tag.empty() ? "node" : tag, root, 0, path);
    return out_.str();
  }

 private:
  bool keep(const std::string& name) const { return !names_ || names_->count(name); }

  // First pass: synthetic ids for reference targets lacking one, in
  // depth-first order of the referring attributes.
  void number(NodeId n, std::vector<NodeId>& path) {
    if (std::find(path.begin(), path.end(), n) != path.end()) throw CyclicView("cycle through " + s_.display(n));
    path.push_back(n);
    for (const auto& a : s_.attributes(n)) {
      if (!keep(a.name) || !a.value.is_node()) continue;
      NodeId t = a.value.node_id();
      if (!s_.id_value(t) && !synthetic_.count(t)) synthetic_[t] = "n" + std::to_string(synthetic_.size() + 1);
    }
    for (const auto& c : s_.children(n)) {
      if (keep(c.name) && c.value.is_node()) number(c.value.node_id(), path);
    }
    path.pop_back();
  }

  std::string ref_text(const Value& v) const {
    if (!v.is_node()) return literal_text(s_.literal_value(v));
    if (auto id = s_.id_value(v.node_id())) return *id;
    return synthetic_.at(v.node_id());
  }

  void element(const std::string& name, NodeId n, int depth, std::vector<NodeId>& path) {
    path.push_back(n);
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out_ << indent << '<' << name;
    if (auto it = synthetic_.find(n); it != synthetic_.end()) out_ << " id=\"" << it->second << '"';

    // Repeated attribute names are joined into one token list.
    std::vector<std::pair<std::string, std::string>> attrs;
    for (const auto& a : s_.attributes(n)) {
      if (!keep(a.name)) continue;
      auto it = std::find_if(attrs.begin(), attrs.end(), [&](const auto& p) { return p.first == a.name; });
      std::string v = ref_text(a.value);
      if (it == attrs.end()) {
        attrs.emplace_back(a.name, v);
      } else {
        it->second += " " + v;
      }
    }
    for (const auto& [k, v] : attrs) out_ << ' ' << k << "=\"" << escape(v) << '"';

    std::vector<const Member*> kids;
    bool only_text = true;
    for (const auto& c : s_.children(n)) {
      if (!keep(c.name)) continue;
      kids.push_back(&c);
      if (c.name != kTextName) only_text = false;
    }
    if (kids.empty()) {
      out_ << "/>\n";
    } else if (only_text) {
      out_ << '>';
      for (const auto* c : kids) out_ << escape(literal_text(c->value));
      out_ << "</" << name << ">\n";
    } else {
      out_ << ">\n";
      for (const auto* c : kids) {
        if (c->name == kTextName || !c->value.is_node()) {
          std::string body = escape(literal_text(s_.literal_value(c->value)));
          if (c->name == kTextName) {
            out_ << indent << "  " << body << '\n';
          } else {
            out_ << indent << "  <" << c->name << '>' << body << "</" << c->name << ">\n";
          }
          continue;
        }
        element(c->name, c->value.node_id(), depth + 1, path);
      }
      out_ << indent << "</" << name << ">\n";
    }
    path.pop_back();
  }

  const XStructure& s_;
  const std::optional<std::set<std::string>>& names_;
  std::map<NodeId, std::string> synthetic_;
  std::ostringstream out_;
};

}  // namespace

std::string serialize_view(const XStructure& s, NodeId root, const std::optional<std::set<std::string>>& names) {
  if (!s.has_node(root)) throw NodeUnknown("node " + std::to_string(root));
  return ViewWriter(s, names).run(root);
}

}  // namespace xpathlog
