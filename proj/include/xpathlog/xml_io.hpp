#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xpathlog/xstructure.hpp"

namespace xpathlog {

enum class AttrType { cdata, id, idref, idrefs, nmtokens };

// (element, attribute) -> declared type.
using AttrTypes = std::map<std::pair<std::string, std::string>, AttrType>;

// Parses the sidecar format: one `element attribute TYPE` per line, `#`
// comments. TYPE is one of CDATA, ID, IDREF, IDREFS, NMTOKENS.
AttrTypes parse_attr_types(const std::string& text);
AttrTypes load_attr_types(const std::string& path);

struct LoadOptions {
  AttrTypes attr_types;  // merged with (and overriding) DTD declarations
};

struct LoadReport {
  NodeId root = kPseudoRoot;
  std::vector<std::string> dangling_idrefs;
};

// Adds the document to `s`: one node per element, text runs as `text()`
// children, attributes in document order, references resolved to nodes.
LoadReport load_xml(XStructure& s, const std::string& text, const std::string& source, const LoadOptions& opts = {});
LoadReport load_xml_file(XStructure& s, const std::string& path, const LoadOptions& opts = {});

// Registered root for `source`, loading a local file on first use.
NodeId document_root(XStructure& s, const std::string& source, const LoadOptions& opts = {});

// Labels unlabeled nodes after the text of their `name` subelement or
// `name` attribute. Taken labels are qualified by the element name.
void assign_display_hints(XStructure& s);

// XML text of the tree under `root`. When `names` is given only child
// edges and attributes with those names are kept (`text()` selects text).
std::string serialize_view(const XStructure& s, NodeId root, const std::optional<std::set<std::string>>& names = std::nullopt);

}  // namespace xpathlog
