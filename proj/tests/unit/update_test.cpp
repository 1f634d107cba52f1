#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "xpathlog/errors.hpp"
#include "xpathlog/eval.hpp"
#include "xpathlog/syntax.hpp"
#include "xpathlog/update.hpp"
#include "xpathlog/xml_io.hpp"

using namespace xpathlog;
using namespace xpathlog::testing;

namespace {

NodeId by_label(const XStructure& s, const std::string& label) {
  for (NodeId id : s.node_ids()) {
    if (s.display(id) == label) return id;
  }
  ADD_FAILURE() << "no node labeled " << label;
  return kPseudoRoot;
}

std::vector<std::string> rendered(const InsertionPlan& p, const XStructure& s) {
  std::vector<std::string> out;
  for (const auto& a : p.atoms) out.push_back(to_string(a, s));
  return out;
}

XStructure linking() {
  XStructure s;
  load_xml_file(s, fixture("linking_before.xml"));
  assign_display_hints(s);
  return s;
}

// Fires `head` once for every answer of `body`, in answer order.
void fire(XStructure& s, const std::string& head, const std::string& body) {
  auto q = parse_query("?- " + body + ".");
  BindingSet r = answers(s, q);
  Atom h = parse_atom(head, true);
  for (const auto& t : r) apply_plan(s, instantiate_head(s, {h}, t));
}

GroundAtom child_at(NodeId host, std::optional<int> pos, const std::string& name, Value v) {
  GroundAtom g;
  g.host = host;
  g.axis = Axis::child;
  g.position = pos;
  g.name = name;
  g.value = std::move(v);
  return g;
}

}  // namespace

TEST(Plan, CreatingElements) {
  XStructure s = linking();
  NodeId munich = by_label(s, "munich");
  NodeId nurnberg = by_label(s, "nurnberg");
  Tuple beta = with_binding(with_binding({}, "X", Value::node(munich)), "Y", Value::node(nurnberg));
  InsertionPlan plan =
      instantiate_head(s, {parse_atom(R"(/country[@car_code->"BAV" and @capital->X and city->X and city->Y])", true)},
                       beta);
  EXPECT_EQ(rendered(plan, s), (std::vector<std::string>{
                                   "root[child::country->_X1]",
                                   R"(_X1[attribute::car_code->"BAV"])",
                                   "_X1[attribute::capital->munich]",
                                   "_X1[child::city->munich]",
                                   "_X1[child::city->nurnberg]",
                               }));
  EXPECT_EQ(plan.atoms[0].host.kind, PlanTerm::Kind::free_element);
  EXPECT_EQ(plan.atoms[0].result.kind, PlanTerm::Kind::local);
}

TEST(Plan, AddingAttributes) {
  XStructure s = linking();
  NodeId germany = s.roots()[0].value.node_id();
  InsertionPlan plan = instantiate_head(s, {parse_atom(R"(C[@datacode->"ch"])", true)}, {{"C", Value::node(germany)}});
  ASSERT_EQ(plan.atoms.size(), 1u);
  EXPECT_EQ(plan.atoms[0].axis, Axis::attribute);
  EXPECT_EQ(plan.atoms[0].host.value, Value::node(germany));
  EXPECT_EQ(plan.atoms[0].result.value, Value::string("ch"));
}

TEST(Plan, TextChildrenBindLocalFirst) {
  XStructure s = linking();
  NodeId germany = s.roots()[0].value.node_id();
  InsertionPlan plan =
      instantiate_head(s, {parse_atom(R"(C/name[text()->"Bavaria"])", true)}, {{"C", Value::node(germany)}});
  EXPECT_EQ(rendered(plan, s),
            (std::vector<std::string>{"germany[child::name->_X1]", R"(_X1[child::text()->"Bavaria"])"}));
}

TEST(Plan, UnboundHeadVariable) {
  XStructure s = linking();
  EXPECT_THROW(instantiate_head(s, {parse_atom("C[@a->V]", true)}, {{"C", Value::node(1)}}), UnboundHeadVariable);
}

TEST(Plan, NodeEqualityIsUnsupported) {
  XStructure s = linking();
  NodeId germany = s.roots()[0].value.node_id();
  NodeId munich = by_label(s, "munich");
  Tuple beta = with_binding(with_binding({}, "A", Value::node(germany)), "B", Value::node(munich));
  Atom eq = parse_query("?- A = B.")[0].atom;
  EXPECT_THROW(apply_plan(s, instantiate_head(s, {eq}, beta)), UnsupportedFusion);
}

TEST(Apply, CreatedElementIsRootAndLinksCities) {
  XStructure s = linking();
  fire(s, R"(/country[@car_code->"BAV" and @capital->X and city->X and city->Y])",
       R"(//country[@car_code="D"]/city->X[name/text()="Munich"], //country[@car_code="D"]/city->Y[name/text()="Nurnberg"])");
  ASSERT_EQ(s.roots().size(), 2u);
  NodeId bavaria = s.roots()[1].value.node_id();
  NodeId germany = s.roots()[0].value.node_id();
  EXPECT_EQ(s.tag(bavaria), "country");
  NodeId munich = by_label(s, "munich");
  NodeId nurnberg = by_label(s, "nurnberg");
  EXPECT_EQ(s.parents(munich), (std::vector<NodeId>{germany, bavaria}));
  EXPECT_EQ(s.parents(nurnberg), (std::vector<NodeId>{germany, bavaria}));
  EXPECT_EQ(s.children(bavaria), (std::vector<Member>{{Value::node(munich), "city"}, {Value::node(nurnberg), "city"}}));
  // Linking adds edges only; the cities keep their own content.
  EXPECT_EQ(s.children(munich).size(), 2u);
}

TEST(Apply, AddingAttributesRule) {
  const char* xml =
      "<!DOCTYPE m [<!ATTLIST country car_code ID #REQUIRED memberships IDREFS #IMPLIED>"
      "<!ATTLIST organization id ID #REQUIRED>]>"
      "<m><country car_code=\"CH\" memberships=\"org-efta org-un\"/>"
      "<organization id=\"org-efta\"><abbrev>EFTA</abbrev></organization>"
      "<organization id=\"org-un\"><abbrev>UN</abbrev></organization>"
      "<organization id=\"org-eu\"><abbrev>EU</abbrev></organization></m>";
  XStructure s;
  LoadReport r = load_xml(s, xml, "m.xml");
  NodeId ch = s.children(r.root)[0].value.node_id();
  NodeId eu = s.children(r.root)[3].value.node_id();
  fire(s, R"(C[@datacode->"ch"])", R"(//country->C[@car_code="CH"], //organization->O[abbrev/text()->"EU"])");
  fire(s, "C[@memberships->O]", R"(//country->C[@car_code="CH"], //organization->O[abbrev/text()->"EU"])");
  const auto& attrs = s.attributes(ch);
  EXPECT_NE(std::find(attrs.begin(), attrs.end(), Member{Value::string("ch"), "datacode"}), attrs.end());
  std::vector<Value> memberships;
  for (const auto& a : attrs) {
    if (a.name == "memberships") memberships.push_back(a.value);
  }
  ASSERT_EQ(memberships.size(), 3u);
  EXPECT_EQ(memberships.back(), Value::node(eu));
}

TEST(Apply, AttributesAreSetsChildrenAppend) {
  XStructure s = linking();
  NodeId germany = s.roots()[0].value.node_id();
  Tuple beta = {{"C", Value::node(germany)}};
  InsertionPlan attr = instantiate_head(s, {parse_atom(R"(C[@datacode->"de"])", true)}, beta);
  apply_plan(s, attr);
  std::size_t attrs = s.attributes(germany).size();
  apply_plan(s, attr);
  EXPECT_EQ(s.attributes(germany).size(), attrs);

  NodeId munich = by_label(s, "munich");
  Tuple link = with_binding(beta, "X", Value::node(munich));
  InsertionPlan child = instantiate_head(s, {parse_atom("C[city->X]", true)}, link);
  std::size_t kids = s.children(germany).size();
  apply_plan(s, child);
  apply_plan(s, child);
  EXPECT_EQ(s.children(germany).size(), kids + 2);
}

TEST(Apply, NameVariablesCreateTypedChildren) {
  XStructure s;
  NodeId result = s.alloc_node("result", "result");
  s.add_root(result);
  Tuple beta = with_binding(with_binding({}, "R", Value::node(result)), "T", Value::name("river"));
  beta = with_binding(beta, "N", Value::string("Mississippi"));
  apply_plan(s, instantiate_head(s, {parse_atom("R/T[@name->N]", true)}, beta));
  ASSERT_EQ(s.children(result).size(), 1u);
  EXPECT_EQ(s.children(result)[0].name, "river");
  NodeId river = s.children(result)[0].value.node_id();
  EXPECT_EQ(s.tag(river), "river");
  EXPECT_EQ(s.attributes(river), (std::vector<Member>{{Value::string("Mississippi"), "name"}}));
}

TEST(Apply, TextChildOfNodeValueUsesLiteral) {
  XStructure s = linking();
  NodeId germany = s.roots()[0].value.node_id();
  NodeId munich_name = s.children(by_label(s, "munich"))[0].value.node_id();
  Tuple beta = with_binding({{"C", Value::node(germany)}}, "V", Value::node(munich_name));
  apply_plan(s, instantiate_head(s, {parse_atom("C/label[text()->V]", true)}, beta));
  NodeId label = s.children(germany).back().value.node_id();
  EXPECT_EQ(s.children(label), (std::vector<Member>{{Value::string("Munich"), std::string(kTextName)}}));
}

TEST(Extend, EmptyBatchChangesNothing) {
  XStructure s = linking();
  std::string before = canonical_form(s);
  ExtendReport r = extend(s, {});
  EXPECT_EQ(canonical_form(s), before);
  EXPECT_EQ(r.child_edges + r.attributes + r.facts, 0u);
}

TEST(Extend, UnknownHost) {
  XStructure s = linking();
  EXPECT_THROW(extend(s, {child_at(999, std::nullopt, "a", Value::integer(1))}), HostUnknown);
}

TEST(Extend, NegativeIndex) {
  XStructure s = linking();
  NodeId germany = s.roots()[0].value.node_id();
  EXPECT_THROW(extend(s, {child_at(germany, -1, "a", Value::integer(1))}), IndexOutOfRange);
}

TEST(Extend, PositionalCollisionKeepsPlanOrder) {
  XStructure s;
  NodeId x = s.alloc_node(std::nullopt, "x");
  std::vector<NodeId> c;
  for (int i = 0; i < 3; ++i) {
    c.push_back(s.alloc_node(std::nullopt, "c"));
    s.append_child(x, "c", Value::node(c.back()));
  }
  NodeId p = s.alloc_node(std::nullopt, "a");
  NodeId q = s.alloc_node(std::nullopt, "b");
  extend(s, {child_at(x, 2, "a", Value::node(p)), child_at(x, 2, "b", Value::node(q))});
  std::vector<Member> expected = {{Value::node(c[0]), "c"}, {Value::node(c[1]), "c"}, {Value::node(p), "a"},
                                  {Value::node(q), "b"},    {Value::node(c[2]), "c"}};
  EXPECT_EQ(s.children(x), expected);
}

TEST(Extend, PositionZeroAndPastEnd) {
  XStructure s;
  NodeId x = s.alloc_node(std::nullopt, "x");
  NodeId c = s.alloc_node(std::nullopt, "c");
  s.append_child(x, "c", Value::node(c));
  extend(s, {child_at(x, 9, "t", Value::integer(9)), child_at(x, 0, "t", Value::integer(0))});
  EXPECT_EQ(s.children(x), (std::vector<Member>{{Value::integer(0), "t"}, {Value::node(c), "c"}, {Value::integer(9), "t"}}));
}

TEST(Extend, PositionsReferToOriginalLists) {
  Rng rng(61);
  for (int round = 0; round < 300; ++round) {
    XStructure s;
    NodeId x = s.alloc_node(std::nullopt, "x");
    int n = rng.below(6);
    std::vector<Member> original;
    for (int i = 0; i < n; ++i) {
      Member m{Value::integer(100 + i), "o"};
      s.append_child(x, m.name, m.value);
      original.push_back(m);
    }
    int k = 1 + rng.below(6);
    std::vector<GroundAtom> batch;
    // Splice oracle: one bucket per gap of the original list.
    std::vector<std::vector<Member>> gaps(static_cast<std::size_t>(n + 1));
    for (int i = 0; i < k; ++i) {
      Member m{Value::integer(i), "i"};
      std::optional<int> pos;
      if (rng.chance(0.7)) pos = rng.below(n + 3);
      batch.push_back(child_at(x, pos, m.name, m.value));
      int gap = pos ? std::min(*pos, n) : n;
      gaps[static_cast<std::size_t>(gap)].push_back(m);
    }
    std::vector<Member> expected = gaps[0];
    for (int i = 0; i < n; ++i) {
      expected.push_back(original[static_cast<std::size_t>(i)]);
      const auto& g = gaps[static_cast<std::size_t>(i + 1)];
      expected.insert(expected.end(), g.begin(), g.end());
    }
    extend(s, batch);
    ASSERT_EQ(s.children(x), expected);
  }
}

TEST(Extend, SiblingInsertion) {
  XStructure s;
  NodeId p = s.alloc_node(std::nullopt, "p");
  std::vector<NodeId> c;
  for (int i = 0; i < 3; ++i) {
    c.push_back(s.alloc_node(std::nullopt, "c"));
    s.append_child(p, "c", Value::node(c.back()));
  }
  GroundAtom after;
  after.host = c[0];
  after.axis = Axis::following_sibling;
  after.position = 1;
  after.name = "f";
  after.value = Value::integer(1);
  GroundAtom before = after;
  before.host = c[2];
  before.axis = Axis::preceding_sibling;
  before.name = "b";
  before.value = Value::integer(2);
  extend(s, {after, before});
  EXPECT_EQ(s.children(p), (std::vector<Member>{{Value::node(c[0]), "c"},
                                                {Value::integer(1), "f"},
                                                {Value::node(c[1]), "c"},
                                                {Value::integer(2), "b"},
                                                {Value::node(c[2]), "c"}}));
}

TEST(Extend, SiblingOfRootlessNode) {
  XStructure s;
  NodeId lone = s.alloc_node(std::nullopt, "x");
  GroundAtom g;
  g.host = lone;
  g.axis = Axis::following_sibling;
  g.name = "y";
  g.value = Value::integer(1);
  EXPECT_THROW(extend(s, {g}), HostUnknown);
}

// Every atom of a ground definite atom's atomization holds after
// inserting the atom, and reads taken before the insertion stay
// sublists afterwards.
TEST(Extend, InsertionIsVisibleAndMonotone) {
  Rng rng(62);
  StructureShape shape;
  shape.max_nodes = 6;
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    XStructure s = random_structure(rng, shape);
    name_nodes(s);
    std::string text = random_ground_atom(rng, s);
    Atom a = parse_atom(text, true);
    ExprShape ex;
    ex.max_steps = 3;
    ex.variables = false;
    ex.context_functions = false;
    ex.negation = false;
    ex.dereference = false;
    auto probe = parse_query("?- " + random_expression(rng, ex) + ".");
    std::vector<Value> before = eval_reference(s, probe[0].atom.expr, {});

    XStructure next = s;
    apply_plan(next, instantiate_head(next, {a}, {}));
    std::vector<Literal> q = {{false, a}};
    ASSERT_FALSE(answers(next, q).empty()) << text;

    // Linking can close a cycle; descendant probes then have no result.
    std::vector<Value> after;
    try {
      after = eval_reference(next, probe[0].atom.expr, {});
    } catch (const CyclicDescent&) {
      continue;
    }
    auto it = after.begin();
    for (const auto& v : before) {
      it = std::find(it, after.end(), v);
      ASSERT_NE(it, after.end()) << text << " broke " << query_to_string(probe);
      ++it;
    }
    ++checked;
  }
  EXPECT_GT(checked, 250);
}
