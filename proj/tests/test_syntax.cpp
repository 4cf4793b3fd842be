#include "doctest.h"

#include <algorithm>
#include <functional>

#include "fixture_paths.hpp"
#include "sentplan/errors.hpp"
#include "sentplan/syntax.hpp"

using namespace sentplan;

namespace {

SynNode anchor(const Symbol& cat, const std::string& word) {
  SynNode n;
  n.category = cat;
  n.kind = NodeKind::Anchor;
  n.word = word;
  return n;
}

SynNode internal(const Symbol& cat, std::vector<Symbol> indices,
                 std::vector<SynNode> children) {
  SynNode n;
  n.category = cat;
  n.indices = std::move(indices);
  n.children = std::move(children);
  return n;
}

SynNode site(const Symbol& cat, std::vector<Symbol> indices) {
  SynNode n;
  n.category = cat;
  n.indices = std::move(indices);
  n.kind = NodeKind::SubstitutionSite;
  return n;
}

ElementaryTree the_book() {
  ElementaryTree t;
  t.kind = ElementaryTree::Kind::Initial;
  t.root = internal("NP", {"X"},
                    {anchor("Det", "the"),
                     internal("N", {"X"}, {anchor("N", "book")})});
  return t;
}

const LexicalEntry& entry(const std::vector<LexicalEntry>& lexicon,
                          const Symbol& name) {
  auto it = std::find_if(lexicon.begin(), lexicon.end(),
                         [&](const LexicalEntry& e) { return e.name == name; });
  REQUIRE(it != lexicon.end());
  return *it;
}

/// remove + from-the-hat + the-rabbit, straight from the fixture templates.
DerivedTree rabbit_derivation(const std::vector<LexicalEntry>& lexicon) {
  DerivedTree tree = start_tree("S", {});
  tree = substitute(tree, {}, entry(lexicon, "remove").tree, "remove");
  tree = adjoin(tree, {2}, entry(lexicon, "from-the-hat").tree, "from-the-hat");
  tree = substitute(tree, {2, 1, 2}, entry(lexicon, "the-rabbit").tree,
                    "the-rabbit");
  return tree;
}

}  // namespace

TEST_CASE("substitution fills a bare NP site") {
  DerivedTree tree = start_tree("NP", {});
  tree = substitute(tree, {}, the_book(), "the-book");
  CHECK(linearize(tree) == std::vector<std::string>{"the", "book"});
  CHECK(open_substitution_sites(tree).empty());
}

TEST_CASE("a single-node start tree exposes its root site") {
  DerivedTree tree = start_tree("NP", {"X"});
  auto sites = open_substitution_sites(tree);
  REQUIRE(sites.size() == 1);
  CHECK(sites[0].first.empty());
  CHECK(sites[0].second.category == "NP");
}

TEST_CASE("substitution at an internal node is rejected") {
  DerivedTree tree = start_tree("NP", {});
  tree = substitute(tree, {}, the_book(), "the-book");
  CHECK_THROWS_AS(substitute(tree, {}, the_book(), "the-book"), NotASite);
}

TEST_CASE("category, feature, and index-arity gates") {
  DerivedTree np_site = start_tree("VP", {});
  CHECK_THROWS_AS(substitute(np_site, {}, the_book(), "the-book"),
                  CategoryMismatch);

  DerivedTree featured = start_tree("NP", {});
  featured.root.features["def"] = "-";
  ElementaryTree definite = the_book();
  definite.root.features["def"] = "+";
  CHECK_THROWS_AS(substitute(featured, {}, definite, "the-book"),
                  FeatureClash);

  DerivedTree two_indices = start_tree("NP", {"A", "B"});
  CHECK_THROWS_AS(substitute(two_indices, {}, the_book(), "the-book"),
                  IndexArityMismatch);
}

TEST_CASE("the remove tree exposes exactly its object site") {
  auto lexicon = fixtures::lexicon("lexicon_rabbit.json");
  DerivedTree tree = start_tree("S", {});
  tree = substitute(tree, {}, entry(lexicon, "remove").tree, "remove");
  auto sites = open_substitution_sites(tree);
  REQUIRE(sites.size() == 1);
  CHECK(sites[0].second.category == "NP");
  CHECK(sites[0].second.indices == std::vector<Symbol>{"Removed"});
  CHECK_THROWS_AS(linearize(tree), IncompleteTree);
}

TEST_CASE("adjunction splices an auxiliary and keeps the yield order") {
  auto lexicon = fixtures::lexicon("lexicon_rabbit.json");
  DerivedTree tree = rabbit_derivation(lexicon);
  CHECK(linearize(tree) == std::vector<std::string>{"remove", "the", "rabbit",
                                                    "from", "the", "hat"});
}

TEST_CASE("adjunction sites are matched by category") {
  auto lexicon = fixtures::lexicon("lexicon_rabbit.json");
  DerivedTree tree = start_tree("S", {});
  tree = substitute(tree, {}, entry(lexicon, "remove").tree, "remove");
  CHECK(adjunction_sites(tree, "VP") == std::vector<GornPath>{{2}});
  CHECK(adjunction_sites(tree, "PP").empty());
}

TEST_CASE("stacked modifiers expose both N levels") {
  auto lexicon = fixtures::lexicon("lexicon_table.json");
  DerivedTree tree = start_tree("NP", {});
  tree = substitute(tree, {}, entry(lexicon, "the-table").tree, "the-table");
  CHECK(adjunction_sites(tree, "N") == std::vector<GornPath>{{2}});
  tree = adjoin(tree, {2}, entry(lexicon, "with-the-apple").tree,
                "with-the-apple");
  // both table N levels, plus the N inside the apple NP itself
  CHECK(adjunction_sites(tree, "N") ==
        std::vector<GornPath>{{2}, {2, 1}, {2, 2, 2, 2}});
  tree = adjoin(tree, {2}, entry(lexicon, "and-with-the-banana").tree,
                "and-with-the-banana");
  CHECK(linearize(tree) ==
        std::vector<std::string>{"the", "table", "with", "the", "apple", "and",
                                 "with", "the", "banana"});
}

TEST_CASE("adjunction cannot target leaves") {
  auto lexicon = fixtures::lexicon("lexicon_table.json");
  DerivedTree tree = start_tree("NP", {});
  tree = substitute(tree, {}, entry(lexicon, "the-table").tree, "the-table");
  // {2,1} is the word anchor under N
  CHECK_THROWS_AS(adjoin(tree, {2, 1}, entry(lexicon, "with-the-apple").tree,
                         "with-the-apple"),
                  CannotAdjoinAtLeaf);
}

TEST_CASE("combination never reorders the existing yield") {
  auto lexicon = fixtures::lexicon("lexicon_rabbit.json");
  DerivedTree before = start_tree("S", {});
  before = substitute(before, {}, entry(lexicon, "remove").tree, "remove");
  DerivedTree after =
      adjoin(before, {2}, entry(lexicon, "from-the-hat").tree, "from-the-hat");

  auto words = [](const DerivedTree& t) {
    // anchor sequence including silent anchors, without completeness checks
    std::vector<std::string> out;
    std::function<void(const SynNode&)> rec = [&](const SynNode& n) {
      if (n.kind == NodeKind::Anchor) out.push_back(n.word);
      for (const SynNode& ch : n.children) rec(ch);
    };
    rec(t.root);
    return out;
  };
  std::vector<std::string> host = words(before);
  std::vector<std::string> grown = words(after);
  auto it = grown.begin();
  for (const std::string& w : host) {
    it = std::find(it, grown.end(), w);
    CHECK(it != grown.end());
    if (it != grown.end()) ++it;
  }
}

TEST_CASE("provenance replay reproduces the tree") {
  auto lexicon = fixtures::lexicon("lexicon_rabbit.json");
  DerivedTree tree = rabbit_derivation(lexicon);
  DerivedTree again = replay(start_tree("S", {}), tree.provenance);
  CHECK(again.root == tree.root);
}

TEST_CASE("foot and index aliasing unify onto host variables") {
  auto lexicon = fixtures::lexicon("lexicon_rabbit.json");
  DerivedTree tree = start_tree("S", {});
  ElementaryTree remove = entry(lexicon, "remove").tree;
  tree = substitute(tree, {}, remove, "remove");

  // rename the auxiliary's variables as an instantiation would
  ElementaryTree aux = entry(lexicon, "from-the-hat").tree;
  std::function<void(SynNode&)> rename = [&](SynNode& n) {
    for (Symbol& v : n.indices) v += ".9";
    for (SynNode& ch : n.children) rename(ch);
  };
  rename(aux.root);

  DerivedTree grown = adjoin(tree, {2}, aux, "from-the-hat");
  const auto& aliases = grown.provenance.back().aliases;
  CHECK(aliases.at("Source.9") == "Source");
  CHECK(aliases.at("Time.9") == "Time");
  // spliced node carries the host's variables
  CHECK(grown.node_at({2})->indices ==
        std::vector<Symbol>{"Time", "Removing", "Source"});
  CHECK(grown.node_at({2, 1})->indices ==
        std::vector<Symbol>{"Time", "Removing", "Source"});
}

TEST_CASE("bracket notation shows categories, indices, and sites") {
  auto lexicon = fixtures::lexicon("lexicon_rabbit.json");
  DerivedTree tree = start_tree("S", {});
  tree = substitute(tree, {}, entry(lexicon, "remove").tree, "remove");
  std::string text = pretty(tree);
  CHECK(text.find("S:\u27e8Time,Removing\u27e9") != std::string::npos);
  CHECK(text.find("NP\u2193:\u27e8Removed\u27e9") != std::string::npos);
  CHECK(text.find("(V remove)") != std::string::npos);
  CHECK(text.find("(\u03b5)") != std::string::npos);
}

TEST_CASE("elementary tree invariants are validated") {
  ElementaryTree two_feet;
  two_feet.kind = ElementaryTree::Kind::Auxiliary;
  SynNode foot;
  foot.category = "N";
  foot.kind = NodeKind::FootNode;
  two_feet.root = internal("N", {}, {foot, foot, anchor("N", "x")});
  CHECK_THROWS_AS(two_feet.validate(), FootNodeViolation);

  ElementaryTree wrong_cat;
  wrong_cat.kind = ElementaryTree::Kind::Auxiliary;
  SynNode np_foot;
  np_foot.category = "NP";
  np_foot.kind = NodeKind::FootNode;
  wrong_cat.root = internal("N", {}, {np_foot, anchor("N", "x")});
  CHECK_THROWS_AS(wrong_cat.validate(), FootNodeViolation);

  ElementaryTree unanchored;
  unanchored.kind = ElementaryTree::Kind::Initial;
  unanchored.root = internal("NP", {}, {site("N", {})});
  CHECK_THROWS_AS(unanchored.validate(), Error);
}
