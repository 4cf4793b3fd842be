#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sentplan/term.hpp"

namespace sentplan {

enum class NodeKind { Internal, SubstitutionSite, FootNode, Anchor };

/// Gorn path: root is the empty path, children are numbered from 1.
using GornPath = std::vector<int>;

std::string gorn_str(const GornPath& path);

/// One node of an elementary or derived tree. Features are flat atomic maps;
/// compatibility is equality-or-absent.
struct SynNode {
  Symbol category;
  std::vector<Symbol> indices;          // referential index variables
  std::map<Symbol, Symbol> features;    // e.g. def=+, form=imp
  NodeKind kind = NodeKind::Internal;
  std::string word;                     // anchors only; "" is the silent anchor
  std::vector<SynNode> children;

  bool operator==(const SynNode& other) const;
};

struct ElementaryTree {
  enum class Kind { Initial, Auxiliary };
  Kind kind = Kind::Initial;
  SynNode root;

  /// Anchor words left to right.
  std::vector<std::string> anchors() const;
  /// Path to the foot node of an auxiliary tree.
  GornPath foot_path() const;
  /// Checks leaf/foot/anchor invariants; throws FootNodeViolation / Error.
  void validate() const;

  bool operator==(const ElementaryTree&) const = default;
};

struct DerivationStep {
  enum class Op { Substitute, Adjoin };
  Symbol entry;
  Op op = Op::Substitute;
  GornPath address;
  ElementaryTree used;                 // as instantiated when the step applied
  std::map<Symbol, Symbol> aliases;    // filler variable -> host variable

  bool operator==(const DerivationStep&) const = default;
};

const char* op_name(DerivationStep::Op op);

/// Immutable derived tree; combination operations return fresh values.
struct DerivedTree {
  SynNode root;
  std::vector<DerivationStep> provenance;

  const SynNode* node_at(const GornPath& path) const;
};

/// Single-node start tree: a substitution site of the given category.
DerivedTree start_tree(const Symbol& category, std::vector<Symbol> indices);

/// Fill a substitution site with an initial tree. Site indices unify
/// position-wise with the filler root's (an empty site index list unifies
/// with anything); filler variables are renamed onto host variables and the
/// renaming is recorded in the appended DerivationStep.
/// Throws NotASite, CategoryMismatch, FeatureClash, IndexArityMismatch.
DerivedTree substitute(const DerivedTree& host, const GornPath& site,
                       const ElementaryTree& filler, const Symbol& entry_name);

/// Splice an auxiliary tree at an internal node; the excised subtree
/// reattaches at the foot. Throws CategoryMismatch, FeatureClash,
/// CannotAdjoinAtLeaf, IndexArityMismatch.
DerivedTree adjoin(const DerivedTree& host, const GornPath& at,
                   const ElementaryTree& aux, const Symbol& entry_name);

std::vector<std::pair<GornPath, SynNode>> open_substitution_sites(
    const DerivedTree& tree);

/// Internal nodes with the given category, in pre-order.
std::vector<GornPath> adjunction_sites(const DerivedTree& tree,
                                       const Symbol& category);

/// Left-to-right anchor yield; empty-string anchors are dropped.
/// Throws IncompleteTree while substitution sites remain.
std::vector<std::string> linearize(const DerivedTree& tree);

/// Indented bracket notation, e.g. (S:<time,removing> (NP (eps)) ...).
std::string pretty(const SynNode& node, int indent = 0);
std::string pretty(const DerivedTree& tree);

/// Re-applies recorded steps to a start tree.
DerivedTree replay(DerivedTree start, std::span<const DerivationStep> steps);

}  // namespace sentplan
