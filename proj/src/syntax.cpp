#include "sentplan/syntax.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "sentplan/errors.hpp"

namespace sentplan {

std::string gorn_str(const GornPath& path) {
  if (path.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) os << '.';
    os << path[i];
  }
  return os.str();
}

bool SynNode::operator==(const SynNode& other) const {
  return category == other.category && indices == other.indices &&
         features == other.features && kind == other.kind &&
         word == other.word && children == other.children;
}

const char* op_name(DerivationStep::Op op) {
  return op == DerivationStep::Op::Substitute ? "substitute" : "adjoin";
}

namespace {

void walk(const SynNode& node, GornPath& path,
          const std::function<void(const SynNode&, const GornPath&)>& visit) {
  visit(node, path);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(static_cast<int>(i) + 1);
    walk(node.children[i], path, visit);
    path.pop_back();
  }
}

void for_each_node(const SynNode& root,
                   const std::function<void(const SynNode&, const GornPath&)>&
                       visit) {
  GornPath path;
  walk(root, path, visit);
}

SynNode* mutable_node_at(SynNode& root, const GornPath& path) {
  SynNode* node = &root;
  for (int step : path) {
    if (step < 1 || static_cast<std::size_t>(step) > node->children.size())
      return nullptr;
    node = &node->children[static_cast<std::size_t>(step) - 1];
  }
  return node;
}

bool features_compatible(const std::map<Symbol, Symbol>& a,
                         const std::map<Symbol, Symbol>& b) {
  for (const auto& [key, value] : a) {
    auto it = b.find(key);
    if (it != b.end() && it->second != value) return false;
  }
  return true;
}

std::map<Symbol, Symbol> merge_features(const std::map<Symbol, Symbol>& a,
                                        const std::map<Symbol, Symbol>& b) {
  std::map<Symbol, Symbol> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

void rename_indices(SynNode& node, const std::map<Symbol, Symbol>& renaming) {
  for (Symbol& v : node.indices) {
    auto it = renaming.find(v);
    if (it != renaming.end()) v = it->second;
  }
  for (SynNode& child : node.children) rename_indices(child, renaming);
}

/// Position-wise index unification. Empty `site` index lists are wildcards.
std::map<Symbol, Symbol> unify_indices(const std::vector<Symbol>& host,
                                       const std::vector<Symbol>& filler,
                                       const std::string& where) {
  std::map<Symbol, Symbol> aliases;
  if (host.empty()) return aliases;
  if (host.size() != filler.size())
    throw IndexArityMismatch(where + ": host indices arity " +
                             std::to_string(host.size()) + " vs " +
                             std::to_string(filler.size()));
  for (std::size_t i = 0; i < host.size(); ++i) {
    auto [it, inserted] = aliases.emplace(filler[i], host[i]);
    if (!inserted && it->second != host[i])
      throw IndexArityMismatch(where + ": index variable " + filler[i] +
                               " aliased to both " + it->second + " and " +
                               host[i]);
  }
  return aliases;
}

}  // namespace

std::vector<std::string> ElementaryTree::anchors() const {
  std::vector<std::string> out;
  for_each_node(root, [&](const SynNode& n, const GornPath&) {
    if (n.kind == NodeKind::Anchor) out.push_back(n.word);
  });
  return out;
}

GornPath ElementaryTree::foot_path() const {
  GornPath found;
  bool seen = false;
  for_each_node(root, [&](const SynNode& n, const GornPath& p) {
    if (n.kind == NodeKind::FootNode && !seen) {
      found = p;
      seen = true;
    }
  });
  return found;
}

void ElementaryTree::validate() const {
  int feet = 0;
  int anchor_count = 0;
  Symbol foot_category;
  for_each_node(root, [&](const SynNode& n, const GornPath& p) {
    bool leaf = n.children.empty();
    switch (n.kind) {
      case NodeKind::Anchor:
        ++anchor_count;
        if (!leaf) throw Error("anchor '" + n.word + "' is not a leaf");
        break;
      case NodeKind::SubstitutionSite:
        if (!leaf)
          throw Error("substitution site " + n.category + " at " +
                      gorn_str(p) + " is not a leaf");
        break;
      case NodeKind::FootNode:
        ++feet;
        foot_category = n.category;
        if (!leaf)
          throw FootNodeViolation("foot node at " + gorn_str(p) +
                                  " is not a leaf");
        break;
      case NodeKind::Internal:
        break;
    }
  });
  if (kind == Kind::Auxiliary) {
    if (feet != 1)
      throw FootNodeViolation("auxiliary tree rooted at " + root.category +
                              " has " + std::to_string(feet) + " foot nodes");
    if (foot_category != root.category)
      throw FootNodeViolation("foot category " + foot_category +
                              " differs from root category " + root.category);
  } else if (feet != 0) {
    throw FootNodeViolation("initial tree rooted at " + root.category +
                            " has a foot node");
  }
  if (anchor_count == 0)
    throw Error("tree rooted at " + root.category + " has no anchor");
}

const SynNode* DerivedTree::node_at(const GornPath& path) const {
  const SynNode* node = &root;
  for (int step : path) {
    if (step < 1 || static_cast<std::size_t>(step) > node->children.size())
      return nullptr;
    node = &node->children[static_cast<std::size_t>(step) - 1];
  }
  return node;
}

DerivedTree start_tree(const Symbol& category, std::vector<Symbol> indices) {
  DerivedTree tree;
  tree.root.category = category;
  tree.root.indices = std::move(indices);
  tree.root.kind = NodeKind::SubstitutionSite;
  return tree;
}

DerivedTree substitute(const DerivedTree& host, const GornPath& site,
                       const ElementaryTree& filler,
                       const Symbol& entry_name) {
  const SynNode* target = host.node_at(site);
  if (!target) throw Error("no node at address " + gorn_str(site));
  if (target->kind != NodeKind::SubstitutionSite)
    throw NotASite("node at " + gorn_str(site) + " is not a substitution site");
  if (filler.kind != ElementaryTree::Kind::Initial)
    throw Error("substitution filler '" + entry_name + "' is not initial");
  if (target->category != filler.root.category)
    throw CategoryMismatch("site " + target->category + " vs filler root " +
                           filler.root.category);
  if (!features_compatible(target->features, filler.root.features))
    throw FeatureClash("at " + gorn_str(site) + " substituting " + entry_name);

  auto aliases =
      unify_indices(target->indices, filler.root.indices, "substitute " +
                    entry_name + " at " + gorn_str(site));

  SynNode replacement = filler.root;
  rename_indices(replacement, aliases);
  replacement.features = merge_features(target->features, replacement.features);
  if (!target->indices.empty()) replacement.indices = target->indices;

  DerivedTree result = host;
  *mutable_node_at(result.root, site) = std::move(replacement);
  result.provenance.push_back(DerivationStep{
      entry_name, DerivationStep::Op::Substitute, site, filler, aliases});
  return result;
}

DerivedTree adjoin(const DerivedTree& host, const GornPath& at,
                   const ElementaryTree& aux, const Symbol& entry_name) {
  const SynNode* target = host.node_at(at);
  if (!target) throw Error("no node at address " + gorn_str(at));
  if (target->kind != NodeKind::Internal)
    throw CannotAdjoinAtLeaf("node at " + gorn_str(at) +
                             " cannot host adjunction");
  if (aux.kind != ElementaryTree::Kind::Auxiliary)
    throw Error("adjunction entry '" + entry_name + "' is not auxiliary");
  if (target->category != aux.root.category)
    throw CategoryMismatch("node " + target->category + " vs auxiliary root " +
                           aux.root.category);
  if (!features_compatible(target->features, aux.root.features))
    throw FeatureClash("at " + gorn_str(at) + " adjoining " + entry_name);

  GornPath foot = aux.foot_path();
  const SynNode* foot_node = nullptr;
  {
    const SynNode* n = &aux.root;
    for (int step : foot) n = &n->children[static_cast<std::size_t>(step) - 1];
    foot_node = n;
  }
  if (!features_compatible(target->features, foot_node->features))
    throw FeatureClash("foot features at " + gorn_str(at) + " adjoining " +
                       entry_name);

  auto aliases = unify_indices(target->indices, aux.root.indices,
                               "adjoin " + entry_name + " at " + gorn_str(at));
  if (!foot_node->indices.empty()) {
    auto foot_aliases =
        unify_indices(target->indices, foot_node->indices,
                      "adjoin " + entry_name + " foot at " + gorn_str(at));
    for (const auto& [from, to] : foot_aliases) {
      auto [it, inserted] = aliases.emplace(from, to);
      if (!inserted && it->second != to)
        throw IndexArityMismatch("foot/root index clash for " + from +
                                 " adjoining " + entry_name);
    }
  }

  SynNode splice = aux.root;
  rename_indices(splice, aliases);
  splice.features = merge_features(target->features, splice.features);
  if (!target->indices.empty()) splice.indices = target->indices;

  // the excised subtree takes the foot's place, keeping its own shape
  SynNode excised = *target;
  excised.features = merge_features(excised.features, foot_node->features);
  SynNode* slot = mutable_node_at(splice, foot);
  *slot = std::move(excised);

  DerivedTree result = host;
  *mutable_node_at(result.root, at) = std::move(splice);
  result.provenance.push_back(
      DerivationStep{entry_name, DerivationStep::Op::Adjoin, at, aux, aliases});
  return result;
}

std::vector<std::pair<GornPath, SynNode>> open_substitution_sites(
    const DerivedTree& tree) {
  std::vector<std::pair<GornPath, SynNode>> out;
  for_each_node(tree.root, [&](const SynNode& n, const GornPath& p) {
    if (n.kind == NodeKind::SubstitutionSite) out.emplace_back(p, n);
  });
  return out;
}

std::vector<GornPath> adjunction_sites(const DerivedTree& tree,
                                       const Symbol& category) {
  std::vector<GornPath> out;
  for_each_node(tree.root, [&](const SynNode& n, const GornPath& p) {
    if (n.kind == NodeKind::Internal && n.category == category)
      out.push_back(p);
  });
  return out;
}

std::vector<std::string> linearize(const DerivedTree& tree) {
  auto sites = open_substitution_sites(tree);
  if (!sites.empty())
    throw IncompleteTree("tree has " + std::to_string(sites.size()) +
                         " open substitution sites, first at " +
                         gorn_str(sites.front().first));
  std::vector<std::string> words;
  for_each_node(tree.root, [&](const SynNode& n, const GornPath&) {
    if (n.kind == NodeKind::Anchor && !n.word.empty()) words.push_back(n.word);
  });
  return words;
}

std::string pretty(const SynNode& node, int indent) {
  std::ostringstream os;
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad << '(';
  if (node.kind == NodeKind::Anchor) {
    os << (node.word.empty() ? "ε" : node.category + " " + node.word);
    os << ')';
    return os.str();
  }
  os << node.category;
  if (node.kind == NodeKind::SubstitutionSite) os << "↓";
  if (node.kind == NodeKind::FootNode) os << "*";
  if (!node.indices.empty()) {
    os << ":⟨";
    for (std::size_t i = 0; i < node.indices.size(); ++i) {
      if (i) os << ',';
      os << node.indices[i];
    }
    os << "⟩";
  }
  for (const auto& [key, value] : node.features)
    os << ' ' << key << '=' << value;
  for (const SynNode& child : node.children) {
    os << '\n' << pretty(child, indent + 1);
  }
  os << ')';
  return os.str();
}

std::string pretty(const DerivedTree& tree) { return pretty(tree.root, 0); }

DerivedTree replay(DerivedTree start, std::span<const DerivationStep> steps) {
  DerivedTree tree = std::move(start);
  for (const DerivationStep& step : steps) {
    if (step.op == DerivationStep::Op::Substitute)
      tree = substitute(tree, step.address, step.used, step.entry);
    else
      tree = adjoin(tree, step.address, step.used, step.entry);
  }
  return tree;
}

}  // namespace sentplan
