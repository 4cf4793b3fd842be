#include "sentplan/lexicon.hpp"

#include <algorithm>
#include <functional>

#include "json_util.hpp"
#include "sentplan/errors.hpp"

namespace sentplan {

using jsonio::Json;
using jsonio::TermMode;

namespace {

void collect_index_vars(const SynNode& node, std::set<Symbol>& out) {
  for (const Symbol& v : node.indices) out.insert(v);
  for (const SynNode& child : node.children) collect_index_vars(child, out);
}

SynNode parse_node(const Json& j, const std::set<Symbol>& params,
                   const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": tree node must be an object");
  SynNode node;
  if (!j.contains("cat") || !j["cat"].is_string())
    throw ParseError(where + ": tree node needs a \"cat\"");
  node.category = j["cat"].get<std::string>();
  if (j.contains("indices")) {
    for (const Json& v : j["indices"]) {
      Symbol name = v.get<std::string>();
      if (!params.count(name))
        throw UnboundVariable(where + ": node index '" + name +
                              "' does not occur in params");
      node.indices.push_back(name);
    }
  }
  if (j.contains("features")) {
    for (const auto& [key, value] : j["features"].items())
      node.features[key] = value.get<std::string>();
  }
  std::string kind = j.value("kind", std::string("internal"));
  if (kind == "internal")
    node.kind = NodeKind::Internal;
  else if (kind == "subst")
    node.kind = NodeKind::SubstitutionSite;
  else if (kind == "foot")
    node.kind = NodeKind::FootNode;
  else if (kind == "anchor") {
    node.kind = NodeKind::Anchor;
    if (!j.contains("word"))
      throw ParseError(where + ": anchor node needs a \"word\"");
    node.word = j["word"].get<std::string>();
  } else {
    throw ParseError(where + ": unknown node kind \"" + kind + "\"");
  }
  if (j.contains("children"))
    for (const Json& c : j["children"])
      node.children.push_back(parse_node(c, params, where));
  return node;
}

LexicalEntry parse_entry(const Json& j, const std::string& filename) {
  if (!j.is_object() || !j.contains("name"))
    throw ParseError(filename + ": entry needs a \"name\"");
  LexicalEntry entry;
  entry.name = j["name"].get<std::string>();
  std::string where = filename + ": entry '" + entry.name + "'";

  std::string kind = j.value("kind", std::string("initial"));
  if (kind == "initial")
    entry.tree.kind = ElementaryTree::Kind::Initial;
  else if (kind == "auxiliary")
    entry.tree.kind = ElementaryTree::Kind::Auxiliary;
  else
    throw ParseError(where + ": kind must be \"initial\" or \"auxiliary\"");

  std::set<Symbol> params;
  if (j.contains("params"))
    for (const Json& p : j["params"]) {
      Symbol name = p.get<std::string>();
      if (!params.insert(name).second)
        throw ParseError(where + ": duplicate param '" + name + "'");
      entry.params.push_back(name);
    }

  if (!j.contains("tree")) throw ParseError(where + ": missing \"tree\"");
  entry.tree.root = parse_node(j["tree"], params, where);

  if (j.contains("semantics"))
    for (const Json& a : j["semantics"])
      entry.semantics.push_back(
          jsonio::parse_atom(a, TermMode::EntryParams, &params, where));
  if (j.contains("pragmatics"))
    for (const Json& a : j["pragmatics"])
      entry.pragmatics.push_back(
          jsonio::parse_atom(a, TermMode::EntryParams, &params, where));
  if (j.contains("overrides"))
    for (const auto& [predicate, value] : j["overrides"].items()) {
      std::string v = value.get<std::string>();
      if (v == "force_requirement")
        entry.overrides[predicate] = PartitionOverride::ForceRequirement;
      else if (v == "force_contribution")
        entry.overrides[predicate] = PartitionOverride::ForceContribution;
      else
        throw ParseError(where + ": override must be force_requirement or "
                         "force_contribution");
    }
  return entry;
}

}  // namespace

void LexicalEntry::validate() const {
  tree.validate();
  std::set<Symbol> declared(params.begin(), params.end());
  std::set<Symbol> used;
  for (const Atom& a : semantics) a.collect_variables(used);
  for (const Atom& a : pragmatics) a.collect_variables(used);
  for (const Symbol& v : used)
    if (!declared.count(v))
      throw UnboundVariable("entry '" + name + "': variable '" + v +
                            "' does not occur in params");
  std::set<Symbol> tree_vars;
  collect_index_vars(tree.root, tree_vars);
  for (const Symbol& v : tree_vars)
    if (!declared.count(v))
      throw UnboundVariable("entry '" + name + "': node index '" + v +
                            "' does not occur in params");
}

std::vector<LexicalEntry> load_lexicon(const std::string& text,
                                       const std::string& filename) {
  Json doc = jsonio::parse_document(text, filename);
  if (!doc.is_object() || !doc.contains("entries"))
    throw ParseError(filename + ": expected an object with \"entries\"");
  std::vector<LexicalEntry> entries;
  std::set<Symbol> names;
  for (const Json& j : doc["entries"]) {
    LexicalEntry entry = parse_entry(j, filename);
    try {
      entry.validate();
    } catch (const FootNodeViolation& e) {
      throw FootNodeViolation(filename + ": entry '" + entry.name + "': " +
                              e.what());
    }
    if (!names.insert(entry.name).second)
      throw ParseError(filename + ": duplicate entry name '" + entry.name +
                       "'");
    entries.push_back(std::move(entry));
  }
  return entries;
}

namespace {

Atom rename_atom_vars(const Atom& atom, const std::map<Symbol, Symbol>& ren) {
  Binding as_binding;
  for (const auto& [from, to] : ren) as_binding[from] = Term::variable(to);
  return resolve(atom, as_binding);
}

}  // namespace

std::vector<InstantiatedEntry> instantiate(const LexicalEntry& entry,
                                           const KnowledgeBase& kb,
                                           const std::map<Symbol, Symbol>& pins,
                                           const std::string& fresh_tag,
                                           int prover_depth) {
  std::map<Symbol, Symbol> renaming;
  for (const Symbol& p : entry.params) renaming[p] = p + "." + fresh_tag;

  InstantiatedEntry base;
  base.entry = &entry;
  base.renaming = renaming;
  base.tree = entry.tree;
  {
    // rename tree indices in place
    std::function<void(SynNode&)> rec = [&](SynNode& node) {
      for (Symbol& v : node.indices) {
        auto it = renaming.find(v);
        if (it != renaming.end()) v = it->second;
      }
      for (SynNode& child : node.children) rec(child);
    };
    rec(base.tree.root);
  }
  for (const Atom& a : entry.semantics)
    base.semantics.push_back(rename_atom_vars(a, renaming));
  for (const Atom& a : entry.pragmatics)
    base.pragmatics.push_back(rename_atom_vars(a, renaming));

  // pin interface variables to their intended entities
  Binding pinned;
  std::map<Symbol, Symbol> pinned_entities;
  for (const auto& [param, entity] : pins) {
    auto it = renaming.find(param);
    if (it == renaming.end())
      throw Error("entry '" + entry.name + "': pinned param '" + param +
                  "' is not declared");
    pinned[it->second] = Term::constant(entity);
    pinned_entities[it->second] = entity;
  }

  std::vector<Atom> query;
  query.reserve(base.semantics.size());
  for (const Atom& a : base.semantics) query.push_back(resolve(a, pinned));

  ProveResult proof = kb.prove(Modality::Speaker, query, prover_depth);

  std::vector<InstantiatedEntry> results;
  for (const Binding& solution : proof.solutions) {
    InstantiatedEntry inst = base;
    inst.intended = pinned_entities;
    bool usable = true;
    for (const auto& [var, term] : solution) {
      if (!term.is_constant()) {
        usable = false;  // intended referents are entities, not structures
        break;
      }
      inst.intended[var] = term.name();
    }
    if (!usable) continue;
    // every param must end up with an intended entity
    for (const Symbol& p : entry.params)
      if (!inst.intended.count(renaming.at(p))) {
        usable = false;
        break;
      }
    if (!usable) continue;
    // felicity: pragmatics must hold in the common ground
    Binding ground;
    for (const auto& [var, entity] : inst.intended)
      ground[var] = Term::constant(entity);
    for (const Atom& p : inst.pragmatics) {
      if (!kb.provable(Modality::Common, resolve(p, ground), prover_depth)) {
        usable = false;
        break;
      }
    }
    if (usable) results.push_back(std::move(inst));
  }

  if (results.empty())
    throw NoTruthfulInstantiation("entry '" + entry.name +
                                  "' has no truthful instantiation here");
  return results;
}

const char* environment_name(Environment env) {
  switch (env) {
    case Environment::DefiniteNP: return "definite_np";
    case Environment::MatrixClause: return "matrix_clause";
    case Environment::Other: return "other";
  }
  return "other";
}

PartitionResult partition_semantics(const KnowledgeBase& kb,
                                    const InstantiatedEntry& inst,
                                    const std::map<Symbol, Symbol>& intended,
                                    Environment environment,
                                    int prover_depth) {
  Binding ground;
  for (const auto& [var, entity] : intended)
    ground[var] = Term::constant(entity);

  auto grounded = [&](const Atom& atom) {
    std::set<Symbol> vars;
    atom.collect_variables(vars);
    for (const Symbol& v : vars)
      if (!intended.count(v))
        throw UncoveredVariable("variable '" + v + "' in " + atom.str() +
                                " has no intended entity");
    return resolve(atom, ground);
  };

  auto common_provable = [&](const Atom& atom) {
    return kb.provable(Modality::Common, grounded(atom), prover_depth);
  };

  PartitionResult result;
  static const std::map<Symbol, PartitionOverride> kNoOverrides;
  const auto& overrides = inst.entry ? inst.entry->overrides : kNoOverrides;

  for (const Atom& atom : inst.semantics) {
    auto ov = overrides.find(atom.predicate);
    if (ov != overrides.end()) {
      if (ov->second == PartitionOverride::ForceContribution) {
        grounded(atom);  // coverage check still applies
        result.contributions.push_back(atom);
        continue;
      }
      // forced requirement must be in the common ground, else reject
      if (!common_provable(atom)) {
        result.accepted = false;
        result.reject_reason =
            "forced requirement " + atom.str() + " not in common ground";
        return result;
      }
      result.requirements.push_back(atom);
      continue;
    }
    if (environment == Environment::DefiniteNP) {
      if (!common_provable(atom)) {
        result.accepted = false;
        result.reject_reason = "definite NP requirement " + atom.str() +
                               " not in common ground";
        return result;
      }
      result.requirements.push_back(atom);
      continue;
    }
    if (common_provable(atom))
      result.requirements.push_back(atom);
    else
      result.contributions.push_back(atom);
  }

  for (const Atom& atom : inst.pragmatics) {
    grounded(atom);
    result.requirements.push_back(atom);
  }
  return result;
}

}  // namespace sentplan
