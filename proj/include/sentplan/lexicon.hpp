#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sentplan/knowledge.hpp"
#include "sentplan/syntax.hpp"
#include "sentplan/term.hpp"

namespace sentplan {

enum class PartitionOverride { ForceRequirement, ForceContribution };

/// A tree template paired with semantic atoms and pragmatic conditions over
/// its params. Declaration order is the planner's final ranking tie-breaker.
struct LexicalEntry {
  Symbol name;
  ElementaryTree tree;
  std::vector<Symbol> params;
  std::vector<Atom> semantics;
  std::vector<Atom> pragmatics;
  std::map<Symbol, PartitionOverride> overrides;  // keyed by predicate

  /// Entry-local invariants (vars covered by params, tree shape).
  void validate() const;
};

/// Parses the lexicon file. Throws ParseError, UnboundVariable,
/// FootNodeViolation.
std::vector<LexicalEntry> load_lexicon(const std::string& text,
                                       const std::string& filename = "lexicon");

/// An entry with params renamed fresh and an intended entity per variable.
struct InstantiatedEntry {
  const LexicalEntry* entry = nullptr;
  ElementaryTree tree;                   // renamed copy
  std::map<Symbol, Symbol> renaming;     // param -> fresh variable
  std::map<Symbol, Symbol> intended;     // fresh variable -> entity
  std::vector<Atom> semantics;           // renamed
  std::vector<Atom> pragmatics;          // renamed
};

/// All truthful instantiations of `entry`: params are renamed with
/// `fresh_tag`, `pins` fixes interface variables (by param name) to entities,
/// the remaining params are solved against speaker knowledge, and solutions
/// whose pragmatics fail in the common ground are dropped. Deterministic
/// order. Throws NoTruthfulInstantiation when nothing survives.
std::vector<InstantiatedEntry> instantiate(
    const LexicalEntry& entry, const KnowledgeBase& kb,
    const std::map<Symbol, Symbol>& pins, const std::string& fresh_tag,
    int prover_depth = kDefaultProverDepth);

/// Syntactic environment of the combination target.
enum class Environment { DefiniteNP, MatrixClause, Other };

const char* environment_name(Environment env);

struct PartitionResult {
  std::vector<Atom> requirements;
  std::vector<Atom> contributions;
  bool accepted = true;          // false when a forced requirement is not
  std::string reject_reason;     // provable in the common ground
};

/// Splits instantiated semantics into requirements and contributions.
/// Overrides apply first, then DefiniteNP forces Requirement, then an atom is
/// a Requirement iff it is Common-provable under `intended`. Pragmatics atoms
/// are always requirements. Throws UncoveredVariable.
PartitionResult partition_semantics(const KnowledgeBase& kb,
                                    const InstantiatedEntry& inst,
                                    const std::map<Symbol, Symbol>& intended,
                                    Environment environment,
                                    int prover_depth = kDefaultProverDepth);

}  // namespace sentplan
