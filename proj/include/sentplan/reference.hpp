#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "sentplan/knowledge.hpp"
#include "sentplan/term.hpp"

namespace sentplan {

/// D(e): an entity together with its live alternatives. e is always a member.
struct ContextSets {
  std::map<Symbol, std::set<Symbol>> sets;

  bool has(const Symbol& entity) const { return sets.count(entity) > 0; }
  const std::set<Symbol>& of(const Symbol& entity) const;
};

inline constexpr std::uint64_t kDefaultSearchBound = 1'000'000;

/// Per-variable alternative sets plus the accumulated requirement atoms that
/// constrain them. Values are immutable snapshots; filtering returns copies.
struct ReferenceDomains {
  std::map<Symbol, std::set<Symbol>> domains;  // variable -> surviving entities
  std::vector<Atom> constraints;               // admitted requirements

  bool tracks(const Symbol& variable) const {
    return domains.count(variable) > 0;
  }
};

/// Seeds domain(v) = D(intended(v)) for every discourse-old variable in the
/// assignment; brand-new entities are excluded. Throws MissingContextSet.
ReferenceDomains init_domains(const std::map<Symbol, Symbol>& assignment,
                              const std::set<Symbol>& brand_new,
                              const ContextSets& contexts);

/// Adds the new requirements to the constraint store (enrolling any unseen
/// discourse-old variables from the assignment) and runs arc-consistency to a
/// fixpoint: a value survives iff some choice from the other variables'
/// domains, with non-domain variables fixed to their intended entities, makes
/// the atom provable in the common ground. Throws EmptyDomain.
ReferenceDomains filter_distractors(const KnowledgeBase& kb,
                                    ReferenceDomains domains,
                                    std::span<const Atom> new_requirements,
                                    const std::map<Symbol, Symbol>& assignment,
                                    const std::set<Symbol>& brand_new,
                                    const ContextSets& contexts,
                                    int prover_depth = kDefaultProverDepth);

struct UniqueReport {
  std::map<Symbol, std::set<Symbol>> projections;  // var -> solution values
  std::map<Symbol, bool> unique;                   // projection == {intended}
  std::uint64_t solutions = 0;
};

/// Exact backtracking enumeration of all joint solutions of the constraint
/// store. This, not the AC domains, is the planner's stopping test.
/// Throws SearchBoundExceeded when the candidate product exceeds `bound`.
UniqueReport verify_unique(const KnowledgeBase& kb,
                           const ReferenceDomains& domains,
                           const std::map<Symbol, Symbol>& assignment,
                           std::uint64_t bound = kDefaultSearchBound,
                           int prover_depth = kDefaultProverDepth);

}  // namespace sentplan
