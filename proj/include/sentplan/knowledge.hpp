#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "sentplan/term.hpp"

namespace sentplan {

/// [S]p vs [C]p. Everything in the common ground is also speaker knowledge;
/// the prover enforces that by visibility, not by duplicating facts.
enum class Modality { Speaker, Common };

const char* modality_name(Modality m);

struct ModalFact {
  Modality modality = Modality::Common;
  Atom atom;  // ground

  bool operator==(const ModalFact&) const = default;
};

struct InferenceRule {
  Modality modality = Modality::Common;
  Atom head;
  std::vector<Atom> body;  // length <= kMaxRuleBody, range-restricted

  bool operator==(const InferenceRule&) const = default;
};

inline constexpr int kDefaultProverDepth = 16;
inline constexpr int kMaxRuleBody = 8;
inline constexpr int kMaxTermDepth = 4;

struct ProveResult {
  std::vector<Binding> solutions;  // deduplicated, sorted
  std::size_t cut_branches = 0;    // branches abandoned at the depth bound

  bool provable() const { return !solutions.empty(); }
};

/// Fact and rule store with bounded SLD resolution under two modalities.
/// Read-only once a scene is loaded; prove and prove_hypothetical are pure.
class KnowledgeBase {
 public:
  /// Ground facts only; duplicate asserts are no-ops. Throws NonGroundFact,
  /// ArityClash.
  void assert_fact(Modality modality, Atom atom);
  void assert_fact(const ModalFact& fact) {
    assert_fact(fact.modality, fact.atom);
  }

  /// Throws ArityClash or Error when the rule is not range-restricted or the
  /// body is too long.
  void add_rule(InferenceRule rule);

  /// All substitutions (over the query's variables) derivable for the
  /// conjunction under the modality, with rule chaining cut at `depth`.
  /// Common queries see only Common facts and rules; Speaker queries see both.
  ProveResult prove(Modality modality, std::vector<Atom> query,
                    int depth = kDefaultProverDepth) const;

  /// prove with first-solution short-circuit; same visibility and bound.
  bool provable(Modality modality, const Atom& goal,
                int depth = kDefaultProverDepth) const;

  /// [m](added => goal): adds the ground atoms on a scratch copy, proves, and
  /// leaves this KB untouched. Throws NonGroundFact.
  bool prove_hypothetical(std::span<const Atom> added, Modality modality,
                          const Atom& goal,
                          int depth = kDefaultProverDepth) const;

  std::size_t fact_count() const;
  std::size_t fact_count(Modality modality) const;
  const std::vector<ModalFact>& facts() const { return facts_; }
  const std::vector<InferenceRule>& rules() const { return rules_; }
  const std::map<Symbol, std::size_t>& arities() const { return arities_; }

  bool operator==(const KnowledgeBase&) const = default;

 private:
  void check_arity(const Atom& atom);

  std::vector<ModalFact> facts_;        // assertion order
  std::vector<InferenceRule> rules_;    // assertion order
  std::map<Symbol, std::size_t> arities_;
  // per-predicate indexes into facts_/rules_
  std::map<Symbol, std::vector<std::size_t>> fact_index_;
  std::map<Symbol, std::vector<std::size_t>> rule_index_;
};

}  // namespace sentplan
