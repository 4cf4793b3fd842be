#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sentplan/knowledge.hpp"
#include "sentplan/lexicon.hpp"
#include "sentplan/reference.hpp"
#include "sentplan/scene.hpp"
#include "sentplan/syntax.hpp"

namespace sentplan {

/// Ranking factors; lexicographic, lower is better.
enum class Factor { Goals, Distractors, Sites, Specificity };

using ScoreOrder = std::array<Factor, 4>;

inline constexpr ScoreOrder kDefaultScoreOrder = {
    Factor::Goals, Factor::Distractors, Factor::Sites, Factor::Specificity};

/// Parses "goals,distractors,sites,specificity" permutations.
ScoreOrder parse_score_order(const std::string& text);

struct ScoreVector {
  int unmet_goals = 0;
  int distractor_mass = 0;  // sum over identify variables of |domain|-1
  int open_sites = 0;
  int specificity = 0;      // negated requirement-atom count

  int field(Factor f) const;
  std::string str() const;
  bool operator==(const ScoreVector&) const = default;
};

/// Negative when a is better than b under the order.
int compare_scores(const ScoreVector& a, const ScoreVector& b,
                   const ScoreOrder& order);

struct GoalStatus {
  Goal goal;
  bool met = false;
};

/// The three-part state record for an incomplete sentence, plus bookkeeping:
/// instantiated tree, intended assignment, requirement and contribution
/// conjunctions, reference domains, goal ledger, score.
struct SentenceState {
  DerivedTree tree;
  std::map<Symbol, Symbol> assignment;  // variable -> intended entity
  std::vector<Atom> requirements;
  std::vector<Atom> contributions;
  ReferenceDomains domains;
  std::vector<GoalStatus> goals;
  ScoreVector score;
  int fresh_counter = 0;
};

struct PlannerConfig {
  int max_steps = 20;
  int prover_depth = kDefaultProverDepth;
  std::uint64_t search_bound = kDefaultSearchBound;
  ScoreOrder score_order = kDefaultScoreOrder;
};

/// Everything a generation run reads; owned elsewhere, immutable here.
struct PlannerContext {
  const Scene& scene;
  const std::vector<LexicalEntry>& lexicon;
  const GoalSpec& goal_spec;
  PlannerConfig config;
};

struct Candidate {
  SentenceState state;
  std::size_t entry_index = 0;
  DerivationStep::Op op = DerivationStep::Op::Substitute;
  GornPath address;
  std::vector<Atom> new_requirements;
  std::vector<Atom> new_contributions;
};

struct DroppedCandidate {
  Symbol entry;
  GornPath address;
  std::string reason;
};

struct DomainTraceEntry {
  std::size_t before_size = 0;
  std::size_t after_size = 0;
  std::vector<Symbol> survivors;  // listed when after_size <= 10
};

struct StepRecord {
  int index = 0;
  Symbol entry;
  DerivationStep::Op op = DerivationStep::Op::Substitute;
  GornPath address;
  std::vector<std::string> requirements;   // added this step
  std::vector<std::string> contributions;  // added this step
  ScoreVector before;
  ScoreVector after;
  std::map<Symbol, DomainTraceEntry> domains;
  std::vector<DroppedCandidate> dropped;
  std::string tree;  // resulting tree in indented bracket notation
};

/// Re-evaluates every goal against the state: Communicate through the
/// hypothetical query [C](N(e) => G), Identify through exact enumeration,
/// BrandNew through its feature goals.
std::vector<GoalStatus> goals_conveyed(const PlannerContext& ctx,
                                       const SentenceState& state);

/// Every (open site x initial entry) and (adjunction site x auxiliary entry)
/// extension that survives instantiation, combination, partition, and
/// distractor filtering. Failed attempts land in `dropped` with a reason.
std::vector<Candidate> applicable_extensions(
    const PlannerContext& ctx, const SentenceState& state,
    std::vector<DroppedCandidate>* dropped = nullptr);

/// Sorts candidates: configured factors lexicographically with an
/// adjunction-over-substitution preference applied just before the open-sites
/// factor, then lexicon declaration order, then target address.
void rank(const PlannerContext& ctx, std::vector<Candidate>& candidates);

struct StepOutcome {
  enum class Status { Committed, Done, NoProgress };
  Status status = Status::Committed;
  std::optional<SentenceState> next;
  StepRecord record;
  std::vector<DroppedCandidate> dropped;
};

/// One loop iteration: returns Done when the three stopping conditions
/// already hold, otherwise commits the best strictly-improving candidate.
StepOutcome step(const PlannerContext& ctx, const SentenceState& state,
                 int step_index);

struct GenerateOutcome {
  bool success = false;
  std::vector<std::string> words;
  SentenceState final_state;
  std::vector<StepRecord> trace;
  // failure diagnosis
  std::string reason;
  bool incomplete = false;
  bool ambiguous = false;
  bool unconveyed = false;
  std::vector<std::string> open_site_addresses;
  std::vector<Symbol> ambiguous_variables;
  std::vector<std::string> unmet_goals;
};

SentenceState initial_state(const PlannerContext& ctx,
                            const Symbol& root_category);

/// The main loop: start from a single-node tree of the root category and
/// extend greedily until the sentence is complete, unambiguous, and conveys
/// every goal, or no candidate makes progress.
GenerateOutcome generate(const PlannerContext& ctx,
                         const Symbol& root_category);

}  // namespace sentplan
