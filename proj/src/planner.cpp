#include "sentplan/planner.hpp"

#include <algorithm>
#include <sstream>

#include "sentplan/errors.hpp"

namespace sentplan {

ScoreOrder parse_score_order(const std::string& text) {
  std::vector<std::string> names;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) names.push_back(token);
  if (names.size() != 4)
    throw ParseError("score order needs exactly four factor names, got '" +
                     text + "'");
  ScoreOrder order{};
  std::set<Factor> seen;
  for (std::size_t i = 0; i < 4; ++i) {
    Factor f;
    if (names[i] == "goals")
      f = Factor::Goals;
    else if (names[i] == "distractors")
      f = Factor::Distractors;
    else if (names[i] == "sites")
      f = Factor::Sites;
    else if (names[i] == "specificity")
      f = Factor::Specificity;
    else
      throw ParseError("unknown score factor '" + names[i] + "'");
    if (!seen.insert(f).second)
      throw ParseError("score order repeats factor '" + names[i] + "'");
    order[i] = f;
  }
  return order;
}

int ScoreVector::field(Factor f) const {
  switch (f) {
    case Factor::Goals: return unmet_goals;
    case Factor::Distractors: return distractor_mass;
    case Factor::Sites: return open_sites;
    case Factor::Specificity: return specificity;
  }
  return 0;
}

std::string ScoreVector::str() const {
  std::ostringstream os;
  os << '[' << unmet_goals << ',' << distractor_mass << ',' << open_sites
     << ',' << specificity << ']';
  return os.str();
}

int compare_scores(const ScoreVector& a, const ScoreVector& b,
                   const ScoreOrder& order) {
  for (Factor f : order) {
    if (a.field(f) != b.field(f)) return a.field(f) < b.field(f) ? -1 : 1;
  }
  return 0;
}

namespace {

Binding ground_binding(const std::map<Symbol, Symbol>& assignment) {
  Binding out;
  for (const auto& [var, entity] : assignment)
    out[var] = Term::constant(entity);
  return out;
}

std::vector<Atom> ground_atoms(const std::vector<Atom>& atoms,
                               const std::map<Symbol, Symbol>& assignment) {
  Binding binding = ground_binding(assignment);
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) out.push_back(resolve(a, binding));
  return out;
}

/// Variables standing for entities the run must identify.
std::vector<Symbol> identify_variables(const PlannerContext& ctx,
                                       const SentenceState& state) {
  std::set<Symbol> targets;
  for (const Goal& g : ctx.goal_spec.goals)
    if (g.type == Goal::Type::Identify) targets.insert(g.entity);
  std::vector<Symbol> vars;
  for (const auto& [var, entity] : state.assignment)
    if (targets.count(entity)) vars.push_back(var);
  return vars;
}

int distractor_mass(const PlannerContext& ctx, const SentenceState& state) {
  int mass = 0;
  for (const Symbol& var : identify_variables(ctx, state)) {
    auto it = state.domains.domains.find(var);
    if (it != state.domains.domains.end())
      mass += static_cast<int>(it->second.size()) - 1;
  }
  return mass;
}

bool feature_met(const PlannerContext& ctx, const Atom& goal_atom,
                 const std::vector<Atom>& ground_contributions) {
  return ctx.scene.kb.prove_hypothetical(ground_contributions,
                                         Modality::Common, goal_atom,
                                         ctx.config.prover_depth);
}

}  // namespace

std::vector<GoalStatus> goals_conveyed(const PlannerContext& ctx,
                                       const SentenceState& state) {
  std::vector<Atom> contributions =
      ground_atoms(state.contributions, state.assignment);
  UniqueReport uniqueness =
      verify_unique(ctx.scene.kb, state.domains, state.assignment,
                    ctx.config.search_bound, ctx.config.prover_depth);

  std::vector<GoalStatus> statuses;
  statuses.reserve(ctx.goal_spec.goals.size());
  for (const Goal& goal : ctx.goal_spec.goals) {
    GoalStatus status{goal, false};
    switch (goal.type) {
      case Goal::Type::Communicate:
        status.met = feature_met(ctx, goal.atom, contributions);
        break;
      case Goal::Type::BrandNew: {
        status.met = true;
        for (const Atom& f : goal.features)
          if (!feature_met(ctx, f, contributions)) {
            status.met = false;
            break;
          }
        break;
      }
      case Goal::Type::Identify: {
        bool any = false;
        bool all_unique = true;
        for (const auto& [var, entity] : state.assignment) {
          if (entity != goal.entity) continue;
          any = true;
          auto it = uniqueness.unique.find(var);
          if (it == uniqueness.unique.end() || !it->second) {
            all_unique = false;
            break;
          }
        }
        status.met = any && all_unique;
        break;
      }
    }
    statuses.push_back(std::move(status));
  }
  return statuses;
}

namespace {

int count_unmet(const std::vector<GoalStatus>& statuses) {
  return static_cast<int>(
      std::count_if(statuses.begin(), statuses.end(),
                    [](const GoalStatus& s) { return !s.met; }));
}

Environment environment_at(const DerivedTree& tree, const GornPath& address) {
  const SynNode* node = &tree.root;
  bool definite = false;
  auto check = [&](const SynNode& n) {
    auto it = n.features.find("def");
    if (it != n.features.end() && it->second == "+") definite = true;
  };
  check(*node);
  for (int step : address) {
    node = &node->children[static_cast<std::size_t>(step) - 1];
    check(*node);
  }
  if (definite) return Environment::DefiniteNP;
  if (address.empty()) return Environment::MatrixClause;
  return Environment::Other;
}

Atom apply_aliases(const Atom& atom, const std::map<Symbol, Symbol>& aliases) {
  Binding binding;
  for (const auto& [from, to] : aliases) binding[from] = Term::variable(to);
  return resolve(atom, binding);
}

struct Attempt {
  std::size_t entry_index;
  DerivationStep::Op op;
  GornPath address;
  std::vector<Symbol> host_indices;
};

std::optional<Candidate> evaluate_attempt(
    const PlannerContext& ctx, const SentenceState& state,
    const Attempt& attempt, const InstantiatedEntry& inst,
    std::string* reject_reason) {
  const LexicalEntry& entry = ctx.lexicon[attempt.entry_index];
  Candidate candidate;
  candidate.entry_index = attempt.entry_index;
  candidate.op = attempt.op;
  candidate.address = attempt.address;

  DerivedTree combined;
  try {
    combined = attempt.op == DerivationStep::Op::Substitute
                   ? substitute(state.tree, attempt.address, inst.tree,
                                entry.name)
                   : adjoin(state.tree, attempt.address, inst.tree, entry.name);
  } catch (const Error& e) {
    *reject_reason = e.what();
    return std::nullopt;
  }

  const auto& aliases = combined.provenance.back().aliases;
  std::map<Symbol, Symbol> assignment = state.assignment;
  for (const auto& [var, entity] : inst.intended) {
    Symbol canonical = var;
    auto alias = aliases.find(var);
    if (alias != aliases.end()) canonical = alias->second;
    auto [it, inserted] = assignment.emplace(canonical, entity);
    if (!inserted && it->second != entity) {
      *reject_reason = "intent mismatch on variable " + canonical;
      return std::nullopt;
    }
  }

  InstantiatedEntry renamed = inst;
  for (Atom& a : renamed.semantics) a = apply_aliases(a, aliases);
  for (Atom& a : renamed.pragmatics) a = apply_aliases(a, aliases);

  Environment env = environment_at(combined, attempt.address);
  PartitionResult partition;
  try {
    partition = partition_semantics(ctx.scene.kb, renamed, assignment, env,
                                    ctx.config.prover_depth);
  } catch (const Error& e) {
    *reject_reason = e.what();
    return std::nullopt;
  }
  if (!partition.accepted) {
    *reject_reason = partition.reject_reason;
    return std::nullopt;
  }

  SentenceState next;
  next.tree = std::move(combined);
  next.assignment = std::move(assignment);
  next.fresh_counter = state.fresh_counter + 1;
  next.requirements = state.requirements;
  next.contributions = state.contributions;
  for (const Atom& a : partition.requirements)
    if (std::find(next.requirements.begin(), next.requirements.end(), a) ==
        next.requirements.end()) {
      next.requirements.push_back(a);
      candidate.new_requirements.push_back(a);
    }
  for (const Atom& a : partition.contributions)
    if (std::find(next.contributions.begin(), next.contributions.end(), a) ==
        next.contributions.end()) {
      next.contributions.push_back(a);
      candidate.new_contributions.push_back(a);
    }

  try {
    next.domains = filter_distractors(
        ctx.scene.kb, state.domains, candidate.new_requirements,
        next.assignment, ctx.goal_spec.brand_new, ctx.scene.contexts,
        ctx.config.prover_depth);
  } catch (const Error& e) {
    *reject_reason = e.what();
    return std::nullopt;
  }

  next.goals = goals_conveyed(ctx, next);
  next.score.unmet_goals = count_unmet(next.goals);
  next.score.distractor_mass = distractor_mass(ctx, next);
  next.score.open_sites =
      static_cast<int>(open_substitution_sites(next.tree).size());
  next.score.specificity = -static_cast<int>(next.requirements.size());

  candidate.state = std::move(next);
  return candidate;
}

}  // namespace

std::vector<Candidate> applicable_extensions(
    const PlannerContext& ctx, const SentenceState& state,
    std::vector<DroppedCandidate>* dropped) {
  std::vector<Attempt> attempts;
  auto sites = open_substitution_sites(state.tree);
  for (std::size_t e = 0; e < ctx.lexicon.size(); ++e) {
    const LexicalEntry& entry = ctx.lexicon[e];
    if (entry.tree.kind == ElementaryTree::Kind::Initial) {
      for (const auto& [path, node] : sites) {
        if (node.category != entry.tree.root.category) continue;
        attempts.push_back(
            Attempt{e, DerivationStep::Op::Substitute, path, node.indices});
      }
    } else {
      for (const GornPath& path :
           adjunction_sites(state.tree, entry.tree.root.category)) {
        attempts.push_back(Attempt{e, DerivationStep::Op::Adjoin, path,
                                   state.tree.node_at(path)->indices});
      }
    }
  }

  std::vector<Candidate> candidates;
  for (const Attempt& attempt : attempts) {
    const LexicalEntry& entry = ctx.lexicon[attempt.entry_index];
    auto drop = [&](const std::string& reason) {
      if (dropped)
        dropped->push_back(
            DroppedCandidate{entry.name, attempt.address, reason});
    };

    const auto& entry_indices = entry.tree.root.indices;
    if (!attempt.host_indices.empty() &&
        attempt.host_indices.size() != entry_indices.size()) {
      drop("index arity mismatch");
      continue;
    }
    std::map<Symbol, Symbol> pins;
    if (!attempt.host_indices.empty()) {
      bool ok = true;
      for (std::size_t i = 0; i < entry_indices.size(); ++i) {
        const Symbol& host_var = attempt.host_indices[i];
        auto it = state.assignment.find(host_var);
        if (it == state.assignment.end()) {
          ok = false;
          break;
        }
        auto [pin, inserted] = pins.emplace(entry_indices[i], it->second);
        if (!inserted && pin->second != it->second) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        drop("interface variables not resolvable");
        continue;
      }
    }

    std::vector<InstantiatedEntry> instances;
    try {
      instances =
          instantiate(entry, ctx.scene.kb, pins,
                      std::to_string(state.fresh_counter + 1),
                      ctx.config.prover_depth);
    } catch (const NoTruthfulInstantiation&) {
      drop("intent mismatch: no truthful instantiation");
      continue;
    }

    for (const InstantiatedEntry& inst : instances) {
      std::string reason;
      auto candidate = evaluate_attempt(ctx, state, attempt, inst, &reason);
      if (candidate)
        candidates.push_back(std::move(*candidate));
      else
        drop(reason);
    }
  }
  return candidates;
}

void rank(const PlannerContext& ctx, std::vector<Candidate>& candidates) {
  const ScoreOrder& order = ctx.config.score_order;
  auto before = [&](const Candidate& a, const Candidate& b) {
    for (Factor f : order) {
      if (f == Factor::Sites && a.op != b.op) {
        // modification extends a description without closing argument
        // positions; prefer it when meaning and reference factors tie
        return a.op == DerivationStep::Op::Adjoin;
      }
      int va = a.state.score.field(f);
      int vb = b.state.score.field(f);
      if (va != vb) return va < vb;
    }
    if (a.entry_index != b.entry_index) return a.entry_index < b.entry_index;
    return a.address < b.address;
  };
  std::stable_sort(candidates.begin(), candidates.end(), before);
}

namespace {

bool stopping_conditions(const SentenceState& state) {
  if (!open_substitution_sites(state.tree).empty()) return false;
  return std::all_of(state.goals.begin(), state.goals.end(),
                     [](const GoalStatus& s) { return s.met; });
}

StepRecord make_record(const PlannerContext& ctx, const SentenceState& before,
                       const Candidate& chosen, int index) {
  StepRecord record;
  record.index = index;
  record.entry = ctx.lexicon[chosen.entry_index].name;
  record.op = chosen.op;
  record.address = chosen.address;
  for (const Atom& a : chosen.new_requirements)
    record.requirements.push_back(a.str());
  for (const Atom& a : chosen.new_contributions)
    record.contributions.push_back(a.str());
  record.before = before.score;
  record.after = chosen.state.score;
  for (const auto& [var, domain] : chosen.state.domains.domains) {
    DomainTraceEntry entry;
    auto it = before.domains.domains.find(var);
    entry.before_size = it == before.domains.domains.end()
                            ? ctx.scene.contexts
                                  .of(chosen.state.assignment.at(var))
                                  .size()
                            : it->second.size();
    entry.after_size = domain.size();
    if (domain.size() <= 10)
      entry.survivors.assign(domain.begin(), domain.end());
    record.domains[var] = std::move(entry);
  }
  record.tree = pretty(chosen.state.tree);
  return record;
}

}  // namespace

StepOutcome step(const PlannerContext& ctx, const SentenceState& state,
                 int step_index) {
  StepOutcome outcome;
  if (stopping_conditions(state)) {
    outcome.status = StepOutcome::Status::Done;
    return outcome;
  }
  std::vector<Candidate> candidates =
      applicable_extensions(ctx, state, &outcome.dropped);
  rank(ctx, candidates);
  for (Candidate& candidate : candidates) {
    // "provided progress is being made": strict lexicographic improvement
    if (compare_scores(candidate.state.score, state.score,
                       ctx.config.score_order) < 0) {
      outcome.status = StepOutcome::Status::Committed;
      outcome.record = make_record(ctx, state, candidate, step_index);
      outcome.record.dropped = outcome.dropped;
      outcome.next = std::move(candidate.state);
      return outcome;
    }
  }
  outcome.status = StepOutcome::Status::NoProgress;
  return outcome;
}

SentenceState initial_state(const PlannerContext& ctx,
                            const Symbol& root_category) {
  // a bare identification request pre-intends the start variable; plans with
  // brand-new material resolve intent by solving against speaker knowledge
  std::vector<const Goal*> identify;
  for (const Goal& g : ctx.goal_spec.goals)
    if (g.type == Goal::Type::Identify) identify.push_back(&g);

  SentenceState state;
  std::vector<Symbol> root_indices;
  if (identify.size() == 1 && ctx.goal_spec.brand_new.empty()) {
    Symbol var = "Root.0";
    root_indices.push_back(var);
    state.assignment[var] = identify.front()->entity;
  }
  state.tree = start_tree(root_category, std::move(root_indices));
  state.domains = init_domains(state.assignment, ctx.goal_spec.brand_new,
                               ctx.scene.contexts);
  state.goals = goals_conveyed(ctx, state);
  state.score.unmet_goals = count_unmet(state.goals);
  state.score.distractor_mass = distractor_mass(ctx, state);
  state.score.open_sites = 1;
  state.score.specificity = 0;
  return state;
}

GenerateOutcome generate(const PlannerContext& ctx,
                         const Symbol& root_category) {
  if (ctx.config.max_steps < 1) throw Error("max_steps must be at least 1");

  GenerateOutcome outcome;
  SentenceState state = initial_state(ctx, root_category);
  std::string stop_reason;
  for (int i = 1;; ++i) {
    if (i > ctx.config.max_steps) {
      stop_reason = "step limit (" + std::to_string(ctx.config.max_steps) +
                    ") reached";
      break;
    }
    StepOutcome result = step(ctx, state, i);
    if (result.status == StepOutcome::Status::Done) {
      outcome.success = true;
      break;
    }
    if (result.status == StepOutcome::Status::NoProgress) {
      stop_reason = "no candidate improves the current state";
      break;
    }
    outcome.trace.push_back(result.record);
    state = std::move(*result.next);
  }

  outcome.final_state = std::move(state);
  if (outcome.success) {
    outcome.words = linearize(outcome.final_state.tree);
    return outcome;
  }

  outcome.reason = stop_reason;
  for (const auto& [path, node] : open_substitution_sites(outcome.final_state.tree)) {
    outcome.incomplete = true;
    outcome.open_site_addresses.push_back(node.category + "@" + gorn_str(path));
  }
  for (const GoalStatus& status : outcome.final_state.goals) {
    if (status.met) continue;
    outcome.unmet_goals.push_back(status.goal.str());
    if (status.goal.type == Goal::Type::Identify) {
      outcome.ambiguous = true;
      for (const auto& [var, entity] : outcome.final_state.assignment)
        if (entity == status.goal.entity)
          outcome.ambiguous_variables.push_back(var);
    } else {
      outcome.unconveyed = true;
    }
  }
  return outcome;
}

}  // namespace sentplan
