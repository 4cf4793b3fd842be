#include "sentplan/reference.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "sentplan/errors.hpp"

namespace sentplan {

const std::set<Symbol>& ContextSets::of(const Symbol& entity) const {
  auto it = sets.find(entity);
  if (it == sets.end())
    throw MissingContextSet("entity '" + entity + "' has no context set");
  return it->second;
}

namespace {

std::set<Symbol> domain_variables(const Atom& atom,
                                  const ReferenceDomains& domains) {
  std::set<Symbol> vars;
  atom.collect_variables(vars);
  std::set<Symbol> tracked;
  for (const Symbol& v : vars)
    if (domains.tracks(v)) tracked.insert(v);
  return tracked;
}

/// Grounds everything except the listed domain variables, which stay free.
Atom fix_intended(const Atom& atom, const std::set<Symbol>& keep_free,
                  const std::map<Symbol, Symbol>& assignment) {
  Binding binding;
  std::set<Symbol> vars;
  atom.collect_variables(vars);
  for (const Symbol& v : vars) {
    if (keep_free.count(v)) continue;
    auto it = assignment.find(v);
    if (it == assignment.end())
      throw Error("variable '" + v + "' in constraint " + atom.str() +
                  " has no intended entity");
    binding[v] = Term::constant(it->second);
  }
  return resolve(atom, binding);
}

/// True iff `value` for `var` has support: some choice of the constraint's
/// other domain variables from their current domains proves the atom.
bool supported(const KnowledgeBase& kb, const Atom& constraint,
               const Symbol& var, const Symbol& value,
               const ReferenceDomains& domains,
               const std::map<Symbol, Symbol>& assignment, int depth) {
  std::set<Symbol> dvars = domain_variables(constraint, domains);
  std::set<Symbol> others = dvars;
  others.erase(var);
  Atom fixed = fix_intended(constraint, dvars, assignment);
  Binding pin;
  pin[var] = Term::constant(value);
  fixed = resolve(fixed, pin);
  ProveResult proof = kb.prove(Modality::Common, {fixed}, depth);
  for (const Binding& solution : proof.solutions) {
    bool in_domains = true;
    for (const Symbol& other : others) {
      auto it = solution.find(other);
      if (it == solution.end()) continue;  // other var absent after fixing
      if (!it->second.is_constant() ||
          !domains.domains.at(other).count(it->second.name())) {
        in_domains = false;
        break;
      }
    }
    if (in_domains) return true;
  }
  return false;
}

void enroll_variables(ReferenceDomains& domains, const Atom& atom,
                      const std::map<Symbol, Symbol>& assignment,
                      const std::set<Symbol>& brand_new,
                      const ContextSets& contexts) {
  std::set<Symbol> vars;
  atom.collect_variables(vars);
  for (const Symbol& v : vars) {
    if (domains.tracks(v)) continue;
    auto it = assignment.find(v);
    if (it == assignment.end())
      throw Error("constraint " + atom.str() + " mentions variable '" + v +
                  "' with no intended entity");
    if (brand_new.count(it->second)) continue;  // fresh file card
    domains.domains[v] = contexts.of(it->second);
  }
}

}  // namespace

ReferenceDomains init_domains(const std::map<Symbol, Symbol>& assignment,
                              const std::set<Symbol>& brand_new,
                              const ContextSets& contexts) {
  ReferenceDomains out;
  for (const auto& [variable, entity] : assignment) {
    if (brand_new.count(entity)) continue;
    out.domains[variable] = contexts.of(entity);
  }
  return out;
}

ReferenceDomains filter_distractors(const KnowledgeBase& kb,
                                    ReferenceDomains domains,
                                    std::span<const Atom> new_requirements,
                                    const std::map<Symbol, Symbol>& assignment,
                                    const std::set<Symbol>& brand_new,
                                    const ContextSets& contexts,
                                    int prover_depth) {
  // enroll unseen discourse-old variables before admitting constraints
  for (const auto& [variable, entity] : assignment) {
    if (domains.tracks(variable) || brand_new.count(entity)) continue;
    domains.domains[variable] = contexts.of(entity);
  }
  for (const Atom& atom : new_requirements) {
    enroll_variables(domains, atom, assignment, brand_new, contexts);
    if (domain_variables(atom, domains).empty())
      continue;  // only brand-new or no variables: no hearer-side ambiguity
    if (std::find(domains.constraints.begin(), domains.constraints.end(),
                  atom) == domains.constraints.end())
      domains.constraints.push_back(atom);
  }

  // AC-3 over (constraint, variable) arcs
  std::deque<std::pair<std::size_t, Symbol>> queue;
  auto enqueue_all = [&](const Symbol& changed) {
    for (std::size_t c = 0; c < domains.constraints.size(); ++c) {
      std::set<Symbol> dvars =
          domain_variables(domains.constraints[c], domains);
      if (!dvars.count(changed)) continue;
      for (const Symbol& v : dvars) {
        if (v == changed) continue;
        std::pair<std::size_t, Symbol> arc{c, v};
        if (std::find(queue.begin(), queue.end(), arc) == queue.end())
          queue.push_back(arc);
      }
    }
  };
  for (std::size_t c = 0; c < domains.constraints.size(); ++c)
    for (const Symbol& v : domain_variables(domains.constraints[c], domains))
      queue.emplace_back(c, v);

  while (!queue.empty()) {
    auto [c, var] = queue.front();
    queue.pop_front();
    const Atom& constraint = domains.constraints[c];
    std::set<Symbol>& domain = domains.domains[var];
    std::vector<Symbol> doomed;
    for (const Symbol& value : domain)
      if (!supported(kb, constraint, var, value, domains, assignment,
                     prover_depth))
        doomed.push_back(value);
    if (doomed.empty()) continue;
    for (const Symbol& value : doomed) domain.erase(value);
    if (domain.empty())
      throw EmptyDomain("variable '" + var + "' lost every alternative under " +
                        constraint.str());
    enqueue_all(var);
  }
  return domains;
}

UniqueReport verify_unique(const KnowledgeBase& kb,
                           const ReferenceDomains& domains,
                           const std::map<Symbol, Symbol>& assignment,
                           std::uint64_t bound, int prover_depth) {
  std::map<Atom, bool> ground_cache;
  auto holds = [&](const Atom& ground) {
    auto it = ground_cache.find(ground);
    if (it != ground_cache.end()) return it->second;
    bool value = kb.provable(Modality::Common, ground, prover_depth);
    ground_cache.emplace(ground, value);
    return value;
  };
  std::vector<Symbol> vars;
  std::uint64_t combinations = 1;
  for (const auto& [variable, domain] : domains.domains) {
    vars.push_back(variable);
    if (domain.empty()) combinations = 0;
    if (combinations > bound / std::max<std::uint64_t>(domain.size(), 1))
      throw SearchBoundExceeded("candidate combinations exceed " +
                                std::to_string(bound));
    combinations *= std::max<std::uint64_t>(domain.size(), 1);
  }
  if (combinations > bound)
    throw SearchBoundExceeded("candidate combinations exceed " +
                              std::to_string(bound));

  // constraints checked as soon as their last domain variable is assigned
  std::vector<std::set<Symbol>> constraint_vars;
  constraint_vars.reserve(domains.constraints.size());
  for (const Atom& c : domains.constraints)
    constraint_vars.push_back(domain_variables(c, domains));

  UniqueReport report;
  for (const Symbol& v : vars) report.projections[v] = {};

  std::map<Symbol, Symbol> chosen;
  std::function<void(std::size_t)> descend = [&](std::size_t i) {
    if (i == vars.size()) {
      ++report.solutions;
      for (const auto& [v, value] : chosen) report.projections[v].insert(value);
      return;
    }
    const Symbol& var = vars[i];
    for (const Symbol& value : domains.domains.at(var)) {
      chosen[var] = value;
      bool consistent = true;
      for (std::size_t c = 0; c < domains.constraints.size() && consistent;
           ++c) {
        const std::set<Symbol>& cv = constraint_vars[c];
        if (cv.empty() || !cv.count(var)) continue;
        bool all_assigned = std::all_of(
            cv.begin(), cv.end(),
            [&](const Symbol& v) { return chosen.count(v) > 0; });
        if (!all_assigned) continue;
        Binding binding;
        std::set<Symbol> atom_vars;
        domains.constraints[c].collect_variables(atom_vars);
        for (const Symbol& v : atom_vars) {
          if (cv.count(v))
            binding[v] = Term::constant(chosen.at(v));
          else
            binding[v] = Term::constant(assignment.at(v));
        }
        consistent = holds(resolve(domains.constraints[c], binding));
      }
      if (consistent) descend(i + 1);
    }
    chosen.erase(var);
  };
  descend(0);

  for (const Symbol& v : vars) {
    auto it = assignment.find(v);
    const std::set<Symbol>& projection = report.projections.at(v);
    report.unique[v] = it != assignment.end() && projection.size() == 1 &&
                       *projection.begin() == it->second;
  }
  return report;
}

}  // namespace sentplan
