#pragma once

// Test-only oracles, independent of the implementation paths they check:
// bottom-up fixpoint saturation for the prover, and exhaustive enumeration
// for reference domains.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sentplan/knowledge.hpp"
#include "sentplan/reference.hpp"
#include "sentplan/term.hpp"

namespace oracles {

using namespace sentplan;

inline bool view_sees(Modality item, Modality view) {
  return item == Modality::Common || view == Modality::Speaker;
}

/// Naive bottom-up closure of the facts under the rules, as seen from the
/// given modality.
inline std::set<Atom> saturate(const KnowledgeBase& kb, Modality view) {
  std::set<Atom> derived;
  for (const ModalFact& f : kb.facts())
    if (view_sees(f.modality, view)) derived.insert(f.atom);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const InferenceRule& rule : kb.rules()) {
      if (!view_sees(rule.modality, view)) continue;
      // join the body left to right against the derived set
      std::vector<Binding> partial{Binding{}};
      for (const Atom& body_atom : rule.body) {
        std::vector<Binding> next;
        for (const Binding& binding : partial) {
          Atom pattern = resolve(body_atom, binding);
          for (const Atom& fact : derived) {
            Binding extended = binding;
            if (unify(pattern, fact, extended)) next.push_back(extended);
          }
        }
        partial = std::move(next);
      }
      for (const Binding& binding : partial) {
        Atom head = resolve(rule.head, binding);
        if (head.ground() && derived.insert(head).second) changed = true;
      }
    }
  }
  return derived;
}

/// Every distinct ground term appearing as a fact argument (with subterms).
inline std::set<Term> ground_terms(const KnowledgeBase& kb) {
  std::set<Term> terms;
  std::function<void(const Term&)> add = [&](const Term& t) {
    terms.insert(t);
    for (const Term& a : t.args()) add(a);
  };
  for (const ModalFact& f : kb.facts())
    for (const Term& t : f.atom.args) add(t);
  return terms;
}

/// All candidate ground atoms for every predicate in the KB over the ground
/// term universe. Capped per predicate to keep fixtures fast.
inline std::vector<Atom> ground_atom_universe(const KnowledgeBase& kb,
                                              std::size_t per_predicate_cap =
                                                  200000) {
  std::set<Term> term_set = ground_terms(kb);
  std::vector<Term> terms(term_set.begin(), term_set.end());
  std::vector<Atom> atoms;
  for (const auto& [predicate, arity] : kb.arities()) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < arity; ++i) total *= terms.size();
    if (total > per_predicate_cap) continue;
    std::vector<std::size_t> pick(arity, 0);
    while (true) {
      Atom atom;
      atom.predicate = predicate;
      for (std::size_t i = 0; i < arity; ++i) atom.args.push_back(terms[pick[i]]);
      atoms.push_back(std::move(atom));
      std::size_t level = 0;
      while (level < arity && ++pick[level] == terms.size()) {
        pick[level] = 0;
        ++level;
      }
      if (level == arity) break;
      if (arity == 0) break;
    }
    if (arity == 0) {
      Atom atom;
      atom.predicate = predicate;
      atoms.push_back(std::move(atom));
    }
  }
  return atoms;
}

struct BruteForceResult {
  std::map<Symbol, std::set<Symbol>> projections;
  std::uint64_t solutions = 0;
};

/// Exhaustive enumeration of the constraint store's joint solutions over the
/// given (pre-filtering) domains. Non-domain variables are fixed to their
/// intended entities; every constraint is checked fully ground.
inline BruteForceResult brute_force_solutions(
    const KnowledgeBase& kb,
    const std::map<Symbol, std::set<Symbol>>& domains,
    const std::vector<Atom>& constraints,
    const std::map<Symbol, Symbol>& assignment) {
  std::vector<Symbol> vars;
  for (const auto& [v, d] : domains) vars.push_back(v);

  BruteForceResult result;
  for (const Symbol& v : vars) result.projections[v] = {};

  std::map<Atom, bool> cache;
  auto holds = [&](const Atom& ground) {
    auto it = cache.find(ground);
    if (it != cache.end()) return it->second;
    bool value = kb.provable(Modality::Common, ground);
    cache.emplace(ground, value);
    return value;
  };

  std::map<Symbol, Symbol> chosen;
  std::function<void(std::size_t)> descend = [&](std::size_t i) {
    if (i == vars.size()) {
      for (const Atom& c : constraints) {
        Binding binding;
        std::set<Symbol> cvars;
        c.collect_variables(cvars);
        for (const Symbol& v : cvars) {
          auto it = chosen.find(v);
          binding[v] = Term::constant(it != chosen.end() ? it->second
                                                         : assignment.at(v));
        }
        if (!holds(resolve(c, binding))) return;
      }
      ++result.solutions;
      for (const auto& [v, value] : chosen) result.projections[v].insert(value);
      return;
    }
    for (const Symbol& value : domains.at(vars[i])) {
      chosen[vars[i]] = value;
      descend(i + 1);
    }
    chosen.erase(vars[i]);
  };
  descend(0);
  return result;
}

/// A randomized miniature scene for AC/enumeration agreement checks:
/// two entity types of up to five members, random unary and binary facts,
/// up to four constrained variables, and up to six constraints that all hold
/// under the intended assignment (mirroring the planner's admission rule).
struct RandomCase {
  KnowledgeBase kb;
  ContextSets contexts;
  std::map<Symbol, Symbol> assignment;
  std::vector<Atom> constraints;
  std::map<Symbol, std::set<Symbol>> initial_domains;
};

template <class Rng>
RandomCase random_case(Rng& rng) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  };

  RandomCase out;
  int na = pick(1, 5), nb = pick(1, 5);
  std::vector<Symbol> as, bs, all;
  for (int i = 0; i < na; ++i) as.push_back("a" + std::to_string(i));
  for (int i = 0; i < nb; ++i) bs.push_back("b" + std::to_string(i));
  for (const Symbol& e : as) all.push_back(e);
  for (const Symbol& e : bs) all.push_back(e);

  for (const Symbol& e : as)
    out.kb.assert_fact(Modality::Common, Atom{"ta", {Term::constant(e)}});
  for (const Symbol& e : bs)
    out.kb.assert_fact(Modality::Common, Atom{"tb", {Term::constant(e)}});
  for (const Symbol& e : as)
    if (chance(0.5))
      out.kb.assert_fact(Modality::Common, Atom{"pa", {Term::constant(e)}});
  for (const Symbol& e : bs)
    if (chance(0.5))
      out.kb.assert_fact(Modality::Common, Atom{"pb", {Term::constant(e)}});
  for (const Symbol& x : as)
    for (const Symbol& y : bs)
      if (chance(0.4))
        out.kb.assert_fact(Modality::Common,
                           Atom{"rel", {Term::constant(x), Term::constant(y)}});

  std::set<Symbol> everything(all.begin(), all.end());
  for (const Symbol& e : all) out.contexts.sets[e] = everything;

  int nvars = pick(1, 4);
  std::vector<Symbol> vars;
  for (int i = 0; i < nvars; ++i) {
    Symbol v = "V" + std::to_string(i);
    vars.push_back(v);
    const std::vector<Symbol>& pool = (i % 2 == 0) ? as : bs;
    out.assignment[v] = pool[static_cast<std::size_t>(
        pick(0, static_cast<int>(pool.size()) - 1))];
    out.initial_domains[v] = everything;
  }

  auto holds = [&](const Atom& constraint) {
    Binding binding;
    std::set<Symbol> cvars;
    constraint.collect_variables(cvars);
    for (const Symbol& v : cvars)
      binding[v] = Term::constant(out.assignment.at(v));
    return out.kb.prove(Modality::Common, {resolve(constraint, binding)})
        .provable();
  };

  std::vector<Atom> pool;
  for (int i = 0; i < nvars; ++i) {
    Symbol v = vars[static_cast<std::size_t>(i)];
    pool.push_back(Atom{i % 2 == 0 ? "ta" : "tb", {Term::variable(v)}});
    pool.push_back(Atom{i % 2 == 0 ? "pa" : "pb", {Term::variable(v)}});
  }
  for (int i = 0; i < nvars; ++i)
    for (int j = 0; j < nvars; ++j)
      if (i % 2 == 0 && j % 2 == 1)
        pool.push_back(Atom{"rel",
                            {Term::variable(vars[static_cast<std::size_t>(i)]),
                             Term::variable(vars[static_cast<std::size_t>(j)])}});

  std::shuffle(pool.begin(), pool.end(), rng);
  int budget = pick(1, 6);
  for (const Atom& constraint : pool) {
    if (static_cast<int>(out.constraints.size()) >= budget) break;
    if (holds(constraint)) out.constraints.push_back(constraint);
  }
  return out;
}

}  // namespace oracles
