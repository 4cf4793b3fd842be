#include "sentplan/knowledge.hpp"

#include <algorithm>
#include <set>

#include "sentplan/errors.hpp"

namespace sentplan {

const char* modality_name(Modality m) {
  return m == Modality::Speaker ? "speaker" : "common";
}

void KnowledgeBase::check_arity(const Atom& atom) {
  auto [it, inserted] = arities_.emplace(atom.predicate, atom.args.size());
  if (!inserted && it->second != atom.args.size())
    throw ArityClash("predicate '" + atom.predicate + "' used with arity " +
                     std::to_string(atom.args.size()) + " but declared with " +
                     std::to_string(it->second));
}

void KnowledgeBase::assert_fact(Modality modality, Atom atom) {
  if (!atom.ground())
    throw NonGroundFact("fact " + atom.str() + " contains variables");
  for (const Term& a : atom.args)
    if (a.depth() > kMaxTermDepth)
      throw Error("term nesting deeper than " +
                  std::to_string(kMaxTermDepth) + " in " + atom.str());
  check_arity(atom);
  ModalFact fact{modality, std::move(atom)};
  if (std::find(facts_.begin(), facts_.end(), fact) != facts_.end()) return;
  fact_index_[fact.atom.predicate].push_back(facts_.size());
  facts_.push_back(std::move(fact));
}

void KnowledgeBase::add_rule(InferenceRule rule) {
  if (rule.body.size() > static_cast<std::size_t>(kMaxRuleBody))
    throw Error("rule body longer than " + std::to_string(kMaxRuleBody) +
                " for head " + rule.head.str());
  std::set<Symbol> head_vars, body_vars;
  rule.head.collect_variables(head_vars);
  for (const Atom& a : rule.body) a.collect_variables(body_vars);
  for (const Symbol& v : head_vars)
    if (!body_vars.count(v))
      throw Error("rule for " + rule.head.str() +
                  " is not range-restricted: variable " + v +
                  " missing from body");
  check_arity(rule.head);
  for (const Atom& a : rule.body) check_arity(a);
  rule_index_[rule.head.predicate].push_back(rules_.size());
  rules_.push_back(std::move(rule));
}

std::size_t KnowledgeBase::fact_count() const { return facts_.size(); }

std::size_t KnowledgeBase::fact_count(Modality modality) const {
  return static_cast<std::size_t>(
      std::count_if(facts_.begin(), facts_.end(),
                    [&](const ModalFact& f) { return f.modality == modality; }));
}

namespace {

bool visible(Modality item, Modality query) {
  // Common facts/rules serve both modalities; Speaker items only Speaker.
  return item == Modality::Common || query == Modality::Speaker;
}

struct Sld {
  Sld(const std::vector<ModalFact>& facts_in,
      const std::vector<InferenceRule>& rules_in,
      const std::map<Symbol, std::vector<std::size_t>>& fact_index_in,
      const std::map<Symbol, std::vector<std::size_t>>& rule_index_in)
      : facts(facts_in),
        rules(rules_in),
        fact_index(fact_index_in),
        rule_index(rule_index_in) {}

  const std::vector<ModalFact>& facts;
  const std::vector<InferenceRule>& rules;
  const std::map<Symbol, std::vector<std::size_t>>& fact_index;
  const std::map<Symbol, std::vector<std::size_t>>& rule_index;
  Modality modality = Modality::Common;
  bool first_only = false;
  bool done = false;
  std::size_t cut_branches = 0;
  int rename_counter = 0;
  std::set<Binding> answers;
  const std::set<Symbol>* query_vars = nullptr;

  void record(const Binding& binding) {
    Binding restricted;
    for (const Symbol& v : *query_vars) {
      Term t = resolve(Term::variable(v), binding);
      if (!t.ground()) return;  // only ground answers count
      restricted[v] = t;
    }
    answers.insert(std::move(restricted));
    if (first_only) done = true;
  }

  Atom rename_atom(const Atom& atom, const std::string& suffix) {
    Atom out;
    out.predicate = atom.predicate;
    out.args.reserve(atom.args.size());
    for (const Term& t : atom.args) out.args.push_back(rename_term(t, suffix));
    return out;
  }

  Term rename_term(const Term& t, const std::string& suffix) {
    switch (t.kind()) {
      case Term::Kind::Constant:
        return t;
      case Term::Kind::Variable:
        return Term::variable(t.name() + suffix);
      case Term::Kind::Apply: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) args.push_back(rename_term(a, suffix));
        return Term::apply(t.name(), std::move(args));
      }
    }
    return t;
  }

  void solve(const std::vector<Atom>& goals, std::size_t index,
             const Binding& binding, int budget) {
    if (done) return;
    if (index == goals.size()) {
      record(binding);
      return;
    }
    Atom goal = resolve(goals[index], binding);
    if (auto it = fact_index.find(goal.predicate); it != fact_index.end()) {
      for (std::size_t fi : it->second) {
        if (done) return;
        const ModalFact& fact = facts[fi];
        if (!visible(fact.modality, modality)) continue;
        Binding extended = binding;
        if (unify(goal, fact.atom, extended))
          solve(goals, index + 1, extended, budget);
      }
    }
    if (auto it = rule_index.find(goal.predicate); it != rule_index.end()) {
      for (std::size_t ri : it->second) {
        if (done) return;
        const InferenceRule& rule = rules[ri];
        if (!visible(rule.modality, modality)) continue;
        if (budget <= 0) {
          ++cut_branches;
          continue;
        }
        std::string suffix = "~" + std::to_string(++rename_counter);
        Binding extended = binding;
        if (!unify(goal, rename_atom(rule.head, suffix), extended)) continue;
        std::vector<Atom> expanded;
        expanded.reserve(rule.body.size() + goals.size() - index - 1);
        for (const Atom& b : rule.body)
          expanded.push_back(rename_atom(b, suffix));
        for (std::size_t i = index + 1; i < goals.size(); ++i)
          expanded.push_back(goals[i]);
        solve(expanded, 0, extended, budget - 1);
      }
    }
  }
};

}  // namespace

ProveResult KnowledgeBase::prove(Modality modality, std::vector<Atom> query,
                                 int depth) const {
  std::set<Symbol> vars;
  for (const Atom& a : query) a.collect_variables(vars);

  Sld engine(facts_, rules_, fact_index_, rule_index_);
  engine.modality = modality;
  engine.query_vars = &vars;
  engine.solve(query, 0, Binding{}, depth);

  ProveResult result;
  result.cut_branches = engine.cut_branches;
  result.solutions.assign(engine.answers.begin(), engine.answers.end());
  return result;
}

bool KnowledgeBase::provable(Modality modality, const Atom& goal,
                             int depth) const {
  std::set<Symbol> vars;
  goal.collect_variables(vars);

  Sld engine(facts_, rules_, fact_index_, rule_index_);
  engine.modality = modality;
  engine.first_only = true;
  engine.query_vars = &vars;
  std::vector<Atom> query{goal};
  engine.solve(query, 0, Binding{}, depth);
  return !engine.answers.empty();
}

bool KnowledgeBase::prove_hypothetical(std::span<const Atom> added,
                                       Modality modality, const Atom& goal,
                                       int depth) const {
  for (const Atom& a : added)
    if (!a.ground())
      throw NonGroundFact("hypothetical addition " + a.str() +
                          " contains variables");
  KnowledgeBase scratch = *this;
  for (const Atom& a : added) scratch.assert_fact(modality, a);
  return scratch.provable(modality, goal, depth);
}

}  // namespace sentplan
