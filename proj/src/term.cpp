#include "sentplan/term.hpp"

#include <algorithm>
#include <sstream>

namespace sentplan {

Term Term::constant(Symbol name) {
  Term t;
  t.kind_ = Kind::Constant;
  t.name_ = std::move(name);
  return t;
}

Term Term::variable(Symbol name) {
  Term t;
  t.kind_ = Kind::Variable;
  t.name_ = std::move(name);
  return t;
}

Term Term::apply(Symbol function, std::vector<Term> args) {
  Term t;
  t.kind_ = Kind::Apply;
  t.name_ = std::move(function);
  t.args_ = std::move(args);
  return t;
}

bool Term::ground() const {
  if (kind_ == Kind::Variable) return false;
  return std::all_of(args_.begin(), args_.end(),
                     [](const Term& a) { return a.ground(); });
}

int Term::depth() const {
  int deepest = 0;
  for (const Term& a : args_) deepest = std::max(deepest, a.depth());
  return deepest + 1;
}

void Term::collect_variables(std::set<Symbol>& out) const {
  if (kind_ == Kind::Variable) {
    out.insert(name_);
    return;
  }
  for (const Term& a : args_) a.collect_variables(out);
}

std::string Term::str() const {
  if (kind_ != Kind::Apply) return name_;
  std::ostringstream os;
  os << name_ << '(';
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i) os << ',';
    os << args_[i].str();
  }
  os << ')';
  return os.str();
}

bool Term::operator==(const Term& other) const {
  return kind_ == other.kind_ && name_ == other.name_ && args_ == other.args_;
}

bool Term::operator<(const Term& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  if (name_ != other.name_) return name_ < other.name_;
  return std::lexicographical_compare(args_.begin(), args_.end(),
                                      other.args_.begin(), other.args_.end());
}

bool Atom::ground() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& a) { return a.ground(); });
}

void Atom::collect_variables(std::set<Symbol>& out) const {
  for (const Term& a : args) a.collect_variables(out);
}

std::string Atom::str() const {
  std::ostringstream os;
  os << predicate << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    os << args[i].str();
  }
  os << ')';
  return os.str();
}

bool Atom::operator==(const Atom& other) const {
  return predicate == other.predicate && args == other.args;
}

bool Atom::operator<(const Atom& other) const {
  if (predicate != other.predicate) return predicate < other.predicate;
  return std::lexicographical_compare(args.begin(), args.end(),
                                      other.args.begin(), other.args.end());
}

Term resolve(const Term& term, const Binding& binding) {
  switch (term.kind()) {
    case Term::Kind::Constant:
      return term;
    case Term::Kind::Variable: {
      auto it = binding.find(term.name());
      if (it == binding.end()) return term;
      return resolve(it->second, binding);
    }
    case Term::Kind::Apply: {
      std::vector<Term> args;
      args.reserve(term.args().size());
      for (const Term& a : term.args()) args.push_back(resolve(a, binding));
      return Term::apply(term.name(), std::move(args));
    }
  }
  return term;
}

Atom resolve(const Atom& atom, const Binding& binding) {
  Atom out;
  out.predicate = atom.predicate;
  out.args.reserve(atom.args.size());
  for (const Term& a : atom.args) out.args.push_back(resolve(a, binding));
  return out;
}

namespace {

bool occurs(const Symbol& var, const Term& term, const Binding& binding) {
  Term t = resolve(term, binding);
  if (t.is_variable()) return t.name() == var;
  for (const Term& a : t.args())
    if (occurs(var, a, binding)) return true;
  return false;
}

}  // namespace

bool unify(const Term& a, const Term& b, Binding& binding) {
  Term x = resolve(a, binding);
  Term y = resolve(b, binding);
  if (x.is_variable()) {
    if (y.is_variable() && y.name() == x.name()) return true;
    if (occurs(x.name(), y, binding)) return false;
    binding[x.name()] = y;
    return true;
  }
  if (y.is_variable()) return unify(y, x, binding);
  if (x.kind() != y.kind() || x.name() != y.name()) return false;
  if (x.args().size() != y.args().size()) return false;
  for (std::size_t i = 0; i < x.args().size(); ++i)
    if (!unify(x.args()[i], y.args()[i], binding)) return false;
  return true;
}

bool unify(const Atom& a, const Atom& b, Binding& binding) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!unify(a.args[i], b.args[i], binding)) return false;
  return true;
}

std::string binding_str(const Binding& binding) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [var, term] : binding) {
    if (!first) os << ", ";
    first = false;
    os << var << "=" << term.str();
  }
  os << '}';
  return os.str();
}

}  // namespace sentplan
