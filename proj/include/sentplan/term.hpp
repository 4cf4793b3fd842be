#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace sentplan {

using Symbol = std::string;

/// First-order terms: constants, variables, and uninterpreted function
/// applications like start(t1). Function terms are names, never evaluated.
class Term {
 public:
  enum class Kind { Constant, Variable, Apply };

  Term() = default;
  static Term constant(Symbol name);
  static Term variable(Symbol name);
  static Term apply(Symbol function, std::vector<Term> args);

  Kind kind() const { return kind_; }
  const Symbol& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  bool is_constant() const { return kind_ == Kind::Constant; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool ground() const;
  int depth() const;  // constants/variables are depth 1
  void collect_variables(std::set<Symbol>& out) const;
  std::string str() const;

  bool operator==(const Term& other) const;
  bool operator<(const Term& other) const;

 private:
  Kind kind_ = Kind::Constant;
  Symbol name_;
  std::vector<Term> args_;
};

struct Atom {
  Symbol predicate;
  std::vector<Term> args;

  bool ground() const;
  void collect_variables(std::set<Symbol>& out) const;
  std::string str() const;

  bool operator==(const Atom& other) const;
  bool operator<(const Atom& other) const;
};

/// Substitution from variable names to terms.
using Binding = std::map<Symbol, Term>;

/// Resolve a term under a binding, following variable chains.
Term resolve(const Term& term, const Binding& binding);
Atom resolve(const Atom& atom, const Binding& binding);

/// Two-sided unification; extends `binding` on success.
bool unify(const Term& a, const Term& b, Binding& binding);
bool unify(const Atom& a, const Atom& b, Binding& binding);

std::string binding_str(const Binding& binding);

}  // namespace sentplan
