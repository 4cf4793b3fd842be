#pragma once

#include <cctype>
#include <set>
#include <string>

#include "json.hpp"
#include "sentplan/errors.hpp"
#include "sentplan/knowledge.hpp"
#include "sentplan/term.hpp"

namespace sentplan::jsonio {

using Json = nlohmann::ordered_json;

inline bool looks_like_variable(const std::string& token) {
  return !token.empty() && std::isupper(static_cast<unsigned char>(token[0]));
}

/// How bare string tokens resolve to variables.
enum class TermMode {
  Ground,         // variables are a parse error
  RuleVariables,  // uppercase-first tokens are variables
  EntryParams,    // tokens in the param set are variables; uppercase
                  // tokens outside it are UnboundVariable errors
};

inline Term parse_term(const Json& j, TermMode mode,
                       const std::set<Symbol>* params,
                       const std::string& where) {
  if (j.is_string()) {
    std::string token = j.get<std::string>();
    if (token.empty()) throw ParseError(where + ": empty term");
    switch (mode) {
      case TermMode::Ground:
        if (looks_like_variable(token))
          throw ParseError(where + ": variable '" + token +
                           "' not allowed in ground context");
        return Term::constant(token);
      case TermMode::RuleVariables:
        return looks_like_variable(token) ? Term::variable(token)
                                          : Term::constant(token);
      case TermMode::EntryParams:
        if (params && params->count(token)) return Term::variable(token);
        if (looks_like_variable(token))
          throw UnboundVariable(where + ": variable '" + token +
                                "' does not occur in params");
        return Term::constant(token);
    }
  }
  if (j.is_array()) {
    if (j.empty() || !j[0].is_string())
      throw ParseError(where + ": function term needs a leading symbol");
    std::string fn = j[0].get<std::string>();
    if (looks_like_variable(fn))
      throw ParseError(where + ": function symbol '" + fn +
                       "' may not be a variable");
    std::vector<Term> args;
    for (std::size_t i = 1; i < j.size(); ++i)
      args.push_back(parse_term(j[i], mode, params, where));
    Term t = Term::apply(fn, std::move(args));
    if (t.depth() > kMaxTermDepth)
      throw ParseError(where + ": term " + t.str() + " nests deeper than " +
                       std::to_string(kMaxTermDepth));
    return t;
  }
  throw ParseError(where + ": term must be a string or a list");
}

inline Atom parse_atom(const Json& j, TermMode mode,
                       const std::set<Symbol>* params,
                       const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw ParseError(where + ": atom must be [predicate, term...]");
  Atom atom;
  atom.predicate = j[0].get<std::string>();
  if (looks_like_variable(atom.predicate))
    throw ParseError(where + ": predicate '" + atom.predicate +
                     "' may not be a variable");
  for (std::size_t i = 1; i < j.size(); ++i)
    atom.args.push_back(parse_term(j[i], mode, params, where));
  return atom;
}

inline Json parse_document(const std::string& text,
                           const std::string& filename) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(filename + ": " + e.what());
  }
}

inline Modality parse_modality(const Json& j, const std::string& where) {
  std::string m = j.get<std::string>();
  if (m == "speaker") return Modality::Speaker;
  if (m == "common") return Modality::Common;
  throw ParseError(where + ": modality must be \"speaker\" or \"common\", got \"" +
                   m + "\"");
}

}  // namespace sentplan::jsonio
