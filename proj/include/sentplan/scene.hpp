#pragma once

#include <set>
#include <string>
#include <vector>

#include "sentplan/knowledge.hpp"
#include "sentplan/reference.hpp"
#include "sentplan/term.hpp"

namespace sentplan {

/// A loaded scene: entities with context sets plus the modal fact/rule store.
/// Salience facts (most-salient/1) are derived from context-set asymmetry at
/// load time: e is most salient when e sits in every other entity's context
/// set and nothing else sits in e's.
struct Scene {
  std::vector<Symbol> entities;  // declaration order
  ContextSets contexts;
  KnowledgeBase kb;

  bool has_entity(const Symbol& id) const;
};

Scene load_scene(const std::string& text, const std::string& filename = "scene");

struct Goal {
  enum class Type { Identify, Communicate, BrandNew };
  Type type = Type::Identify;
  Symbol entity;               // Identify / BrandNew
  Atom atom;                   // Communicate
  std::vector<Atom> features;  // BrandNew: features that must be conveyed

  std::string str() const;
};

struct GoalSpec {
  Symbol root;                      // default root category
  std::vector<Goal> goals;
  std::set<Symbol> brand_new;       // entity ids excluded from reference domains
};

GoalSpec load_goals(const std::string& text, const std::string& filename = "goals");

}  // namespace sentplan
