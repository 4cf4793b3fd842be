#include "sentplan/scene.hpp"

#include <algorithm>

#include "json_util.hpp"
#include "sentplan/errors.hpp"

namespace sentplan {

using jsonio::Json;
using jsonio::TermMode;

bool Scene::has_entity(const Symbol& id) const {
  return std::find(entities.begin(), entities.end(), id) != entities.end();
}

namespace {

void derive_salience(Scene& scene) {
  for (const Symbol& e : scene.entities) {
    const std::set<Symbol>& own = scene.contexts.of(e);
    bool top = own.size() == 1 && own.count(e);
    if (!top) continue;
    for (const Symbol& other : scene.entities) {
      if (other == e) continue;
      if (!scene.contexts.of(other).count(e)) {
        top = false;
        break;
      }
    }
    if (top)
      scene.kb.assert_fact(Modality::Common,
                           Atom{"most-salient", {Term::constant(e)}});
  }
}

}  // namespace

Scene load_scene(const std::string& text, const std::string& filename) {
  Json doc = jsonio::parse_document(text, filename);
  if (!doc.is_object())
    throw ParseError(filename + ": expected a scene object");

  Scene scene;
  std::set<Symbol> seen;
  for (const Json& j : doc.value("entities", Json::array())) {
    if (!j.is_object() || !j.contains("id"))
      throw ParseError(filename + ": entity needs an \"id\"");
    Symbol id = j["id"].get<std::string>();
    if (!seen.insert(id).second)
      throw ParseError(filename + ": duplicate entity '" + id + "'");
    scene.entities.push_back(id);
    if (j.contains("context_set")) {
      std::set<Symbol> ctx;
      for (const Json& e : j["context_set"]) ctx.insert(e.get<std::string>());
      scene.contexts.sets[id] = std::move(ctx);
    }
  }
  // default context set: everything depicted is salient
  std::set<Symbol> all(scene.entities.begin(), scene.entities.end());
  for (const Symbol& id : scene.entities)
    if (!scene.contexts.has(id)) scene.contexts.sets[id] = all;

  for (const Json& j : doc.value("facts", Json::array())) {
    if (!j.is_object() || !j.contains("modality") || !j.contains("atom"))
      throw ParseError(filename + ": fact needs \"modality\" and \"atom\"");
    Modality m = jsonio::parse_modality(j["modality"], filename);
    Atom atom =
        jsonio::parse_atom(j["atom"], TermMode::Ground, nullptr, filename);
    scene.kb.assert_fact(m, std::move(atom));
  }

  for (const Json& j : doc.value("rules", Json::array())) {
    if (!j.is_object() || !j.contains("modality") || !j.contains("head"))
      throw ParseError(filename + ": rule needs \"modality\" and \"head\"");
    InferenceRule rule;
    rule.modality = jsonio::parse_modality(j["modality"], filename);
    rule.head = jsonio::parse_atom(j["head"], TermMode::RuleVariables, nullptr,
                                   filename);
    for (const Json& b : j.value("body", Json::array()))
      rule.body.push_back(
          jsonio::parse_atom(b, TermMode::RuleVariables, nullptr, filename));
    scene.kb.add_rule(std::move(rule));
  }

  derive_salience(scene);
  return scene;
}

std::string Goal::str() const {
  switch (type) {
    case Type::Identify:
      return "identify(" + entity + ")";
    case Type::Communicate:
      return "communicate(" + atom.str() + ")";
    case Type::BrandNew: {
      std::string out = "brand-new(" + entity;
      for (const Atom& f : features) out += ", " + f.str();
      return out + ")";
    }
  }
  return "";
}

GoalSpec load_goals(const std::string& text, const std::string& filename) {
  Json doc = jsonio::parse_document(text, filename);
  if (!doc.is_object())
    throw ParseError(filename + ": expected a goals object");

  GoalSpec spec;
  spec.root = doc.value("root", std::string("S"));

  for (const Json& j : doc.value("brand_new", Json::array())) {
    if (!j.is_object() || !j.contains("entity"))
      throw ParseError(filename + ": brand_new item needs an \"entity\"");
    Goal goal;
    goal.type = Goal::Type::BrandNew;
    goal.entity = j["entity"].get<std::string>();
    for (const Json& f : j.value("features", Json::array()))
      goal.features.push_back(
          jsonio::parse_atom(f, TermMode::Ground, nullptr, filename));
    spec.brand_new.insert(goal.entity);
    spec.goals.push_back(std::move(goal));
  }
  for (const Json& j : doc.value("identify", Json::array())) {
    Goal goal;
    goal.type = Goal::Type::Identify;
    goal.entity = j.get<std::string>();
    spec.goals.push_back(std::move(goal));
  }
  for (const Json& j : doc.value("communicate", Json::array())) {
    Goal goal;
    goal.type = Goal::Type::Communicate;
    goal.atom = jsonio::parse_atom(j, TermMode::Ground, nullptr, filename);
    spec.goals.push_back(std::move(goal));
  }
  return spec;
}

}  // namespace sentplan
