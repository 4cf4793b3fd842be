#pragma once

#include <string>

#include "sentplan/cli.hpp"
#include "sentplan/lexicon.hpp"
#include "sentplan/scene.hpp"

namespace fixtures {

inline std::string path(const std::string& name) {
  return std::string(SENTPLAN_FIXTURE_DIR) + "/" + name;
}

inline sentplan::Scene scene(const std::string& name) {
  return sentplan::load_scene(sentplan::cli::read_file(path(name)), name);
}

inline std::vector<sentplan::LexicalEntry> lexicon(const std::string& name) {
  return sentplan::load_lexicon(sentplan::cli::read_file(path(name)), name);
}

inline sentplan::GoalSpec goals(const std::string& name) {
  return sentplan::load_goals(sentplan::cli::read_file(path(name)), name);
}

}  // namespace fixtures
