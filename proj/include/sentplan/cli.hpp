#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sentplan/lexicon.hpp"
#include "sentplan/planner.hpp"
#include "sentplan/scene.hpp"

namespace sentplan::cli {

struct RunConfig {
  std::string scene_path;
  std::string lexicon_path;
  std::string goals_path;
  std::string root_category;  // empty: use the goals file's root
  bool trace = false;
  bool validate_only = false;
  int max_steps = 20;
  int prover_depth = kDefaultProverDepth;
  std::uint64_t search_bound = kDefaultSearchBound;
  std::string score_order;    // empty: default factor order
};

// exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitGeneration = 3;
inline constexpr int kExitResource = 4;

/// Loaded and cross-checked inputs.
struct LoadedInputs {
  Scene scene;
  std::vector<LexicalEntry> lexicon;
  GoalSpec goals;
};

std::string read_file(const std::string& path);

/// Cross-file invariant checks (context-set membership, arity consistency,
/// goal/entity coverage). Returns one message per violation.
std::vector<std::string> check_invariants(const LoadedInputs& inputs);

/// One trace record as a single JSON line.
std::string trace_line(const StepRecord& record);

/// Loads inputs, checks invariants, prints a pass/fail report. 0 on pass.
int validate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full run: on success the space-joined sentence is the last stdout line
/// (step records first under --trace). Nonzero exits: 2 parse/invariant
/// errors, 3 generation failure, 4 resource bounds.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sentplan::cli
