#include <iostream>

#include "CLI11.hpp"
#include "sentplan/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "sentplan: grammar-driven sentence planner over a modal knowledge base"};

  sentplan::cli::RunConfig config;
  app.add_option("--scene", config.scene_path, "scene file (entities, facts, rules)")
      ->required();
  app.add_option("--lexicon", config.lexicon_path, "lexicon file (tree entries)")
      ->required();
  app.add_option("--goals", config.goals_path, "goals file")->required();
  app.add_option("--root", config.root_category,
                 "root category (default: the goals file's root)");
  app.add_flag("--trace", config.trace, "print one JSON record per step");
  app.add_option("--max-steps", config.max_steps, "step limit (default 20)");
  app.add_option("--prover-depth", config.prover_depth,
                 "rule-chaining depth bound (default 16)");
  app.add_option("--search-bound", config.search_bound,
                 "candidate-combination bound for reference checks");
  app.add_option("--score-order", config.score_order,
                 "permutation of goals,distractors,sites,specificity");
  app.add_flag("--validate-only", config.validate_only,
               "check all inputs and report without generating");

  CLI11_PARSE(app, argc, argv);
  return sentplan::cli::run(config, std::cout, std::cerr);
}
