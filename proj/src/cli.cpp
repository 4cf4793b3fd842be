#include "sentplan/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json_util.hpp"
#include "sentplan/errors.hpp"

namespace sentplan::cli {

using jsonio::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

LoadedInputs load_inputs(const RunConfig& config) {
  LoadedInputs inputs;
  inputs.scene = load_scene(read_file(config.scene_path), config.scene_path);
  inputs.lexicon =
      load_lexicon(read_file(config.lexicon_path), config.lexicon_path);
  inputs.goals = load_goals(read_file(config.goals_path), config.goals_path);
  return inputs;
}

void check_atom_arity(const Atom& atom, std::map<Symbol, std::size_t>& arities,
                      const std::string& where,
                      std::vector<std::string>& failures) {
  auto [it, inserted] = arities.emplace(atom.predicate, atom.args.size());
  if (!inserted && it->second != atom.args.size())
    failures.push_back(where + ": predicate '" + atom.predicate +
                       "' used with arity " + std::to_string(atom.args.size()) +
                       " but elsewhere with " + std::to_string(it->second));
}

}  // namespace

std::vector<std::string> check_invariants(const LoadedInputs& inputs) {
  std::vector<std::string> failures;

  for (const Symbol& id : inputs.scene.entities) {
    const auto& context = inputs.scene.contexts.of(id);
    if (!context.count(id))
      failures.push_back("scene: entity '" + id +
                         "' is missing from its own context set");
    for (const Symbol& member : context)
      if (!inputs.scene.has_entity(member))
        failures.push_back("scene: context set of '" + id +
                           "' names undeclared entity '" + member + "'");
  }

  std::map<Symbol, std::size_t> arities = inputs.scene.kb.arities();
  for (const LexicalEntry& entry : inputs.lexicon) {
    std::string where = "lexicon entry '" + entry.name + "'";
    for (const Atom& a : entry.semantics)
      check_atom_arity(a, arities, where, failures);
    for (const Atom& a : entry.pragmatics)
      check_atom_arity(a, arities, where, failures);
  }
  for (const Goal& goal : inputs.goals.goals) {
    if (goal.type == Goal::Type::Communicate)
      check_atom_arity(goal.atom, arities, "goals", failures);
    for (const Atom& f : goal.features)
      check_atom_arity(f, arities, "goals", failures);
  }

  for (const Goal& goal : inputs.goals.goals) {
    if (goal.type == Goal::Type::Identify &&
        !inputs.scene.has_entity(goal.entity))
      failures.push_back("goals: identify target '" + goal.entity +
                         "' is not a scene entity");
    if (goal.type == Goal::Type::BrandNew &&
        inputs.scene.has_entity(goal.entity))
      failures.push_back("goals: brand-new entity '" + goal.entity +
                         "' is already a scene entity");
  }
  return failures;
}

namespace {

Json score_json(const ScoreVector& score) {
  return Json::array({score.unmet_goals, score.distractor_mass,
                      score.open_sites, score.specificity});
}

}  // namespace

std::string trace_line(const StepRecord& record) {
  Json j;
  j["step"] = record.index;
  j["entry"] = record.entry;
  j["op"] = op_name(record.op);
  j["address"] = gorn_str(record.address);
  j["requirements"] = record.requirements;
  j["contributions"] = record.contributions;
  j["score_before"] = score_json(record.before);
  j["score_after"] = score_json(record.after);
  Json domains = Json::object();
  for (const auto& [var, entry] : record.domains) {
    Json d;
    d["before"] = entry.before_size;
    d["after"] = entry.after_size;
    if (!entry.survivors.empty()) d["survivors"] = entry.survivors;
    domains[var] = std::move(d);
  }
  j["domains"] = std::move(domains);
  Json dropped = Json::array();
  for (const DroppedCandidate& d : record.dropped) {
    Json item;
    item["entry"] = d.entry;
    item["address"] = gorn_str(d.address);
    item["reason"] = d.reason;
    dropped.push_back(std::move(item));
  }
  j["dropped"] = std::move(dropped);
  j["tree"] = record.tree;
  return j.dump();
}

int validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  LoadedInputs inputs;
  try {
    inputs = load_inputs(config);
  } catch (const Error& e) {
    err << "FAIL load: " << e.what() << "\n";
    return kExitParse;
  }
  out << "ok: scene '" << config.scene_path << "' ("
      << inputs.scene.entities.size() << " entities, "
      << inputs.scene.kb.fact_count() << " facts, "
      << inputs.scene.kb.rules().size() << " rules)\n";
  out << "ok: lexicon '" << config.lexicon_path << "' ("
      << inputs.lexicon.size() << " entries)\n";
  out << "ok: goals '" << config.goals_path << "' ("
      << inputs.goals.goals.size() << " goals)\n";
  std::vector<std::string> failures = check_invariants(inputs);
  if (failures.empty()) {
    out << "ok: context sets, arities, and goal coverage\n";
    out << "validate: PASS\n";
    return kExitOk;
  }
  for (const std::string& f : failures) out << "FAIL " << f << "\n";
  out << "validate: FAIL (" << failures.size() << " violations)\n";
  return kExitParse;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.validate_only) return validate(config, out, err);

  LoadedInputs inputs;
  ScoreOrder order = kDefaultScoreOrder;
  try {
    inputs = load_inputs(config);
    if (!config.score_order.empty())
      order = parse_score_order(config.score_order);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  std::vector<std::string> failures = check_invariants(inputs);
  if (!failures.empty()) {
    for (const std::string& f : failures) err << "error: " << f << "\n";
    return kExitParse;
  }

  PlannerConfig planner_config;
  planner_config.max_steps = config.max_steps;
  planner_config.prover_depth = config.prover_depth;
  planner_config.search_bound = config.search_bound;
  planner_config.score_order = order;

  PlannerContext ctx{inputs.scene, inputs.lexicon, inputs.goals,
                     planner_config};
  Symbol root = config.root_category.empty() ? inputs.goals.root
                                             : config.root_category;

  GenerateOutcome outcome;
  try {
    outcome = generate(ctx, root);
  } catch (const SearchBoundExceeded& e) {
    err << "resource bound: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitGeneration;
  }

  if (config.trace)
    for (const StepRecord& record : outcome.trace)
      out << trace_line(record) << "\n";

  if (!outcome.success) {
    err << "generation failed: " << outcome.reason << "\n";
    if (outcome.incomplete) {
      err << "  incomplete syntax; open sites:";
      for (const std::string& s : outcome.open_site_addresses) err << ' ' << s;
      err << "\n";
    }
    if (outcome.ambiguous) {
      err << "  ambiguous reference; variables:";
      for (const Symbol& v : outcome.ambiguous_variables) err << ' ' << v;
      err << "\n";
    }
    if (!outcome.unmet_goals.empty()) {
      err << "  unmet goals:";
      for (const std::string& g : outcome.unmet_goals) err << ' ' << g;
      err << "\n";
    }
    return kExitGeneration;
  }

  std::string sentence;
  for (std::size_t i = 0; i < outcome.words.size(); ++i) {
    if (i) sentence += ' ';
    sentence += outcome.words[i];
  }
  out << sentence << "\n";
  return kExitOk;
}

}  // namespace sentplan::cli
