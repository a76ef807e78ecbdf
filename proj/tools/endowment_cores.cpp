// Command-line front end: cores, mechanism, classify, relations, verify, golden.
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "endow/json_io.hpp"

namespace {

using namespace endow;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitClassMismatch = 3;
constexpr int kExitGuardExceeded = 4;
constexpr int kExitPropertyFailure = 5;

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

const std::vector<Solution> kCoreConcepts = {
    Solution::WeakCore,          Solution::StrongCore,
    Solution::RectifiedCore,     Solution::ExclusionCore,
    Solution::RefinedExclusionCore, Solution::RefinedExclusionCore3Prime,
    Solution::EffectiveCore,     Solution::RectifiedCoreStar,
    Solution::ParetoEfficient,
};

int cmd_cores(const std::string& economy_path, const std::string& concepts_csv,
              const Guards& guards) {
  std::vector<Solution> concepts;
  for (const std::string& name : split_csv(concepts_csv)) {
    auto sol = solution_from_string(name);
    bool allowed = sol && std::find(kCoreConcepts.begin(), kCoreConcepts.end(), *sol) !=
                              kCoreConcepts.end();
    if (!allowed) throw parse_error("unknown concept: " + name);
    concepts.push_back(*sol);
  }
  Economy economy = load_economy_file(economy_path);
  Json out = Json::array();
  for (Solution sol : concepts) out.push_back(report_to_json(economy, solve(economy, sol, guards)));
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_mechanism(const std::string& economy_path, const std::string& order_csv,
                  bool all_orders, bool trace, bool no_sharing, const Guards& guards) {
  Economy economy = load_economy_file(economy_path);
  MechanismOptions options{.sharing = !no_sharing};
  if (all_orders) {
    AllocationSet outcomes = mechanism_outcomes(economy, options, guards);
    std::cout << allocation_set_to_json(economy, outcomes).dump(2) << "\n";
    return kExitOk;
  }
  std::vector<int> order = order_from_labels(economy, split_csv(order_csv));
  MechanismRun run = run_mechanism(economy, order, options);
  if (trace)
    for (const TraceStep& step : run.trace)
      std::cerr << trace_step_to_json(economy, step).dump() << "\n";
  std::cout << allocation_to_json(economy, run.allocation.view()).dump(2) << "\n";
  return kExitOk;
}

int cmd_classify(const std::string& economy_path) {
  Economy economy = load_economy_file(economy_path);
  std::cout << class_to_json(classify(economy)).dump(2) << "\n";
  return kExitOk;
}

int cmd_relations(const std::string& economy_path, const Guards& guards) {
  Economy economy = load_economy_file(economy_path);
  std::cout << relation_report_to_json(economy, relation_report(economy, guards)).dump(2) << "\n";
  return kExitOk;
}

int print_verdict(const PropertyVerdict& verdict) {
  std::cout << verdict_to_json(verdict).dump(2) << "\n";
  return verdict.passed() ? kExitOk : kExitPropertyFailure;
}

int cmd_verify(const std::string& property, const GeneratorConfig& cfg,
               const std::string& corpus, const Guards& guards) {
  if (property == "golden") return print_verdict(golden_cases(corpus));
  return print_verdict(verify_property(property, cfg, guards));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solution concepts, blocking certificates and the YRMH-IGYT mechanism "
               "for discrete exchange economies with complex endowments"};
  app.require_subcommand(1);

  Guards guards;
  app.add_option("--max-agents", guards.max_agents, "Enumeration guard on agents");
  app.add_option("--max-objects", guards.max_objects, "Enumeration guard on objects");
  app.add_option("--max-order-agents", guards.max_order_agents,
                 "Guard on agents for all-orders runs");

  std::string economy_path;
  std::string concepts_csv;
  auto* cores = app.add_subcommand("cores", "Compute solution sets with certificates");
  cores->add_option("--economy", economy_path, "Economy JSON file")->required();
  cores->add_option("--concepts", concepts_csv,
                    "Comma-separated concepts: weak,strong,rectified,exclusion,"
                    "refined-exclusion,refined-exclusion-3prime,effective,rectified-star,pe")
      ->required();

  std::string order_csv;
  bool all_orders = false;
  bool trace = false;
  bool no_sharing = false;
  auto* mechanism = app.add_subcommand("mechanism", "Run YRMH-IGYT");
  mechanism->add_option("--economy", economy_path, "Economy JSON file")->required();
  auto* order_opt = mechanism->add_option("--order", order_csv, "Agent labels, highest first");
  auto* all_opt = mechanism->add_flag("--all-orders", all_orders, "Union over all agent orders");
  order_opt->excludes(all_opt);
  mechanism->add_flag("--trace", trace, "Emit step records on stderr (one JSON line per step)");
  mechanism->add_flag("--no-sharing", no_sharing,
                      "Diagnostic: disable sharing-ownership grants");

  auto* classify_cmd = app.add_subcommand("classify", "Report ownership-class flags");
  classify_cmd->add_option("--economy", economy_path, "Economy JSON file")->required();

  auto* relations = app.add_subcommand("relations", "Pairwise inclusion matrix of solutions");
  relations->add_option("--economy", economy_path, "Economy JSON file")->required();

  GeneratorConfig cfg;
  std::string property;
  std::string corpus = "corpus";
  auto* verify = app.add_subcommand("verify", "Property sweeps against the brute-force solvers");
  verify->add_option("--property", property, "Property id (see README) or 'golden'")->required();
  verify->add_option("--seed", cfg.seed, "Generator seed");
  verify->add_option("--trials", cfg.trials, "Number of generated economies");
  verify->add_option("--max-agents", cfg.max_agents, "Largest generated agent count");
  verify->add_option("--max-objects", cfg.max_objects, "Largest generated object count");
  verify->add_option("--min-agents", cfg.min_agents, "Smallest generated agent count");
  verify->add_option("--min-objects", cfg.min_objects, "Smallest generated object count");
  verify->add_option("--acceptability", cfg.acceptability, "Per-pair acceptability probability");
  verify->add_option("--corpus", corpus, "Fixture corpus directory (golden)");

  auto* golden = app.add_subcommand("golden", "Run the fixture-corpus assertion suite");
  golden->add_option("--corpus", corpus, "Fixture corpus directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cores->parsed()) return cmd_cores(economy_path, concepts_csv, guards);
    if (mechanism->parsed()) {
      if (!all_orders && order_csv.empty())
        throw parse_error("mechanism requires --order or --all-orders");
      return cmd_mechanism(economy_path, order_csv, all_orders, trace, no_sharing, guards);
    }
    if (classify_cmd->parsed()) return cmd_classify(economy_path);
    if (relations->parsed()) return cmd_relations(economy_path, guards);
    if (verify->parsed()) return cmd_verify(property, cfg, corpus, guards);
    if (golden->parsed()) return print_verdict(golden_cases(corpus));
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const class_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitClassMismatch;
  } catch (const guard_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuardExceeded;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
