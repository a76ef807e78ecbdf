#pragma once

#include <functional>
#include <string>
#include <vector>

#include "endow/allocations.hpp"
#include "endow/economy.hpp"
#include "endow/generator.hpp"

namespace endow {

struct PropertyFailure {
  Economy economy;     // shrunk counterexample
  std::string detail;  // what failed, with witness allocations rendered inline
};

struct PropertyVerdict {
  std::string property;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<PropertyFailure> failures;
  bool passed() const { return failures.empty(); }
};

// Known ids: thm1 thm2 thm3 fig1-chain effective-superset prop1..prop5
// lemma1 lemma2 het-corollary pe-nonempty golden.
std::vector<std::string> property_ids();

// Runs the property over cfg.trials generated economies (class-constrained
// where the property demands it) and shrinks any failure by greedy
// agent/object removal. Throws parse_error on an unknown id.
PropertyVerdict verify_property(const std::string& id, const GeneratorConfig& cfg,
                                const Guards& guards = {});

// Evaluates every assertion sidecar in the fixture corpus directory.
PropertyVerdict golden_cases(const std::string& corpus_dir);

// Greedy removal of agents/objects while `fails` stays true and `admissible`
// holds; exposed for direct testing.
Economy shrink_economy(Economy e, const std::function<bool(const Economy&)>& fails,
                       const std::function<bool(const Economy&)>& admissible);

}  // namespace endow
