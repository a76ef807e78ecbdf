#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "endow/economy.hpp"

namespace endow {

enum class OwnershipClass {
  Any,
  PrivateOwnership,
  PublicOwnership,
  PrivatePublic,
  Het,
  NoOverlapping,
  NoRedundant,
};

std::string_view to_string(OwnershipClass c);

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int min_agents = 2;
  int max_agents = 4;
  int min_objects = 1;
  int max_objects = 4;
  OwnershipClass ownership = OwnershipClass::Any;
  // Probability an agent finds a given object acceptable (forced to 1 for the
  // no-redundant and no-overlapping classes).
  double acceptability = 0.8;
  // Rebalances unconstrained ownership away from heavy co-ownership.
  double private_bias = 0.35;
  int trials = 100;
};

// Deterministic: the i-th economy depends only on (cfg, trial). Throws
// guard_error when a class constraint cannot be met after bounded retries.
Economy generate_economy(const GeneratorConfig& cfg, int trial);

}  // namespace endow
