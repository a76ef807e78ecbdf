#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "endow/allocations.hpp"
#include "endow/economy.hpp"

namespace endow {

struct MechanismOptions {
  // Disabling sharing ownership is a diagnostic mode only; it is excluded
  // from every theorem check.
  bool sharing = true;
};

// One mechanism step: lazy object re-pointing, the top agent's request, and
// the resulting action.
struct TraceStep {
  enum class Action { Promote, Cycle, AcquireDirect, AcquireNull };

  int step = 0;
  std::vector<std::pair<int, int>> repointed;  // (object, new agent or -1)
  int agent = -1;
  std::int8_t requested = kNullObject;
  Action action = Action::AcquireNull;
  int promoted = -1;                                  // Action::Promote
  std::vector<std::pair<int, std::int8_t>> cycle;     // (agent, object she obtains)
  std::vector<std::pair<int, int>> grants;            // (agent, object) shared-ownership grants
};

struct MechanismRun {
  Allocation allocation;
  std::vector<TraceStep> trace;
  int steps = 0;
};

// Runs YRMH-IGYT with sharing ownership under the exogenous order (agent
// indices, highest priority first). Throws std::invalid_argument unless
// `order` is a permutation of the agents.
MechanismRun run_mechanism(const Economy& e, std::span<const int> order,
                           MechanismOptions options = {});

// Maps agent labels to an index order; throws parse_error when the labels are
// not a permutation of the economy's agents.
std::vector<int> order_from_labels(const Economy& e, const std::vector<std::string>& labels);

// Deduplicated outcomes over all |I|! orders.
AllocationSet mechanism_outcomes(const Economy& e, MechanismOptions options = {},
                                 const Guards& guards = {});

// Final allocation reconstructed from cycle/acquire records; used to check
// that traces replay.
Allocation replay_trace(const Economy& e, const std::vector<TraceStep>& trace);

}  // namespace endow
