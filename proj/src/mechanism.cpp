#include "endow/mechanism.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "endow/errors.hpp"
#include "endow/parallel.hpp"

namespace endow {

namespace {

struct State {
  const Economy& e;
  const MechanismOptions options;
  std::vector<int> exo_rank;            // agent -> position in the exogenous order
  std::deque<int> order;                // current order, front = top
  Mask32 remaining_agents;
  Mask32 remaining_objects;
  std::vector<Mask32> owners;           // C_o(t), original owners still present
  std::vector<Mask32> shared;           // S_o(t)
  std::vector<int> pointer;             // object -> agent, -1 = points to nobody
  std::vector<std::int8_t> arc;         // agent -> requested object, -2 = none
  std::vector<std::int8_t> result;
  std::vector<TraceStep> trace;

  static constexpr std::int8_t kNoArc = -2;

  explicit State(const Economy& econ, std::span<const int> exo, MechanismOptions opts)
      : e(econ),
        options(opts),
        exo_rank(static_cast<size_t>(econ.num_agents())),
        order(exo.begin(), exo.end()),
        remaining_agents(econ.all_agents()),
        remaining_objects(econ.all_objects()),
        owners(static_cast<size_t>(econ.num_objects())),
        shared(static_cast<size_t>(econ.num_objects()), 0),
        pointer(static_cast<size_t>(econ.num_objects()), -1),
        arc(static_cast<size_t>(econ.num_agents()), kNoArc),
        result(static_cast<size_t>(econ.num_agents()), kNullObject) {
    for (size_t pos = 0; pos < exo.size(); ++pos) exo_rank[static_cast<size_t>(exo[pos])] = static_cast<int>(pos);
    for (int o = 0; o < e.num_objects(); ++o) {
      owners[static_cast<size_t>(o)] = e.owners(o);
      pointer[static_cast<size_t>(o)] = exo_highest(e.owners(o));
    }
  }

  int exo_highest(Mask32 agents) const {
    int best = -1;
    for (Mask32 rest = agents; rest; rest &= rest - 1) {
      int a = std::countr_zero(rest);
      if (best == -1 || exo_rank[static_cast<size_t>(a)] < exo_rank[static_cast<size_t>(best)]) best = a;
    }
    return best;
  }

  std::int8_t favorite(int agent) const {
    const PreferenceOrder& p = e.preference(agent);
    int best_rank = p.null_rank;
    std::int8_t best = kNullObject;
    for (Mask32 rest = remaining_objects; rest; rest &= rest - 1) {
      int o = std::countr_zero(rest);
      if (p.rank_of[static_cast<size_t>(o)] < best_rank) {
        best_rank = p.rank_of[static_cast<size_t>(o)];
        best = static_cast<std::int8_t>(o);
      }
    }
    return best;
  }

  void repoint_stale(TraceStep& rec) {
    for (Mask32 rest = remaining_objects; rest; rest &= rest - 1) {
      int o = std::countr_zero(rest);
      int p = pointer[static_cast<size_t>(o)];
      if (p == -1 || mask_contains(remaining_agents, p)) continue;
      int next;
      if (owners[static_cast<size_t>(o)] != 0)
        next = exo_highest(owners[static_cast<size_t>(o)]);
      else if (shared[static_cast<size_t>(o)] != 0)
        next = exo_highest(shared[static_cast<size_t>(o)]);
      else
        next = -1;
      pointer[static_cast<size_t>(o)] = next;
      rec.repointed.emplace_back(o, next);
    }
  }

  void remove_agent(int agent) {
    remaining_agents &= ~bit(agent);
    arc[static_cast<size_t>(agent)] = kNoArc;
    for (int o = 0; o < e.num_objects(); ++o) {
      owners[static_cast<size_t>(o)] &= ~bit(agent);
      shared[static_cast<size_t>(o)] &= ~bit(agent);
    }
    order.erase(std::find(order.begin(), order.end(), agent));
  }

  void remove_object(int object) {
    remaining_objects &= ~bit(object);
    for (int a = 0; a < e.num_agents(); ++a)
      if (arc[static_cast<size_t>(a)] == object) arc[static_cast<size_t>(a)] = kNoArc;
  }

  // Cycle members obtain their requested objects; sharing grants use the
  // pre-removal owner and shared sets, exactly as the step rule states.
  void clear_cycle(const std::vector<std::pair<int, std::int8_t>>& cycle, TraceStep& rec) {
    std::vector<Mask32> pre_claim(owners.size());
    for (size_t o = 0; o < owners.size(); ++o) pre_claim[o] = owners[o] | shared[o];

    Mask32 cycle_agents = 0;
    Mask32 cycle_objects = 0;
    for (auto [agent, object] : cycle) {
      result[static_cast<size_t>(agent)] = object;
      cycle_agents |= bit(agent);
      cycle_objects |= bit(object);
    }
    for (auto [agent, object] : cycle) {
      remove_agent(agent);
      remove_object(object);
    }
    if (!options.sharing) return;

    // Remaining endowments of leaving cycle members become shared among the
    // remaining claimants of the cycle's objects.
    Mask32 recipients = 0;
    for (Mask32 rest = cycle_objects; rest; rest &= rest - 1)
      recipients |= pre_claim[static_cast<size_t>(std::countr_zero(rest))];
    recipients &= remaining_agents;
    if (recipients == 0) return;

    for (Mask32 rest = remaining_objects; rest; rest &= rest - 1) {
      int a = std::countr_zero(rest);
      if ((pre_claim[static_cast<size_t>(a)] & cycle_agents) == 0) continue;
      Mask32 grant = recipients & ~pre_claim[static_cast<size_t>(a)];
      if (grant == 0) continue;
      shared[static_cast<size_t>(a)] |= grant;
      for (Mask32 g = grant; g; g &= g - 1)
        rec.grants.emplace_back(std::countr_zero(g), a);
    }
    std::sort(rec.grants.begin(), rec.grants.end());
  }

  Allocation run() {
    const int step_bound = e.num_agents() * (e.num_agents() + e.num_objects());
    int step = 0;
    while (!order.empty()) {
      ++step;
      ENDOW_ASSERT(step <= step_bound);  // finite-termination bound
      TraceStep rec;
      rec.step = step;
      repoint_stale(rec);

      int top = order.front();
      std::int8_t want = favorite(top);
      rec.agent = top;
      rec.requested = want;

      if (want == kNullObject) {
        rec.action = TraceStep::Action::AcquireNull;
        result[static_cast<size_t>(top)] = kNullObject;
        remove_agent(top);
        trace.push_back(std::move(rec));
        continue;
      }
      arc[static_cast<size_t>(top)] = want;
      int pointed = pointer[static_cast<size_t>(want)];
      if (pointed == -1) {
        rec.action = TraceStep::Action::AcquireDirect;
        result[static_cast<size_t>(top)] = want;
        remove_agent(top);
        remove_object(want);
        trace.push_back(std::move(rec));
        continue;
      }

      // Walk agent -> requested object -> pointed agent until the chain
      // breaks or returns to the top agent.
      std::vector<std::pair<int, std::int8_t>> walk;
      walk.emplace_back(top, want);
      int agent = pointed;
      bool cycled = false;
      while (true) {
        if (agent == top) {
          cycled = true;
          break;
        }
        std::int8_t next_obj = arc[static_cast<size_t>(agent)];
        if (next_obj == State::kNoArc) break;
        // A revisit below the top is structurally impossible: only the top
        // agent's arc changed since the last cycle-free walk.
        for (const auto& [seen, ignored] : walk) ENDOW_ASSERT(seen != agent);
        walk.emplace_back(agent, next_obj);
        int next_agent = pointer[static_cast<size_t>(next_obj)];
        ENDOW_ASSERT(next_agent != -1);
        agent = next_agent;
      }

      if (cycled) {
        rec.action = TraceStep::Action::Cycle;
        rec.cycle = walk;
        clear_cycle(walk, rec);
      } else {
        // No cycle: the agent pointed by the requested object moves to the
        // top. The walk can only have broken at that first hop, since every
        // deeper agent's arc object still points to her promoted successor.
        ENDOW_ASSERT(agent == pointed);
        rec.action = TraceStep::Action::Promote;
        rec.promoted = pointed;
        order.erase(std::find(order.begin(), order.end(), pointed));
        order.push_front(pointed);
      }
      trace.push_back(std::move(rec));
    }
    return Allocation(result);
  }
};

}  // namespace

MechanismRun run_mechanism(const Economy& e, std::span<const int> order,
                           MechanismOptions options) {
  if (static_cast<int>(order.size()) != e.num_agents())
    throw std::invalid_argument("order must list every agent exactly once");
  Mask32 seen = 0;
  for (int a : order) {
    if (a < 0 || a >= e.num_agents() || mask_contains(seen, a))
      throw std::invalid_argument("order is not a permutation of the agents");
    seen |= bit(a);
  }
  State state(e, order, options);
  Allocation allocation = state.run();
  return MechanismRun{std::move(allocation), std::move(state.trace),
                      static_cast<int>(state.trace.size())};
}

std::vector<int> order_from_labels(const Economy& e, const std::vector<std::string>& labels) {
  if (static_cast<int>(labels.size()) != e.num_agents())
    throw parse_error("order must list every agent exactly once");
  std::vector<int> out;
  Mask32 seen = 0;
  for (const auto& label : labels) {
    auto idx = e.agent_index(label);
    if (!idx) throw parse_error("unknown agent in order: " + label);
    if (mask_contains(seen, *idx)) throw parse_error("agent repeated in order: " + label);
    seen |= bit(*idx);
    out.push_back(*idx);
  }
  return out;
}

AllocationSet mechanism_outcomes(const Economy& e, MechanismOptions options,
                                 const Guards& guards) {
  if (e.num_agents() > guards.max_order_agents)
    throw guard_error("all-orders guard exceeded: " + std::to_string(e.num_agents()) +
                      " agents > limit " + std::to_string(guards.max_order_agents));
  std::vector<std::vector<int>> orders;
  std::vector<int> order(static_cast<size_t>(e.num_agents()));
  std::iota(order.begin(), order.end(), 0);
  do {
    orders.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));

  std::vector<Allocation> results(orders.size(), Allocation::all_null(e.num_agents()));
  parallel_for(orders.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      results[i] = run_mechanism(e, orders[i], options).allocation;
  });

  AllocationSet out(e.num_agents(), fingerprint(e));
  for (const Allocation& a : results) out.add(a.view());
  out.sort_unique();
  return out;
}

Allocation replay_trace(const Economy& e, const std::vector<TraceStep>& trace) {
  std::vector<std::int8_t> slots(static_cast<size_t>(e.num_agents()), kNullObject);
  for (const TraceStep& step : trace) {
    switch (step.action) {
      case TraceStep::Action::AcquireNull:
        slots[static_cast<size_t>(step.agent)] = kNullObject;
        break;
      case TraceStep::Action::AcquireDirect:
        slots[static_cast<size_t>(step.agent)] = step.requested;
        break;
      case TraceStep::Action::Cycle:
        for (auto [agent, object] : step.cycle) slots[static_cast<size_t>(agent)] = object;
        break;
      case TraceStep::Action::Promote:
        break;
    }
  }
  return Allocation(std::move(slots));
}

}  // namespace endow
