#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "endow/economy.hpp"

namespace endow {

struct Guards {
  int max_agents = 8;
  int max_objects = 8;
  // Cap for all-orders mechanism enumeration (|I|! runs).
  int max_order_agents = 7;
};

// Deduplicated, canonically ordered collection of allocations for one economy.
class AllocationSet {
 public:
  AllocationSet(int num_agents, std::string fingerprint);

  void add(AllocView a);
  void sort_unique();

  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  AllocView view(int idx) const;
  Allocation allocation(int idx) const;
  std::optional<int> index_of(AllocView a) const;  // requires canonical order
  bool contains(AllocView a) const { return index_of(a).has_value(); }
  int num_agents() const { return num_agents_; }
  const std::string& fingerprint() const { return fingerprint_; }
  bool operator==(const AllocationSet&) const = default;

 private:
  int num_agents_;
  int count_ = 0;
  std::string fingerprint_;
  std::vector<std::int8_t> slots_;  // count_ rows of num_agents_ entries
};

// Every injective partial matching of objects to agents, null-extended,
// in canonical order. Count equals sum_k C(|O|,k) * P(|I|,k).
AllocationSet enumerate_allocations(const Economy& e, const Guards& guards = {});

// Closed-form count of the full allocation space.
unsigned long long allocation_count(int num_agents, int num_objects);

// True when s makes every agent weakly better off than m and someone strictly.
bool pareto_dominates(const Economy& e, AllocView s, AllocView m);

// For each allocation in `all`: 1 when no other allocation dominates it.
std::vector<char> pareto_efficient_mask(const Economy& e, const AllocationSet& all);

AllocationSet pareto_efficient_set(const Economy& e, const Guards& guards = {});

AllocationSet subset_from_mask(const AllocationSet& all, const std::vector<char>& keep);

}  // namespace endow
