#include "endow/allocations.hpp"

#include <algorithm>

#include "endow/errors.hpp"
#include "endow/parallel.hpp"

namespace endow {

AllocationSet::AllocationSet(int num_agents, std::string fp)
    : num_agents_(num_agents), fingerprint_(std::move(fp)) {}

void AllocationSet::add(AllocView a) {
  ENDOW_ASSERT(static_cast<int>(a.size()) == num_agents_);
  slots_.insert(slots_.end(), a.begin(), a.end());
  ++count_;
}

AllocView AllocationSet::view(int idx) const {
  return AllocView(slots_.data() + static_cast<size_t>(idx) * static_cast<size_t>(num_agents_),
                   static_cast<size_t>(num_agents_));
}

Allocation AllocationSet::allocation(int idx) const {
  AllocView v = view(idx);
  return Allocation(std::vector<std::int8_t>(v.begin(), v.end()));
}

std::optional<int> AllocationSet::index_of(AllocView a) const {
  int lo = 0, hi = count_;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (alloc_less(view(mid), a))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count_ && alloc_equal(view(lo), a)) return lo;
  return std::nullopt;
}

void AllocationSet::sort_unique() {
  std::vector<int> order(static_cast<size_t>(count_));
  for (int i = 0; i < count_; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [this](int a, int b) { return alloc_less(view(a), view(b)); });
  std::vector<std::int8_t> sorted;
  sorted.reserve(slots_.size());
  int kept = 0;
  for (int idx : order) {
    AllocView v = view(idx);
    if (kept > 0) {
      AllocView prev(sorted.data() + static_cast<size_t>(kept - 1) * static_cast<size_t>(num_agents_),
                     static_cast<size_t>(num_agents_));
      if (alloc_equal(prev, v)) continue;
    }
    sorted.insert(sorted.end(), v.begin(), v.end());
    ++kept;
  }
  slots_ = std::move(sorted);
  count_ = kept;
}

unsigned long long allocation_count(int num_agents, int num_objects) {
  unsigned long long total = 0;
  int kmax = std::min(num_agents, num_objects);
  for (int k = 0; k <= kmax; ++k) {
    // C(num_objects, k) * P(num_agents, k)
    unsigned long long choose = 1;
    for (int i = 1; i <= k; ++i)
      choose = choose * static_cast<unsigned long long>(num_objects - k + i) / static_cast<unsigned long long>(i);
    unsigned long long perm = 1;
    for (int i = 0; i < k; ++i) perm *= static_cast<unsigned long long>(num_agents - i);
    total += choose * perm;
  }
  return total;
}

AllocationSet enumerate_allocations(const Economy& e, const Guards& guards) {
  if (e.num_agents() > guards.max_agents)
    throw guard_error("enumeration guard exceeded: " + std::to_string(e.num_agents()) +
                      " agents > limit " + std::to_string(guards.max_agents));
  if (e.num_objects() > guards.max_objects)
    throw guard_error("enumeration guard exceeded: " + std::to_string(e.num_objects()) +
                      " objects > limit " + std::to_string(guards.max_objects));

  AllocationSet set(e.num_agents(), fingerprint(e));
  std::vector<std::int8_t> slots(static_cast<size_t>(e.num_agents()), kNullObject);
  // Null first, then objects in ascending index order: emits canonical order.
  auto emit = [&](auto&& self, int agent, Mask32 used) -> void {
    if (agent == e.num_agents()) {
      set.add(slots);
      return;
    }
    slots[static_cast<size_t>(agent)] = kNullObject;
    self(self, agent + 1, used);
    for (int o = 0; o < e.num_objects(); ++o) {
      if (mask_contains(used, o)) continue;
      slots[static_cast<size_t>(agent)] = static_cast<std::int8_t>(o);
      self(self, agent + 1, used | bit(o));
    }
    slots[static_cast<size_t>(agent)] = kNullObject;
  };
  emit(emit, 0, 0);
  return set;
}

bool pareto_dominates(const Economy& e, AllocView s, AllocView m) {
  bool strict = false;
  for (int i = 0; i < e.num_agents(); ++i) {
    int cmp = e.compare(i, s[static_cast<size_t>(i)], m[static_cast<size_t>(i)]);
    if (cmp < 0) return false;
    if (cmp > 0) strict = true;
  }
  return strict;
}

std::vector<char> pareto_efficient_mask(const Economy& e, const AllocationSet& all) {
  std::vector<char> efficient(static_cast<size_t>(all.size()), 1);
  parallel_for(static_cast<size_t>(all.size()), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      for (int s = 0; s < all.size(); ++s) {
        if (static_cast<std::size_t>(s) == m) continue;
        if (pareto_dominates(e, all.view(s), all.view(static_cast<int>(m)))) {
          efficient[m] = 0;
          break;
        }
      }
    }
  });
  return efficient;
}

AllocationSet pareto_efficient_set(const Economy& e, const Guards& guards) {
  AllocationSet all = enumerate_allocations(e, guards);
  return subset_from_mask(all, pareto_efficient_mask(e, all));
}

AllocationSet subset_from_mask(const AllocationSet& all, const std::vector<char>& keep) {
  ENDOW_ASSERT(keep.size() == static_cast<size_t>(all.size()));
  AllocationSet out(all.num_agents(), all.fingerprint());
  for (int i = 0; i < all.size(); ++i)
    if (keep[static_cast<size_t>(i)]) out.add(all.view(i));
  return out;
}

}  // namespace endow
