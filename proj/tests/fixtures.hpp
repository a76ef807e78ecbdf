#pragma once

#include <string>
#include <utility>
#include <vector>

#include "endow/json_io.hpp"

namespace endow::test {

inline Economy load_case(const std::string& name) {
  return load_economy_file(std::string(ENDOW_CORPUS_DIR) + "/" + name + ".json");
}

// Label-based allocation builder; agents not listed get the null object.
inline Allocation make_alloc(const Economy& e,
                             std::vector<std::pair<std::string, std::string>> pairs) {
  std::vector<std::int8_t> slots(static_cast<size_t>(e.num_agents()), kNullObject);
  for (const auto& [agent, object] : pairs)
    slots[static_cast<size_t>(*e.agent_index(agent))] =
        static_cast<std::int8_t>(*e.object_index(object));
  return Allocation(std::move(slots));
}

inline Coalition make_coalition(const Economy& e, std::vector<std::string> agents) {
  Mask32 m = 0;
  for (const auto& label : agents) m |= bit(*e.agent_index(label));
  return Coalition(m);
}

inline Mask32 make_objects(const Economy& e, std::vector<std::string> objects) {
  Mask32 m = 0;
  for (const auto& label : objects) m |= bit(*e.object_index(label));
  return m;
}

}  // namespace endow::test
