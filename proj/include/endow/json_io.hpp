#pragma once

#include <string>

#include "endow/allocations.hpp"
#include "endow/blocking.hpp"
#include "endow/economy.hpp"
#include "endow/mechanism.hpp"
#include "endow/properties.hpp"
#include "endow/solvers.hpp"
#include "endow/special.hpp"

#include "json.hpp"

namespace endow {

using Json = nlohmann::json;

// Economy document. Top-level fields: agents, objects, owners, preferences;
// unknown fields rejected.
Economy economy_from_json(const Json& j);
Json economy_to_json(const Economy& e);
Economy load_economy_file(const std::string& path);
Json load_json_file(const std::string& path);

// Allocation document: agent label -> object label or null.
Allocation allocation_from_json(const Economy& e, const Json& j);
Json allocation_to_json(const Economy& e, AllocView a);

Json allocation_set_to_json(const Economy& e, const AllocationSet& set);
Json coalition_to_json(const Economy& e, Coalition c);
Coalition coalition_from_json(const Economy& e, const Json& j);
Json certificate_to_json(const Economy& e, const BlockingCertificate& cert);
Json report_to_json(const Economy& e, const SolutionReport& report);
Json relation_report_to_json(const Economy& e, const RelationReport& report);
Json class_to_json(const EconomyClass& c);
Json consistency_to_json(const Economy& e, Solution f, const ConsistencyVerdict& v);
Json trace_step_to_json(const Economy& e, const TraceStep& step);
Json verdict_to_json(const PropertyVerdict& v);

}  // namespace endow
