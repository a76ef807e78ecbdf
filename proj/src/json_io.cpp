#include "endow/json_io.hpp"

#include <fstream>

#include "endow/errors.hpp"

namespace endow {

namespace {

void require_object(const Json& j, const char* what) {
  if (!j.is_object()) throw parse_error(std::string(what) + " must be a JSON object");
}

std::vector<std::string> string_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw parse_error(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw parse_error(where + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

Economy economy_from_json(const Json& j) {
  require_object(j, "economy document");
  for (const auto& [key, value] : j.items()) {
    if (key != "agents" && key != "objects" && key != "owners" && key != "preferences")
      throw parse_error("unknown field in economy document: " + key);
  }
  for (const char* field : {"agents", "objects", "owners", "preferences"})
    if (!j.contains(field)) throw parse_error(std::string("economy document missing field: ") + field);

  EconomyDraft draft;
  draft.agents = string_array(j.at("agents"), "agents");
  draft.objects = string_array(j.at("objects"), "objects");
  require_object(j.at("owners"), "owners");
  for (const auto& [object, owner_list] : j.at("owners").items())
    draft.owners.emplace_back(object, string_array(owner_list, "owners." + object));
  require_object(j.at("preferences"), "preferences");
  for (const auto& [agent, ranking] : j.at("preferences").items())
    draft.preferences.emplace_back(agent, string_array(ranking, "preferences." + agent));

  Validation v = Economy::validate(draft);
  if (!v.ok()) {
    std::string msg = "invalid economy:";
    for (const auto& err : v.errors) msg += "\n  " + err;
    throw parse_error(msg);
  }
  return std::move(*v.economy);
}

Json economy_to_json(const Economy& e) {
  EconomyDraft d = e.to_draft();
  Json j;
  j["agents"] = d.agents;
  j["objects"] = d.objects;
  Json owners = Json::object();
  for (const auto& [object, owner_list] : d.owners) owners[object] = owner_list;
  j["owners"] = std::move(owners);
  Json prefs = Json::object();
  for (const auto& [agent, ranking] : d.preferences) prefs[agent] = ranking;
  j["preferences"] = std::move(prefs);
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& err) {
    throw parse_error("JSON parse error in " + path + ": " + err.what());
  }
  return j;
}

Economy load_economy_file(const std::string& path) {
  return economy_from_json(load_json_file(path));
}

Allocation allocation_from_json(const Economy& e, const Json& j) {
  require_object(j, "allocation document");
  std::vector<std::int8_t> slots(static_cast<size_t>(e.num_agents()), kNullObject);
  std::vector<bool> seen(static_cast<size_t>(e.num_agents()), false);
  Mask32 used = 0;
  for (const auto& [agent, value] : j.items()) {
    auto ai = e.agent_index(agent);
    if (!ai) throw parse_error("unknown agent in allocation: " + agent);
    if (seen[static_cast<size_t>(*ai)]) throw parse_error("agent repeated in allocation: " + agent);
    seen[static_cast<size_t>(*ai)] = true;
    if (value.is_null()) continue;
    if (!value.is_string()) throw parse_error("allocation value for " + agent + " must be an object label or null");
    auto oi = e.object_index(value.get<std::string>());
    if (!oi) throw parse_error("unknown object in allocation: " + value.get<std::string>());
    if (mask_contains(used, *oi))
      throw parse_error("object assigned twice in allocation: " + value.get<std::string>());
    used |= bit(*oi);
    slots[static_cast<size_t>(*ai)] = static_cast<std::int8_t>(*oi);
  }
  for (int a = 0; a < e.num_agents(); ++a)
    if (!seen[static_cast<size_t>(a)])
      throw parse_error("allocation missing agent: " + e.agent_label(a));
  return Allocation(std::move(slots));
}

Json allocation_to_json(const Economy& e, AllocView a) {
  Json j = Json::object();
  for (int i = 0; i < e.num_agents(); ++i) {
    std::int8_t o = a[static_cast<size_t>(i)];
    if (o == kNullObject)
      j[e.agent_label(i)] = nullptr;
    else
      j[e.agent_label(i)] = e.object_label(o);
  }
  return j;
}

Json allocation_set_to_json(const Economy& e, const AllocationSet& set) {
  Json arr = Json::array();
  for (int i = 0; i < set.size(); ++i) arr.push_back(allocation_to_json(e, set.view(i)));
  return arr;
}

Json coalition_to_json(const Economy& e, Coalition c) {
  Json arr = Json::array();
  for (int a : c.members()) arr.push_back(e.agent_label(a));
  return arr;
}

Coalition coalition_from_json(const Economy& e, const Json& j) {
  Mask32 m = 0;
  for (const std::string& label : string_array(j, "coalition")) {
    auto ai = e.agent_index(label);
    if (!ai) throw parse_error("unknown agent in coalition: " + label);
    m |= bit(*ai);
  }
  if (m == 0) throw parse_error("coalition must be nonempty");
  return Coalition(m);
}

Json certificate_to_json(const Economy& e, const BlockingCertificate& cert) {
  Json j;
  j["concept"] = std::string(to_string(cert.kind));
  j["coalition"] = coalition_to_json(e, cert.coalition);
  j["via"] = allocation_to_json(e, cert.via.view());
  return j;
}

Json report_to_json(const Economy& e, const SolutionReport& report) {
  Json j;
  j["concept"] = std::string(to_string(report.concept_tag));
  j["fingerprint"] = report.fingerprint;
  Json members = Json::array();
  for (const Allocation& a : report.members) members.push_back(allocation_to_json(e, a.view()));
  j["members"] = std::move(members);
  Json excluded = Json::array();
  for (const ExcludedAllocation& ex : report.excluded) {
    Json entry;
    entry["allocation"] = allocation_to_json(e, ex.allocation.view());
    entry["certificate"] = certificate_to_json(e, ex.certificate);
    excluded.push_back(std::move(entry));
  }
  j["excluded"] = std::move(excluded);
  return j;
}

Json relation_report_to_json(const Economy& e, const RelationReport& report) {
  Json j;
  j["fingerprint"] = report.fingerprint;
  Json names = Json::array();
  for (Solution s : report.solutions) names.push_back(std::string(to_string(s)));
  j["solutions"] = std::move(names);
  Json pairs = Json::array();
  for (const PairRelation& rel : report.pairs) {
    Json p;
    p["left"] = std::string(to_string(rel.left));
    p["right"] = std::string(to_string(rel.right));
    switch (rel.verdict) {
      case RelationVerdict::Equal: p["verdict"] = "equal"; break;
      case RelationVerdict::StrictSubset: p["verdict"] = "strict-subset"; break;
      case RelationVerdict::StrictSuperset: p["verdict"] = "strict-superset"; break;
      case RelationVerdict::Incomparable: p["verdict"] = "incomparable"; break;
    }
    if (rel.left_only) p["left-only-witness"] = allocation_to_json(e, rel.left_only->view());
    if (rel.right_only) p["right-only-witness"] = allocation_to_json(e, rel.right_only->view());
    pairs.push_back(std::move(p));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Json class_to_json(const EconomyClass& c) {
  Json j;
  j["no-redundant-ownership"] = c.no_redundant_ownership;
  j["no-overlapping-ownership"] = c.no_overlapping_ownership;
  j["private-ownership"] = c.private_ownership;
  j["public-ownership"] = c.public_ownership;
  j["private-public-ownership"] = c.private_public_ownership;
  j["het"] = c.het;
  return j;
}

Json consistency_to_json(const Economy& e, Solution f, const ConsistencyVerdict& v) {
  Json j;
  j["concept"] = std::string(to_string(f));
  j["equal"] = v.equal;
  Json only_base = Json::array();
  for (const Allocation& a : v.only_base) only_base.push_back(allocation_to_json(e, a.view()));
  j["only-in-base"] = std::move(only_base);
  Json only_restricted = Json::array();
  for (const Allocation& a : v.only_restricted)
    only_restricted.push_back(allocation_to_json(e, a.view()));
  j["only-in-restricted"] = std::move(only_restricted);
  return j;
}

Json trace_step_to_json(const Economy& e, const TraceStep& step) {
  Json j;
  j["step"] = step.step;
  if (!step.repointed.empty()) {
    Json points = Json::array();
    for (auto [object, agent] : step.repointed) {
      Json p;
      p["object"] = e.object_label(object);
      p["agent"] = agent == -1 ? Json(nullptr) : Json(e.agent_label(agent));
      points.push_back(std::move(p));
    }
    j["points"] = std::move(points);
  }
  j["agent"] = e.agent_label(step.agent);
  j["requests"] = step.requested == kNullObject ? Json(nullptr) : Json(e.object_label(step.requested));
  switch (step.action) {
    case TraceStep::Action::Promote:
      j["action"] = "promote";
      j["promoted"] = e.agent_label(step.promoted);
      break;
    case TraceStep::Action::Cycle: {
      j["action"] = "cycle";
      Json members = Json::array();
      for (auto [agent, object] : step.cycle) {
        Json m;
        m["agent"] = e.agent_label(agent);
        m["object"] = e.object_label(object);
        members.push_back(std::move(m));
      }
      j["members"] = std::move(members);
      break;
    }
    case TraceStep::Action::AcquireDirect:
      j["action"] = "acquire";
      break;
    case TraceStep::Action::AcquireNull:
      j["action"] = "acquire-null";
      break;
  }
  if (!step.grants.empty()) {
    Json grants = Json::array();
    for (auto [agent, object] : step.grants) {
      Json g;
      g["agent"] = e.agent_label(agent);
      g["object"] = e.object_label(object);
      grants.push_back(std::move(g));
    }
    j["grants"] = std::move(grants);
  }
  return j;
}

Json verdict_to_json(const PropertyVerdict& v) {
  Json j;
  j["property"] = v.property;
  j["seed"] = v.seed;
  j["trials"] = v.trials;
  j["failure-count"] = static_cast<int>(v.failures.size());
  Json failures = Json::array();
  for (const PropertyFailure& f : v.failures) {
    Json entry;
    entry["economy"] = economy_to_json(f.economy);
    entry["detail"] = f.detail;
    failures.push_back(std::move(entry));
  }
  j["failures"] = std::move(failures);
  return j;
}

}  // namespace endow
