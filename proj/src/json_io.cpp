#include "restab/json_io.hpp"

#include <fstream>

namespace restab {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& what) {
  if (!j.is_object()) throw InputError(what + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || key == k;
    if (!known) throw InputError(what + " has unknown key \"" + key + "\"");
  }
}

const json& require_field(const json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(what + " is missing \"" + std::string(key) + "\"");
  return *it;
}

int require_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + " must be an integer");
  return j.get<int>();
}

int require_id(const json& j, const std::string& what) {
  const int v = require_int(j, what);
  if (v < 0) throw InputError(what + " must be non-negative");
  return v;
}

std::vector<int> require_id_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(require_id(e, what + " entry"));
  return out;
}

std::pair<FirmId, FirmPreference> firm_from_json(const json& j) {
  require_keys(j, {"id", "quota", "ranking", "subset_order"}, "firm");
  const FirmId id{require_id(require_field(j, "id", "firm"), "firm id")};
  FirmPreference pref;
  pref.quota = require_int(require_field(j, "quota", "firm"), "firm quota");
  const bool has_ranking = j.contains("ranking");
  const bool has_order = j.contains("subset_order");
  if (has_ranking == has_order) {
    throw InputError("firm " + std::to_string(id.value) +
                     " needs exactly one of \"ranking\" and \"subset_order\"");
  }
  if (has_ranking) {
    ResponsivePreference body;
    for (int v : require_id_array(j.at("ranking"), "firm ranking")) {
      body.ranking.push_back(WorkerId{v});
    }
    pref.body = std::move(body);
  } else {
    const json& order = j.at("subset_order");
    if (!order.is_array()) throw InputError("subset_order must be an array of arrays");
    SubsetOrderPreference body;
    for (const json& subset : order) {
      WorkerSet s;
      for (int v : require_id_array(subset, "subset")) s.push_back(WorkerId{v});
      body.order.push_back(make_worker_set(std::move(s)));
    }
    pref.body = std::move(body);
  }
  return {id, std::move(pref)};
}

json firm_to_json(FirmId id, const FirmPreference& pref) {
  json j;
  j["id"] = id.value;
  j["quota"] = pref.quota;
  if (pref.is_responsive()) {
    json ranking = json::array();
    for (WorkerId w : pref.responsive().ranking) ranking.push_back(w.value);
    j["ranking"] = std::move(ranking);
  } else {
    json order = json::array();
    for (const WorkerSet& s : pref.subset_order().order) {
      json subset = json::array();
      for (WorkerId w : s) subset.push_back(w.value);
      order.push_back(std::move(subset));
    }
    j["subset_order"] = std::move(order);
  }
  return j;
}

}  // namespace

json market_to_json(const Market& m) {
  json j;
  json firms = json::array();
  for (const auto& [id, pref] : m.firms()) firms.push_back(firm_to_json(id, pref));
  json workers = json::array();
  for (const auto& [id, pref] : m.workers()) {
    json w;
    w["id"] = id.value;
    json ranking = json::array();
    for (FirmId f : pref.ranking) ranking.push_back(f.value);
    w["ranking"] = std::move(ranking);
    workers.push_back(std::move(w));
  }
  j["firms"] = std::move(firms);
  j["workers"] = std::move(workers);
  return j;
}

Market market_from_json(const json& j) {
  require_keys(j, {"firms", "workers"}, "market");
  const json& firms_json = require_field(j, "firms", "market");
  const json& workers_json = require_field(j, "workers", "market");
  if (!firms_json.is_array() || !workers_json.is_array()) {
    throw InputError("market \"firms\" and \"workers\" must be arrays");
  }
  std::vector<std::pair<FirmId, FirmPreference>> firms;
  for (const json& f : firms_json) firms.push_back(firm_from_json(f));
  std::vector<std::pair<WorkerId, WorkerPreference>> workers;
  for (const json& w : workers_json) {
    require_keys(w, {"id", "ranking"}, "worker");
    const WorkerId id{require_id(require_field(w, "id", "worker"), "worker id")};
    WorkerPreference pref;
    for (int v : require_id_array(require_field(w, "ranking", "worker"), "worker ranking")) {
      pref.ranking.push_back(FirmId{v});
    }
    workers.emplace_back(id, std::move(pref));
  }
  return Market(std::move(firms), std::move(workers));
}

json matching_to_json(const Matching& mu) {
  json assignment = json::object();
  for (const auto& [w, partner] : mu.entries()) {
    if (partner.has_value()) {
      assignment[std::to_string(w.value)] = partner->value;
    } else {
      assignment[std::to_string(w.value)] = nullptr;
    }
  }
  json j;
  j["assignment"] = std::move(assignment);
  return j;
}

Matching matching_from_json(const json& j, const Market& m) {
  require_keys(j, {"assignment"}, "matching");
  const json& assignment = require_field(j, "assignment", "matching");
  if (!assignment.is_object()) throw InputError("matching \"assignment\" must be an object");
  std::vector<Matching::Entry> entries;
  for (const auto& [key, value] : assignment.items()) {
    WorkerId w{};
    try {
      std::size_t consumed = 0;
      w.value = std::stoi(key, &consumed);
      if (consumed != key.size() || w.value < 0) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InputError("matching key \"" + key + "\" is not a worker id");
    }
    if (value.is_null()) {
      entries.emplace_back(w, std::nullopt);
    } else {
      entries.emplace_back(w, FirmId{require_id(value, "matching partner")});
    }
  }
  Matching mu(std::move(entries));
  mu.require_valid_for(m);
  return mu;
}

json trace_to_json(const SetOfferingTrace& trace) {
  json j;
  j["input"] = matching_to_json(trace.input);
  json iterations = json::array();
  for (const SetOfferingStep& step : trace.steps) {
    json it;
    json offers = json::object();
    for (const auto& [f, s] : step.offers) {
      json workers = json::array();
      for (WorkerId w : s) workers.push_back(w.value);
      offers[std::to_string(f.value)] = std::move(workers);
    }
    json available = json::object();
    for (const auto& [f, s] : step.available) {
      json workers = json::array();
      for (WorkerId w : s) workers.push_back(w.value);
      available[std::to_string(f.value)] = std::move(workers);
    }
    it["offers"] = std::move(offers);
    it["available"] = std::move(available);
    it["matching"] = matching_to_json(step.matching);
    iterations.push_back(std::move(it));
  }
  j["iterations"] = std::move(iterations);
  j["output"] = matching_to_json(trace.output);
  return j;
}

json transition_spec_to_json(const TransitionSpec& spec) {
  json j;
  json retire = json::array();
  for (WorkerId w : spec.retire) retire.push_back(w.value);
  j["retire"] = std::move(retire);
  json add = json::array();
  for (const auto& [id, pref] : spec.add_firms) add.push_back(firm_to_json(id, pref));
  j["add_firms"] = std::move(add);
  return j;
}

TransitionSpec transition_spec_from_json(const json& j) {
  require_keys(j, {"retire", "add_firms"}, "transition");
  TransitionSpec spec;
  if (j.contains("retire")) {
    for (int v : require_id_array(j.at("retire"), "retire list")) {
      spec.retire.push_back(WorkerId{v});
    }
    spec.retire = make_worker_set(std::move(spec.retire));
  }
  if (j.contains("add_firms")) {
    const json& add = j.at("add_firms");
    if (!add.is_array()) throw InputError("\"add_firms\" must be an array");
    for (const json& f : add) spec.add_firms.push_back(firm_from_json(f));
  }
  return spec;
}

json transition_report_to_json(const TransitionReport& report) {
  json assertions = json::array();
  for (const AssertionResult& a : report.assertions) {
    json entry;
    entry["name"] = a.name;
    entry["passed"] = a.passed;
    entry["witness"] = a.witness;
    assertions.push_back(std::move(entry));
  }
  json j;
  j["assertions"] = std::move(assertions);
  j["all_passed"] = report.all_passed();
  return j;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace restab
