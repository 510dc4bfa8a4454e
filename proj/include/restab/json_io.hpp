#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "restab/disruption.hpp"

namespace restab {

// All parsers reject unknown object keys and wrong JSON types with
// InputError; emitted JSON is canonical (agents sorted by id, object keys
// sorted by nlohmann's object ordering) so identical values serialize to
// identical bytes.

nlohmann::json market_to_json(const Market& m);
Market market_from_json(const nlohmann::json& j);

nlohmann::json matching_to_json(const Matching& mu);
// Binds the assignment to a market: exactly the market's workers must appear.
Matching matching_from_json(const nlohmann::json& j, const Market& m);

nlohmann::json trace_to_json(const SetOfferingTrace& trace);

nlohmann::json transition_spec_to_json(const TransitionSpec& spec);
TransitionSpec transition_spec_from_json(const nlohmann::json& j);

nlohmann::json transition_report_to_json(const TransitionReport& report);

nlohmann::json load_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace restab
