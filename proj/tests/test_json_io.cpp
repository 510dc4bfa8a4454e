#include <doctest.h>

#include "restab/generator.hpp"
#include "restab/json_io.hpp"
#include "test_helpers.hpp"

using namespace restab;
using namespace restab::testing;
using nlohmann::json;

TEST_CASE("market serialization round-trips over generated instances") {
  for (auto family : {PreferenceFamily::responsive, PreferenceFamily::explicit_validated}) {
    const ScenarioConfig cfg{.rng_seed = 50, .n_firms = 3, .n_workers = 4, .quota_max = 2,
                             .acceptability_density = 0.6, .family = family};
    for (int trial = 0; trial < 10; ++trial) {
      const Market m = generate_market(cfg, trial);
      const json j = market_to_json(m);
      CHECK(market_to_json(market_from_json(j)) == j);
    }
  }
}

TEST_CASE("matching serialization round-trips and binds to the market") {
  const Market m = responsive_market({{0, 2, {0, 1, 2}}, {1, 1, {2}}},
                                     {{0, {0}}, {1, {0}}, {2, {1, 0}}});
  const Matching mu = matching_of(m, {{0, 0}, {2, 1}});
  const json j = matching_to_json(mu);
  CHECK(matching_from_json(j, m) == mu);
  CHECK(j.at("assignment").at("1").is_null());
}

TEST_CASE("unknown keys are rejected everywhere") {
  const json market = {{"firms", json::array()}, {"workers", json::array()}, {"extra", 1}};
  CHECK_THROWS_AS(market_from_json(market), InputError);

  const json bad_firm = {
      {"firms", json::array({{{"id", 0}, {"quota", 1}, {"ranking", json::array()}, {"note", "x"}}})},
      {"workers", json::array({{{"id", 0}, {"ranking", json::array()}}})}};
  CHECK_THROWS_AS(market_from_json(bad_firm), InputError);

  const json bad_worker = {
      {"firms", json::array({{{"id", 0}, {"quota", 1}, {"ranking", json::array()}}})},
      {"workers", json::array({{{"id", 0}, {"ranking", json::array()}, {"age", 3}}})}};
  CHECK_THROWS_AS(market_from_json(bad_worker), InputError);

  const Market m = responsive_market({{0, 1, {0}}}, {{0, {0}}});
  CHECK_THROWS_AS(matching_from_json({{"assignment", json::object()}, {"x", 0}}, m), InputError);
  CHECK_THROWS_AS(transition_spec_from_json({{"retire", json::array()}, {"y", 0}}), InputError);
}

TEST_CASE("a firm carries exactly one preference body") {
  const json both = {
      {"firms", json::array({{{"id", 0},
                              {"quota", 1},
                              {"ranking", json::array()},
                              {"subset_order", json::array()}}})},
      {"workers", json::array({{{"id", 0}, {"ranking", json::array()}}})}};
  CHECK_THROWS_AS(market_from_json(both), InputError);
  const json neither = {
      {"firms", json::array({{{"id", 0}, {"quota", 1}}})},
      {"workers", json::array({{{"id", 0}, {"ranking", json::array()}}})}};
  CHECK_THROWS_AS(market_from_json(neither), InputError);
}

TEST_CASE("matchings must cover exactly the market's workers") {
  const Market m = responsive_market({{0, 1, {0, 1}}}, {{0, {0}}, {1, {0}}});
  CHECK_THROWS_AS(matching_from_json({{"assignment", {{"0", nullptr}}}}, m), InputError);
  CHECK_THROWS_AS(
      matching_from_json({{"assignment", {{"0", nullptr}, {"1", nullptr}, {"2", nullptr}}}}, m),
      InputError);
  CHECK_THROWS_AS(matching_from_json({{"assignment", {{"0", 9}, {"1", nullptr}}}}, m), InputError);
  CHECK_THROWS_AS(matching_from_json({{"assignment", {{"zero", 0}, {"1", nullptr}}}}, m),
                  InputError);
}

TEST_CASE("negative ids and wrong types are parse errors") {
  const json negative = {
      {"firms", json::array({{{"id", -1}, {"quota", 1}, {"ranking", json::array()}}})},
      {"workers", json::array({{{"id", 0}, {"ranking", json::array()}}})}};
  CHECK_THROWS_AS(market_from_json(negative), InputError);
  const json stringy = {
      {"firms", json::array({{{"id", "a"}, {"quota", 1}, {"ranking", json::array()}}})},
      {"workers", json::array({{{"id", 0}, {"ranking", json::array()}}})}};
  CHECK_THROWS_AS(market_from_json(stringy), InputError);
}

TEST_CASE("transition specs round-trip") {
  TransitionSpec spec;
  spec.retire = ws({1, 3});
  spec.add_firms.push_back({FirmId{9}, FirmPreference{2, ResponsivePreference{{WorkerId{0}}}}});
  const json j = transition_spec_to_json(spec);
  const TransitionSpec back = transition_spec_from_json(j);
  CHECK(transition_spec_to_json(back) == j);
}

TEST_CASE("missing files and malformed JSON raise input errors") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"), InputError);
}
