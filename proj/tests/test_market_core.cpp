#include <doctest.h>

#include "restab/generator.hpp"
#include "test_helpers.hpp"

using namespace restab;
using namespace restab::testing;

namespace {

// Three workers, quota 2, a validated explicit order under which the firm
// holding only worker 2 would trade it away once both better workers show up.
Market small_explicit_market() {
  return explicit_market(
      {{0, 2, {{0, 1}, {0, 2}, {1, 2}, {0}, {1}, {2}, {}}}},
      {{0, {0}}, {1, {0}}, {2, {0}}});
}

}  // namespace

TEST_CASE("choice picks the top of a responsive ranking up to quota") {
  const Market m = responsive_market({{0, 2, {1, 2, 3}}},
                                     {{1, {0}}, {2, {0}}, {3, {0}}});
  CHECK(choice(m, FirmId{0}, ws({1, 2, 3})) == ws({1, 2}));
  CHECK(choice(m, FirmId{0}, ws({2, 3})) == ws({2, 3}));
  CHECK(choice(m, FirmId{0}, ws({})) == ws({}));
  CHECK(choice(m, FirmId{0}, ws({3})) == ws({3}));
}

TEST_CASE("choice rejects unknown agents") {
  const Market m = responsive_market({{0, 1, {0}}}, {{0, {0}}});
  CHECK_THROWS_AS(choice(m, FirmId{9}, ws({0})), InputError);
  CHECK_THROWS_AS(choice(m, FirmId{0}, ws({5})), InputError);
}

TEST_CASE("explicit choice equals the exhaustive-scan oracle on every pool") {
  const Market m = small_explicit_market();
  REQUIRE(validate_substitutable(m.firm_pref(FirmId{0}), m));
  REQUIRE(validate_q_separable(m.firm_pref(FirmId{0}), m));
  for_each_subset(m.worker_id_set(), [&](const WorkerSet& pool) {
    CHECK(choice(m, FirmId{0}, pool) == oracle_choice_explicit(m, FirmId{0}, pool));
  });
}

TEST_CASE("choice is idempotent and quota-bounded") {
  const Market m = responsive_market({{0, 2, {0, 1, 2, 3}}, {1, 3, {3, 2}}},
                                     {{0, {0}}, {1, {0}}, {2, {0, 1}}, {3, {1, 0}}});
  for (FirmId f : m.firm_ids()) {
    const int quota = m.firm_pref(f).quota;
    for_each_subset(m.worker_id_set(), [&](const WorkerSet& pool) {
      const WorkerSet chosen = choice(m, f, pool);
      CHECK(static_cast<int>(chosen.size()) <= quota);
      CHECK(choice(m, f, chosen) == chosen);
    });
  }
}

TEST_CASE("responsive choice fills the quota when enough acceptable workers exist") {
  const Market m = responsive_market({{0, 2, {0, 1, 2}}}, {{0, {0}}, {1, {0}}, {2, {0}}, {3, {0}}});
  for_each_subset(m.worker_id_set(), [&](const WorkerSet& pool) {
    const WorkerSet acceptable = set_intersect(pool, m.acceptable_workers(FirmId{0}));
    if (acceptable.size() >= 2) CHECK(choice(m, FirmId{0}, pool).size() == 2);
  });
}

TEST_CASE("responsive choice ignores removed non-chosen workers") {
  // Substitutability of the responsive family, exhaustively.
  const ScenarioConfig cfg{.rng_seed = 11, .n_firms = 2, .n_workers = 6, .quota_max = 3,
                           .acceptability_density = 0.7};
  for (int trial = 0; trial < 10; ++trial) {
    const Market m = generate_market(cfg, trial);
    for (FirmId f : m.firm_ids()) {
      for_each_subset(m.worker_id_set(), [&](const WorkerSet& pool) {
        const WorkerSet chosen = choice(m, f, pool);
        for (WorkerId dropped : pool) {
          if (set_contains(chosen, dropped)) continue;
          CHECK(choice(m, f, set_without(pool, dropped)) == chosen);
        }
      });
    }
  }
}

TEST_CASE("substitutability validator accepts responsive and matching explicit orders") {
  const Market m = responsive_market({{0, 2, {0, 1, 2}}}, {{0, {0}}, {1, {0}}, {2, {0}}});
  CHECK(validate_substitutable(m.firm_pref(FirmId{0}), m));

  // Explicit order spelling out the same induced choice as ranking 0>1, q=1.
  const Market e = explicit_market({{0, 1, {{0}, {1}, {}}}}, {{0, {0}}, {1, {0}}});
  CHECK(validate_substitutable(e.firm_pref(FirmId{0}), e));
  CHECK(validate_q_separable(e.firm_pref(FirmId{0}), e));
}

TEST_CASE("substitutability validator rejects complements") {
  // {w0,w1} > {} > {w0} > {w1}: each worker is only wanted with the other.
  const Market m = explicit_market({{0, 2, {{0, 1}, {}, {0}, {1}}}}, {{0, {0}}, {1, {0}}});
  CHECK_FALSE(validate_substitutable(m.firm_pref(FirmId{0}), m));
}

TEST_CASE("substitutability validator enforces its size guard") {
  const Market m = responsive_market({{0, 1, {0}}}, {{0, {0}}, {1, {}}, {2, {}}});
  CHECK_THROWS_AS(validate_substitutable(m.firm_pref(FirmId{0}), m, 2), SizeGuardError);
}

TEST_CASE("q-separability validator accepts responsive preferences") {
  const Market m = responsive_market({{0, 3, {2, 0}}}, {{0, {0}}, {1, {}}, {2, {0}}});
  CHECK(validate_q_separable(m.firm_pref(FirmId{0}), m));
}

TEST_CASE("q-separability rejects an over-quota set above the empty set") {
  const Market m = explicit_market({{0, 1, {{0, 1}, {0}, {1}, {}}}}, {{0, {0}}, {1, {0}}});
  CHECK_FALSE(validate_q_separable(m.firm_pref(FirmId{0}), m));
}

TEST_CASE("q-separability rejects an acceptable worker that worsens an undersized set") {
  // Worker 1 is acceptable ({1} above {}), yet joining {0} makes it worse.
  const Market m = explicit_market(
      {{0, 2, {{0, 2}, {1, 2}, {0}, {0, 1}, {1}, {2}, {}}}},
      {{0, {0}}, {1, {0}}, {2, {0}}});
  CHECK_FALSE(validate_q_separable(m.firm_pref(FirmId{0}), m));
}

TEST_CASE("acceptable coalitions need mutual acceptability and a nonempty set") {
  const Market m = responsive_market({{0, 2, {0, 1, 2}}},
                                     {{0, {0}}, {1, {0}}, {2, {}}});
  CHECK_FALSE(is_acceptable_coalition(ws({}), FirmId{0}, m));
  CHECK(is_acceptable_coalition(ws({0}), FirmId{0}, m));
  CHECK(is_acceptable_coalition(ws({0, 1}), FirmId{0}, m));
  CHECK_FALSE(is_acceptable_coalition(ws({0, 2}), FirmId{0}, m));  // w2 rejects f
  CHECK_FALSE(is_acceptable_coalition(ws({0, 1, 2}), FirmId{0}, m));
}

TEST_CASE("individual rationality") {
  const Market m = responsive_market({{0, 1, {0, 1}}, {1, 1, {0}}},
                                     {{0, {0}}, {1, {1}}});
  CHECK(is_individually_rational(Matching::empty_for(m), m));
  // Worker 1 never listed firm 0.
  CHECK_FALSE(is_individually_rational(matching_of(m, {{1, 0}}), m));
  // Firm 0 holding two workers with quota one fires somebody.
  const Market m2 = responsive_market({{0, 1, {0, 1}}}, {{0, {0}}, {1, {0}}});
  CHECK_FALSE(is_individually_rational(matching_of(m2, {{0, 0}, {1, 0}}), m2));
}

TEST_CASE("blocking pairs on a one-firm market, by hand enumeration") {
  const Market m = responsive_market({{0, 1, {1, 2}}}, {{1, {0}}, {2, {0}}});
  // Three individually rational matchings: empty, w1-f, w2-f.
  CHECK(blocking_pairs(matching_of(m, {{1, 0}}), m).empty());
  const auto from_w2 = blocking_pairs(matching_of(m, {{2, 0}}), m);
  REQUIRE(from_w2.size() == 1);
  CHECK(from_w2[0] == std::pair{WorkerId{1}, FirmId{0}});
  const auto from_empty = blocking_pairs(Matching::empty_for(m), m);
  CHECK(from_empty.size() == 2);
}

TEST_CASE("a mutually acceptable pair blocks the empty matching") {
  const Market m = responsive_market({{0, 1, {0}}}, {{0, {0}}});
  const auto blocks = blocking_pairs(Matching::empty_for(m), m);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0] == std::pair{WorkerId{0}, FirmId{0}});
  CHECK_FALSE(is_stable(Matching::empty_for(m), m));
  CHECK(is_stable(matching_of(m, {{0, 0}}), m));
}

TEST_CASE("envy sets") {
  const Market m = responsive_market({{0, 2, {0, 1}}}, {{0, {0}}, {1, {0}}, {2, {}}});
  CHECK(envy_set(FirmId{0}, Matching::empty_for(m), m) == ws({0, 1}));
  // At the firm optimum nobody acceptable is left envious; w2 never lists f.
  const Matching mu_f = matching_of(m, {{0, 0}, {1, 0}});
  CHECK(envy_set(FirmId{0}, mu_f, m) == ws({}));
}

TEST_CASE("envy set is empty for a universally unacceptable firm") {
  const Market m = responsive_market({{0, 1, {0}}, {1, 1, {0}}}, {{0, {0}}, {1, {0}}});
  CHECK(envy_set(FirmId{1}, Matching::empty_for(m), m) == ws({}));
}

TEST_CASE("quasi-stability holds for the empty matching and fails on a displaced favorite") {
  const Market m = responsive_market({{0, 1, {1, 2}}}, {{1, {0}}, {2, {0}}});
  CHECK(is_firm_quasi_stable(Matching::empty_for(m), m));
  // f holds its second choice while its first choice prefers f: f would fire.
  CHECK_FALSE(is_firm_quasi_stable(matching_of(m, {{2, 0}}), m));
  CHECK(is_firm_quasi_stable(matching_of(m, {{1, 0}}), m));
}

TEST_CASE("quasi-stability needs the whole envy set, not just singletons") {
  // Ranking w0 > w1 > w2, quota 2, f holds only its worst-ranked worker.
  // Each envious worker alone fits next to w2, but both together displace it.
  const Market m = responsive_market({{0, 2, {0, 1, 2}}}, {{0, {0}}, {1, {0}}, {2, {0}}});
  const Matching mu = matching_of(m, {{2, 0}});
  for (WorkerId envious : {WorkerId{0}, WorkerId{1}}) {
    const WorkerSet pool = set_with(mu.assigned_to(FirmId{0}), envious);
    CHECK(is_subset_of(mu.assigned_to(FirmId{0}), choice(m, FirmId{0}, pool)));
  }
  CHECK_FALSE(is_firm_quasi_stable(mu, m));
  CHECK_FALSE(oracle_fqs_literal(mu, m));
}

TEST_CASE("stability implies quasi-stability on every matching of small markets") {
  const Market m = responsive_market({{0, 2, {0, 1, 2}}, {1, 1, {2, 1}}},
                                     {{0, {0}}, {1, {0, 1}}, {2, {1, 0}}});
  for_each_matching_of(m, [&](const Matching& mu) {
    if (is_stable(mu, m)) CHECK(is_firm_quasi_stable(mu, m));
  });
}

TEST_CASE("fast quasi-stability check matches the literal definition exhaustively") {
  SUBCASE("responsive markets") {
    const ScenarioConfig cfg{.rng_seed = 3, .n_firms = 2, .n_workers = 4, .quota_max = 3,
                             .acceptability_density = 0.8};
    for (int trial = 0; trial < 20; ++trial) {
      const Market m = generate_market(cfg, trial);
      for_each_matching_of(m, [&](const Matching& mu) {
        CHECK(is_firm_quasi_stable(mu, m) == oracle_fqs_literal(mu, m));
      });
    }
  }
  SUBCASE("explicit markets") {
    const Market m = small_explicit_market();
    for_each_matching_of(m, [&](const Matching& mu) {
      CHECK(is_firm_quasi_stable(mu, m) == oracle_fqs_literal(mu, m));
    });
  }
}

TEST_CASE("market construction rejects structural defects") {
  CHECK_THROWS_AS(responsive_market({}, {{0, {}}}), InputError);
  CHECK_THROWS_AS(responsive_market({{0, 1, {}}}, {}), InputError);
  CHECK_THROWS_AS(responsive_market({{0, 0, {0}}}, {{0, {0}}}), InputError);  // quota < 1
  CHECK_THROWS_AS(responsive_market({{0, 1, {0, 0}}}, {{0, {0}}}), InputError);  // dup ranking
  CHECK_THROWS_AS(responsive_market({{0, 1, {7}}}, {{0, {0}}}), InputError);  // unknown worker
  CHECK_THROWS_AS(responsive_market({{0, 1, {0}}}, {{0, {4}}}), InputError);  // unknown firm
  CHECK_THROWS_AS(responsive_market({{0, 1, {0}}, {0, 1, {0}}}, {{0, {0}}}), InputError);
  // Explicit order missing a subset of size <= quota.
  CHECK_THROWS_AS(explicit_market({{0, 2, {{0, 1}, {0}, {}}}}, {{0, {0}}, {1, {0}}}), InputError);
  // Quota above the worker count only requires the subsets that exist.
  CHECK_NOTHROW(explicit_market({{0, 3, {{0, 1}, {0}, {1}, {}}}}, {{0, {0}}, {1, {0}}}));
}

TEST_CASE("firm-side set comparison under the responsive completion") {
  const Market m = responsive_market({{0, 2, {0, 1, 2, 3}}},
                                     {{0, {0}}, {1, {0}}, {2, {0}}, {3, {0}}});
  const FirmId f{0};
  CHECK(firm_prefers_set(m, f, ws({0, 1}), ws({0, 2})));
  CHECK(firm_prefers_set(m, f, ws({0, 3}), ws({1, 2})));
  CHECK_FALSE(firm_prefers_set(m, f, ws({1, 2}), ws({0, 3})));
  CHECK(firm_prefers_set(m, f, ws({0, 1}), ws({0})));      // superset of acceptables
  CHECK_FALSE(firm_prefers_set(m, f, ws({0}), ws({0, 1})));
  CHECK_THROWS_AS(firm_prefers_set(m, f, ws({0}), ws({1, 2})), IncomparableError);
}
