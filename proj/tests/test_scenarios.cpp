#include <gtest/gtest.h>

#include <random>
#include <set>

#include "k3calc/double_cover.hpp"
#include "k3calc/scenarios.hpp"
#include "k3calc/serialize.hpp"

using namespace k3calc;

namespace {

const std::vector<ScenarioInfo>& registry() {
  static const auto r = list_scenarios();
  return r;
}

bool has_family(const std::string& family) {
  for (const auto& s : registry()) {
    if (s.name.rfind(family, 0) == 0) return true;
  }
  return false;
}

}  // namespace

TEST(Registry, ListingContainsTheConstructions) {
  EXPECT_GE(registry().size(), 10u);
  for (const char* f : {"lemma2_4a", "example2_8", "lemma2_4b", "lemma3_2_n9", "lemma4_1", "lemma5_1", "lemma6_1",
                        "example2_7", "corollary5_r10", "corollary8_arith", "theorem3prime_types",
                        "persson_extremal", "ell_infinity", "ell_nodal", "gn2_degeneration"}) {
    EXPECT_TRUE(has_family(f)) << f;
  }
  std::set<std::string> names;
  for (const auto& s : registry()) EXPECT_TRUE(names.insert(s.name).second) << s.name;
}

TEST(Registry, UnknownScenarioAndBadArguments) {
  try {
    run_scenario("lemma9_9");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unknown_id);
  }
  EXPECT_THROW(run_scenario("lemma2_4a(1)"), Error);
  EXPECT_THROW(run_scenario("example2_8(3,3)"), Error);
  EXPECT_THROW(parse_mutation("flip"), Error);
}

TEST(Scenarios, EveryRegisteredScenarioPasses) {
  for (const auto& s : registry()) {
    auto r = run_scenario(s.name);
    EXPECT_TRUE(r.passed()) << s.name << "\n" << to_json(r).dump(2);
    for (const auto& e : r.checks) {
      EXPECT_TRUE(e.origin == "published" || e.origin == "derived") << s.name << ": " << e.name;
    }
  }
}

TEST(Scenarios, MutationsAreDetected) {
  for (const auto& s : registry()) {
    for (auto m : s.mutations) {
      auto r = run_scenario(s.name, {m, false});
      EXPECT_FALSE(r.passed()) << s.name << " survived " << to_string(m);
    }
  }
}

TEST(Scenarios, RunsAreDeterministic) {
  for (const char* name : {"lemma2_4a(5,5)", "lemma3_2_n9", "gn2_degeneration"}) {
    auto a = run_scenario(name), b = run_scenario(name);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
    for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
      EXPECT_EQ(emit(a.artifacts[i].second, "json"), emit(b.artifacts[i].second, "json"));
    }
  }
}

TEST(Scenarios, FixedLocusCountsCoverOneToTen) {
  std::set<int> seen;
  for (const auto& s : registry()) {
    auto r = run_scenario(s.name);
    if (!r.fixed) continue;
    EXPECT_LE(r.fixed->m, 10) << s.name;
    seen.insert(r.fixed->m);
  }
  for (int m = 1; m <= 10; ++m) EXPECT_TRUE(seen.count(m)) << m;
}

TEST(Scenarios, PublishedFixedLoci) {
  auto r55 = run_scenario("lemma2_4a(5,5)");
  ASSERT_TRUE(r55.fixed);
  EXPECT_EQ(r55.fixed->m, 10);
  EXPECT_EQ(r55.fixed->genera, std::vector<int>(10, 0));

  auto ell = run_scenario("lemma6_1(9)");
  ASSERT_TRUE(ell.fixed);
  std::vector<int> want(9, 0);
  want.push_back(1);
  EXPECT_EQ(ell.fixed->genera, want);

  auto two = run_scenario("lemma4_1");
  ASSERT_TRUE(two.fixed);
  EXPECT_EQ(two.fixed->genera, (std::vector<int>{1, 1}));

  auto one = run_scenario("lemma5_1(1)");
  ASSERT_TRUE(one.fixed);
  EXPECT_EQ(one.fixed->genera, std::vector<int>{1});
}

// Branch curves pull back with half the self-intersection, and the
// upstairs Euler number is 2e(S) - e(B).
TEST(Scenarios, UpstairsInvariants) {
  for (const auto& s : registry()) {
    if (!s.k3_certificate) continue;
    auto r = run_scenario(s.name);
    const Config* down = r.artifact("S");
    const Config* up = r.artifact("X");
    ASSERT_TRUE(down && up) << s.name;
    int eb = 0;
    for (const auto& c : down->curves) {
      if (!c.is_branch) continue;
      EXPECT_EQ(2 * up->curve("C[" + c.id + "]").self_int, c.self_int) << s.name << " " << c.id;
      eb += 2 - 2 * c.genus;
    }
    EXPECT_EQ(up->ledger.euler, 2 * down->ledger.euler - eb) << s.name;
    EXPECT_EQ(up->ledger.euler, 24) << s.name;
    for (const auto& e : up->edges) {
      EXPECT_FALSE(up->curve(e.a).sigma.kind == SigmaKind::fixed && up->curve(e.b).sigma.kind == SigmaKind::fixed)
          << s.name;
    }
  }
}

// Flipping the branch flag of any curve that meets another curve D changes
// (2K + B).D or makes the branch locus meet itself, so it must be caught.
// Valid branch data always satisfies the relation.
TEST(Scenarios, RandomBranchPerturbationsFail) {
  std::mt19937 rng(3);
  int tried = 0;
  for (const auto& s : registry()) {
    if (!s.k3_certificate) continue;
    auto r = run_scenario(s.name);
    const Config* down = r.artifact("S");
    ASSERT_TRUE(down);
    auto base = validate_branch(BranchData::from_flags(*down));
    ASSERT_TRUE(base.ok);
    EXPECT_EQ(base.relation, 0);
    for (int k = 0; k < 6; ++k) {
      Config c = *down;
      auto& node = c.curves[rng() % c.curves.size()];
      if (c.neighbours(node.id).empty()) continue;
      node.is_branch = !node.is_branch;
      auto rep = validate_branch(BranchData::from_flags(c));
      EXPECT_FALSE(rep.ok) << s.name << " flipping " << node.id;
      ++tried;
    }
  }
  EXPECT_GT(tried, 200);
}

TEST(Scenarios, ReportJsonShape) {
  auto r = run_scenario("example2_8(1,9)");
  auto j = to_json(r);
  EXPECT_EQ(j["name"], "example2_8(1,9)");
  EXPECT_EQ(j["passed"], true);
  bool found = false;
  for (const auto& c : j["checks"]) {
    if (c["name"] == "singularity of the 19-chain") {
      found = true;
      EXPECT_EQ(c["actual"], "C_{40,19}");
      EXPECT_EQ(c["origin"], "published");
    }
  }
  EXPECT_TRUE(found);
}

TEST(Scenarios, ExampleSevenNotesTheReading) {
  auto r = run_scenario("example2_7");
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes.front().find("plane sextic"), std::string::npos);
}
