#include <gtest/gtest.h>

#include <set>

#include "k3calc/fibration.hpp"
#include "k3calc/recognize.hpp"
#include "oracles.hpp"

using namespace k3calc;
using K = KodairaType::Kind;

namespace {

std::vector<KodairaType> all_table_types() {
  std::vector<KodairaType> t;
  for (int n = 0; n <= 9; ++n) t.push_back(KodairaType::I(n));
  for (int n = 0; n <= 4; ++n) t.push_back(KodairaType::I_star(n));
  for (auto k : {K::II, K::III, K::IV, K::IV_star, K::III_star, K::II_star}) t.push_back(KodairaType::of(k));
  return t;
}

}  // namespace

TEST(KodairaTypes, ParseAndPrint) {
  EXPECT_EQ(KodairaType::parse("I_9"), KodairaType::I(9));
  EXPECT_EQ(KodairaType::parse("I9"), KodairaType::I(9));
  EXPECT_EQ(KodairaType::parse("I_0*"), KodairaType::I_star(0));
  EXPECT_EQ(KodairaType::parse("IV*"), KodairaType::of(K::IV_star));
  EXPECT_EQ(KodairaType::parse("smooth"), KodairaType::I(0));
  EXPECT_EQ(KodairaType::I_star(2).to_string(), "I_2*");
  EXPECT_THROW(KodairaType::parse("V"), Error);
  for (auto t : all_table_types()) EXPECT_EQ(KodairaType::parse(t.to_string()), t);
}

TEST(KodairaTypes, ReferenceFibersAreRecognised) {
  for (auto t : all_table_types()) {
    auto d = fiber_data(t);
    EXPECT_EQ(kodaira_type(d.reference), t) << t.to_string();
    EXPECT_EQ(static_cast<int>(d.reference.curves.size()), d.shape.components) << t.to_string();
    auto ids = d.reference.curve_ids();
    for (const auto& id : ids) EXPECT_EQ(oracle::fiber_dot(d.reference, ids, id), 0) << t.to_string();
  }
}

TEST(KodairaTypes, EulerNumbers) {
  EXPECT_EQ(fiber_shape(KodairaType::I(0)).euler, 0);
  EXPECT_EQ(fiber_shape(KodairaType::I(7)).euler, 7);
  EXPECT_EQ(fiber_shape(KodairaType::I_star(3)).euler, 9);
  EXPECT_EQ(fiber_shape(KodairaType::of(K::II)).euler, 2);
  EXPECT_EQ(fiber_shape(KodairaType::of(K::III)).euler, 3);
  EXPECT_EQ(fiber_shape(KodairaType::of(K::IV)).euler, 4);
  EXPECT_EQ(fiber_shape(KodairaType::of(K::IV_star)).euler, 8);
  EXPECT_EQ(fiber_shape(KodairaType::of(K::III_star)).euler, 9);
  EXPECT_EQ(fiber_shape(KodairaType::of(K::II_star)).euler, 10);
  for (auto t : all_table_types()) {
    // e = components for I_n (n >= 1), components + 1 otherwise (I_0: 0).
    const auto s = fiber_shape(t);
    if (t.kind == K::I) {
      EXPECT_EQ(s.euler, t.n);
    } else {
      EXPECT_EQ(s.euler, s.components + 1) << t.to_string();
    }
  }
  EXPECT_THROW(fiber_shape(KodairaType::none()), Error);
}

TEST(KodairaTypes, NotAFiber) {
  Config c;
  c.add_curve({"A", -2, 0, 1, false, {}});
  c.add_curve({"B", -2, 0, 1, false, {}});
  c.connect("A", "B");
  EXPECT_TRUE(kodaira_type(c).is_none());
  EXPECT_EQ(dynkin_type(c).to_string(), "A_2");
  c.add_curve({"Z", -2, 0, 1, false, {}});
  EXPECT_THROW(dynkin_type(c), Error);
}

TEST(Enumeration, Pairs) {
  auto pairs = enumerate_pairs();
  EXPECT_EQ(pairs.size(), 45u);
  EXPECT_EQ(enumerate_unordered_pairs().size(), 25u);
  std::set<std::pair<int, int>> want;
  for (int a = 1; a <= 9; ++a)
    for (int b = 1; a + b <= 10; ++b) want.insert({a, b});
  EXPECT_EQ((std::set<std::pair<int, int>>(pairs.begin(), pairs.end())), want);
  EXPECT_EQ(std::count(pairs.begin(), pairs.end(), std::make_pair(0, 5)), 0);
}

TEST(Enumeration, EulerAndRankConditions) {
  std::vector<KodairaType> persson{KodairaType::I(9), KodairaType::I(1), KodairaType::I(1), KodairaType::I(1)};
  EXPECT_TRUE(check_euler_sum(persson, 12));
  EXPECT_TRUE(rank_bound_ok(persson, 8));
  std::vector<KodairaType> too_big{KodairaType::of(K::II), KodairaType::I(10)};
  EXPECT_TRUE(check_euler_sum(too_big, 12));
  EXPECT_FALSE(rank_bound_ok(too_big, 8));
  for (const auto& f : realizable_fixtures()) {
    EXPECT_TRUE(check_euler_sum(f, 12));
    EXPECT_TRUE(rank_bound_ok(f, 8));
  }
}

TEST(Enumeration, ConfigurationsPassBothConditionsAndContainPairs) {
  auto configs = enumerate_configurations(12, 8);
  EXPECT_FALSE(configs.empty());
  auto pairs = enumerate_pairs();
  std::set<std::vector<std::string>> seen;
  for (const auto& c : configs) {
    EXPECT_TRUE(check_euler_sum(c, 12));
    EXPECT_TRUE(rank_bound_ok(c, 8));
    std::vector<std::string> key;
    for (auto t : c) key.push_back(t.to_string());
    std::sort(key.begin(), key.end());
    EXPECT_TRUE(seen.insert(key).second) << "duplicate multiset";
    // Any two I_n (n >= 1) fibers of the multiset form an admissible pair.
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (i == j || c[i].kind != K::I || c[j].kind != K::I) continue;
        auto p = std::make_pair(c[i].n, c[j].n);
        EXPECT_NE(std::find(pairs.begin(), pairs.end(), p), pairs.end());
      }
    }
  }
  for (const auto& f : realizable_fixtures()) {
    std::vector<std::string> key;
    for (auto t : f) key.push_back(t.to_string());
    std::sort(key.begin(), key.end());
    EXPECT_TRUE(seen.count(key));
  }
}

TEST(Prepare, BlowUpCountsAndShapes) {
  auto ii = prepare_fiber(KodairaType::of(K::II));
  EXPECT_EQ(ii.blow_ups, 1);
  EXPECT_EQ(ii.cover_case, CoverCase::alpha());

  auto iii = prepare_fiber(KodairaType::of(K::III));
  EXPECT_EQ(iii.blow_ups, 2);
  EXPECT_EQ(iii.cover_case, CoverCase::beta());
  EXPECT_EQ(iii.config.curve("H1").self_int, -1);
  EXPECT_EQ(iii.config.curve("H2").self_int, -2);
  EXPECT_EQ(iii.config.curve("D1").self_int, -4);
  EXPECT_EQ(iii.config.curve("D2").self_int, -4);
  EXPECT_EQ(iii.config.curve("H1").mult, 4);
  EXPECT_EQ(iii.config.curve("H2").mult, 2);

  auto iv = prepare_fiber(KodairaType::of(K::IV));
  EXPECT_EQ(iv.blow_ups, 4);
  EXPECT_EQ(iv.cover_case, CoverCase::gamma());
  EXPECT_EQ(iv.config.curve("D4").mult, 3);
  for (int i = 1; i <= 3; ++i) {
    EXPECT_EQ(iv.config.curve("H" + std::to_string(i)).mult, 4);
    EXPECT_EQ(iv.config.curve("D" + std::to_string(i)).mult, 1);
  }

  auto i1 = prepare_fiber(KodairaType::I(1));
  EXPECT_EQ(i1.blow_ups, 1);
  EXPECT_EQ(i1.config.curve("D1").self_int, -4);
  EXPECT_EQ(i1.config.curve("H1").mult, 2);
  EXPECT_EQ(i1.cover_case, CoverCase::delta(1));

  for (int n = 1; n <= 10; ++n) {
    auto p = prepare_fiber(KodairaType::I(n));
    EXPECT_EQ(p.blow_ups, n);
    EXPECT_EQ(p.config.ledger.k_squared, -n);
    auto ids = p.config.curve_ids();
    for (const auto& id : ids) EXPECT_EQ(oracle::fiber_dot(p.config, ids, id), 0);
  }
  EXPECT_THROW(prepare_fiber(KodairaType::I_star(0)), Error);
  EXPECT_THROW(prepare_fiber(KodairaType::of(K::II_star)), Error);
}

TEST(Prepare, StopsEarlyWhenAsked) {
  PrepareOptions po;
  po.max_blow_ups = 3;
  auto p = prepare_fiber(KodairaType::I(5), po);
  EXPECT_EQ(p.blow_ups, 3);
}

TEST(AntiBicanonical, Dimension) {
  EXPECT_EQ(dim_anti_bicanonical(1), 3);
  EXPECT_EQ(dim_anti_bicanonical(9), 27);
  EXPECT_EQ(dim_anti_bicanonical(9 + -8), 3);
  EXPECT_THROW(dim_anti_bicanonical(0), Error);
}
