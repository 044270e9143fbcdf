#include <gtest/gtest.h>

#include <random>

#include "k3calc/birational.hpp"
#include "k3calc/fibration.hpp"
#include "k3calc/gram.hpp"
#include "oracles.hpp"

using namespace k3calc;

namespace {

// Random configuration of at most 12 curves. Tangency only between smooth
// branches, grouped so that contact is constant inside a tangent group.
Config random_config(std::mt19937& rng) {
  std::uniform_int_distribution<int> ncurves(1, 12), self(-5, 3), genus(0, 2), coin(0, 3);
  Config c;
  c.ledger = InvariantLedger::rational(std::uniform_int_distribution<int>(-3, 9)(rng));
  const int n = ncurves(rng);
  for (int i = 0; i < n; ++i) c.add_curve({"C" + std::to_string(i), self(rng), genus(rng), 1, false, {}});
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int npoints = std::uniform_int_distribution<int>(1, 8)(rng);
  for (int k = 0; k < npoints; ++k) {
    MarkedPoint pt;
    pt.id = "q" + std::to_string(k);
    const int nb = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<int> group;
    for (int b = 0; b < nb; ++b) {
      const bool cusp = nb <= 2 && coin(rng) == 0;
      pt.branches.push_back({"C" + std::to_string(pick(rng)), cusp ? 2 : 1});
      group.push_back(cusp ? -1 - b : coin(rng) % 2);  // cusps are alone
    }
    const int tangent_order = 2 + coin(rng) % 2;
    for (int i = 0; i < nb; ++i) {
      for (int j = i + 1; j < nb; ++j) {
        pt.set_contact(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                       group[static_cast<std::size_t>(i)] == group[static_cast<std::size_t>(j)] ? tangent_order : 1);
      }
    }
    c.add_point(pt);
  }
  // Arithmetic genus must cover the singularities placed on each curve.
  for (auto& node : c.curves) {
    for (const auto& pt : c.points) {
      const int m = pt.multiplicity_of(node.id);
      node.genus += m * (m - 1) / 2;
    }
  }
  c.validate();
  return c;
}

}  // namespace

TEST(BlowUp, RoundTripOnRandomCorpus) {
  std::mt19937 rng(2024);
  int trips = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Config c = random_config(rng);
    for (const auto& pt : c.points) {
      auto r = blow_up_recorded(c, pt.id);
      r.config.validate();
      const auto& e = r.config.curve(r.record.new_curve_id);
      EXPECT_EQ(e.self_int, -1);
      EXPECT_EQ(e.genus, 0);
      EXPECT_EQ(r.config.ledger.k_squared, c.ledger.k_squared - 1);
      EXPECT_EQ(r.config.ledger.rho, c.ledger.rho + 1);
      EXPECT_TRUE(r.config.ledger.consistent());
      // Proper transforms: C^2 drops by M^2 and the genus by M(M-1)/2.
      for (const auto& node : c.curves) {
        const int m = pt.multiplicity_of(node.id);
        EXPECT_EQ(r.config.curve(node.id).self_int, node.self_int - m * m);
        EXPECT_EQ(r.config.curve(node.id).genus, node.genus - m * (m - 1) / 2);
        // E.C' = M, adjunction-compatible K.C' = K.C + M.
        EXPECT_EQ(r.config.intersection(node.id, r.record.new_curve_id), m);
        EXPECT_EQ(r.config.curve(node.id).canonical_degree(), node.canonical_degree() + m);
      }
      Config back = blow_down(r.config, r.record.new_curve_id);
      EXPECT_TRUE(equivalent(back, c)) << "trial " << trial << " point " << pt.id;
      EXPECT_EQ(back.ledger, c.ledger);
      ++trips;
    }
  }
  EXPECT_GT(trips, 300);
}

TEST(BlowUp, IntersectionNumbersDropByProductOfMultiplicities) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    Config c = random_config(rng);
    const auto& pt = c.points.front();
    Config up = blow_up(c, pt.id);
    for (std::size_t i = 0; i < c.curves.size(); ++i) {
      for (std::size_t j = i + 1; j < c.curves.size(); ++j) {
        const auto &a = c.curves[i].id, &b = c.curves[j].id;
        EXPECT_EQ(up.intersection(a, b), c.intersection(a, b) - pt.multiplicity_of(a) * pt.multiplicity_of(b));
      }
    }
  }
}

TEST(BlowUp, FiberClassStaysTrivialUnderTotalTransform) {
  using K = KodairaType::Kind;
  std::mt19937 rng(5);
  for (auto t : {KodairaType::I(1), KodairaType::I(3), KodairaType::I(8), KodairaType::of(K::II),
                 KodairaType::of(K::III), KodairaType::of(K::IV), KodairaType::I_star(1),
                 KodairaType::of(K::IV_star), KodairaType::of(K::II_star)}) {
    Config c = fiber_data(t).reference;
    c.ledger = InvariantLedger::rational(0);
    for (int step = 0; step < 4; ++step) {
      // Blow up a random point of the fiber, or a new free point.
      if (c.points.empty() || step % 2 == 1) c.add_free_point(c.curves[rng() % c.curves.size()].id);
      c = blow_up(c, c.points[rng() % c.points.size()].id);
      auto ids = c.curve_ids();
      for (const auto& id : ids) EXPECT_EQ(oracle::fiber_dot(c, ids, id), 0) << t.to_string() << " " << id;
    }
  }
}

TEST(BlowUp, SeparatesTangentBranchesStepByStep) {
  Config c;
  c.add_curve({"A", 0, 0, 1, false, {}});
  c.add_curve({"B", 0, 0, 1, false, {}});
  auto p = c.connect("A", "B", 3);
  auto r1 = blow_up_recorded(c, p);
  EXPECT_EQ(r1.config.intersection("A", "B"), 2);
  // The remaining contact point also lies on the exceptional curve.
  std::optional<PointId> q;
  for (const auto& id : r1.config.points_on("A")) {
    for (const auto& b : r1.config.point(id).branches) {
      if (b.curve == "B") q = id;
    }
  }
  ASSERT_TRUE(q.has_value());
  EXPECT_FALSE(point_joining(r1.config, "A", "B").has_value());
  auto r2 = blow_up(r1.config, *q);
  EXPECT_EQ(r2.intersection("A", "B"), 1);
}

TEST(BlowUp, CuspBecomesSmoothWithContactTwo) {
  Config c;
  c.add_curve({"F", 0, 1, 1, false, {}});
  auto p = c.add_cusp("F");
  auto r = blow_up_recorded(c, p);
  EXPECT_EQ(r.config.curve("F").self_int, -4);
  EXPECT_EQ(r.config.curve("F").genus, 0);
  EXPECT_EQ(r.config.intersection("F", r.record.new_curve_id), 2);
  EXPECT_EQ(r.record.multiplicity_assigned, 2);
}

TEST(BlowDown, RejectsNonExceptionalCurves) {
  Config c;
  c.add_curve({"A", -2, 0, 1, false, {}});
  c.add_curve({"B", -1, 1, 1, false, {}});
  EXPECT_THROW(blow_down(c, "A"), Error);
  EXPECT_THROW(blow_down(c, "B"), Error);
  c.add_curve({"E", -1, 0, 1, false, {}});
  c.add_unlocated_edge("A", "E", 1);
  EXPECT_THROW(blow_down(c, "E"), Error);
}

TEST(ContractChain, NineteenChainGivesC40_19) {
  for (int n1 = 1; n1 <= 9; ++n1) {
    const int n2 = 10 - n1;
    // (-4) D's separated by (-1) H's, with one (-1) curve M between the halves.
    Config c;
    c.ledger = InvariantLedger::rational(-10);
    std::vector<CurveId> chain;
    auto add = [&](const CurveId& id, int self) {
      c.add_curve({id, self, 0, 1, false, {}});
      if (!chain.empty()) c.connect(chain.back(), id);
      chain.push_back(id);
    };
    for (int i = 1; i <= n1; ++i) {
      add("a" + std::to_string(i), -4);
      if (i < n1) add("h" + std::to_string(i), -1);
    }
    add("M", -1);
    for (int i = 1; i <= n2; ++i) {
      add("b" + std::to_string(i), -4);
      if (i < n2) add("k" + std::to_string(i), -1);
    }
    ASSERT_EQ(chain.size(), 19u);
    auto left = contract_chain(c, chain);
    ContractionOptions right_first;
    right_first.rightmost_first = true;
    auto right = contract_chain(c, chain, right_first);
    EXPECT_EQ(left.label(), "C_{40,19}") << n1;
    EXPECT_EQ(left.brieskorn, (BrieskornType{40, 19}));
    EXPECT_EQ(left.blow_downs, 9);
    EXPECT_EQ(left.weights, hj_expand(40, 19));
    // Order independence.
    EXPECT_EQ(right.label(), left.label());
    EXPECT_EQ(right.weights, left.weights);
    EXPECT_EQ(right.k_squared_singular, left.k_squared_singular);
    EXPECT_EQ(right.rho_singular, left.rho_singular);
    EXPECT_TRUE(equivalent(right.config, left.config));
    // K^2 of the contraction: K_S^2 + 9 minus (alpha B)^2 with alpha = 1/2.
    auto ten = oracle::chain(hj_expand(40, 19));
    Rational sq = 0;
    auto g = oracle::gram(ten);
    for (auto& row : g)
      for (auto v : row) sq += Rational(v, 4);
    EXPECT_EQ(left.k_squared_singular, Rational(-1) - sq);
  }
}

TEST(ContractChain, TenMinusFourCurvesGiveTenC41) {
  Config c;
  c.ledger = InvariantLedger::rational(-10);
  for (int i = 1; i <= 10; ++i) c.add_curve({"D" + std::to_string(i), -4, 0, 1, false, {}});
  Rational k2 = c.ledger.k_squared;
  int count = 0;
  for (int i = 1; i <= 10; ++i) {
    auto r = contract_chain(c, {"D" + std::to_string(i)});
    if (r.label() == "C_{4,1}") ++count;
    EXPECT_EQ(r.kind, ContractionResult::Kind::cyclic);
    k2 -= Rational(c.ledger.k_squared) - r.k_squared_singular;
    c = r.config;
    c.ledger.rho = r.rho_singular;
  }
  EXPECT_EQ(count, 10);
  EXPECT_EQ(c.ledger.rho, 10);
  EXPECT_EQ(k2, 0);
}

TEST(ContractChain, DuValAndSmoothOutcomes) {
  auto a8 = oracle::chain(std::vector<int>(8, 2));
  a8.ledger = InvariantLedger::rational(1);
  auto r = contract_chain(a8, a8.curve_ids());
  EXPECT_EQ(r.kind, ContractionResult::Kind::du_val);
  EXPECT_EQ(r.label(), "A_8");
  EXPECT_EQ(r.k_squared_singular, 1);
  EXPECT_EQ(r.rho_singular, 1);

  // [2, 1] collapses completely: the (-2) becomes a (-1) after one step.
  auto s = oracle::chain({2, 1});
  s.ledger = InvariantLedger::rational(6);
  auto rs = contract_chain(s, s.curve_ids());
  EXPECT_EQ(rs.kind, ContractionResult::Kind::smooth);
  EXPECT_EQ(rs.label(), "smooth point");
  EXPECT_EQ(rs.blow_downs, 2);
}

TEST(ContractChain, RejectsNonChains) {
  auto c = oracle::chain({2, 2, 2});
  c.connect("B1", "B3");
  EXPECT_THROW(contract_chain(c, c.curve_ids()), Error);
  auto pos = oracle::chain({2, 0});
  EXPECT_THROW(contract_chain(pos, pos.curve_ids()), Error);
}
