// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <array>
#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "k3calc/birational.hpp"
#include "k3calc/cyclic.hpp"
#include "k3calc/double_cover.hpp"
#include "k3calc/fibration.hpp"
#include "k3calc/gram.hpp"
#include "k3calc/recognize.hpp"
#include "k3calc/scenarios.hpp"
#include "oracles.hpp"

using namespace k3calc;
using K = KodairaType::Kind;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

std::vector<int> index_two_weights(int n) {
  if (n == 1) return {4};
  std::vector<int> w(static_cast<std::size_t>(n), 2);
  w.front() = w.back() = 3;
  return w;
}

// Every weight list over [2, 6] of length <= 12 is visited once as a suffix
// extension. hj_expand is iterated hj_step, so checking that hj_step undoes
// one prepend at every node proves hj_expand(hj_contract(w)) = w for all of
// them; hj_contract is checked directly against continuants up to length 9
// and on a random sample beyond.
struct Sweep {
  std::uint64_t nodes = 0;
  bool ok = true;

  void visit(std::int64_t q, std::int64_t q1, int depth) {
    for (int b = 2; b <= 6; ++b) {
      const std::int64_t nq = b * q - q1, nq1 = q;
      const auto s = hj_step(nq, nq1);
      ++nodes;
      if (s.b != b || s.q != q || s.q1 != q1 || nq1 >= nq) {
        ok = false;
        return;
      }
      if (depth + 1 < 12) visit(nq, nq1, depth + 1);
    }
  }
};

Outcome hj_suite() {
  Outcome o;
  for (int n = 1; n <= 10; ++n) {
    o.require(hj_expand(4 * n, 2 * n - 1) == index_two_weights(n), "index-two weights n=" + std::to_string(n));
  }
  Sweep sweep;
  sweep.visit(1, 0, 0);
  std::uint64_t expected = 0, p = 1;
  for (int len = 1; len <= 12; ++len) expected += (p *= 5);
  o.require(sweep.ok, "hj_step does not invert a prepend");
  o.require(sweep.nodes == expected, "sweep visited " + std::to_string(sweep.nodes) + " lists");

  std::array<int, 12> buf{};
  std::vector<int> w;
  auto direct = [&](auto&& self) -> void {
    if (!w.empty()) {
      auto [q, q1] = hj_contract_raw(w);
      const std::size_t n = hj_expand_into(q, q1, buf);
      if (std::make_pair(q, q1) != oracle::contract(w) || n != w.size() ||
          !std::equal(w.begin(), w.end(), buf.begin())) {
        o.require(false, "direct round trip failed");
      }
    }
    if (w.size() == 9 || !o.ok) return;
    for (int b = 2; b <= 6; ++b) {
      w.push_back(b);
      self(self);
      w.pop_back();
    }
  };
  direct(direct);
  std::mt19937 rng(1);
  for (int i = 0; i < 200000 && o.ok; ++i) {
    std::vector<int> r(10 + rng() % 3);
    for (auto& b : r) b = 2 + static_cast<int>(rng() % 5);
    auto t = hj_contract(r);
    o.require(std::make_pair(t.q, t.q1) == oracle::contract(r) && hj_expand(t.q, t.q1) == r, "sampled round trip");
  }
  return o;
}

Config ade(char family, int n) {
  Config c;
  auto id = [](int i) { return "R" + std::to_string(i); };
  for (int i = 1; i <= n; ++i) c.add_curve({id(i), -2, 0, 1, false, {}});
  if (family == 'A') {
    for (int i = 1; i < n; ++i) c.connect(id(i), id(i + 1));
  } else if (family == 'D') {
    for (int i = 1; i < n - 1; ++i) c.connect(id(i), id(i + 1));
    c.connect(id(n - 2), id(n));
  } else {
    c.connect(id(1), id(2));
    c.connect(id(1), id(3));
    c.connect(id(3), id(4));
    c.connect(id(1), id(5));
    for (int i = 5; i < n; ++i) c.connect(id(i), id(i + 1));
  }
  return c;
}

Outcome discrepancy_suite() {
  Outcome o;
  for (int n = 1; n <= 10; ++n) {
    auto c = oracle::chain(index_two_weights(n));
    auto d = discrepancies(c);
    for (const auto& v : d.values) o.require(v == Rational(1, 2), "index-two chain not all 1/2");
    o.require(d.values == oracle::discrepancies(c), "index-two chain disagrees with Cramer");
    o.require(cartier_index(c) == 2, "Cartier index != 2");
  }
  std::vector<std::pair<char, int>> graphs;
  for (int n = 1; n <= 19; ++n) graphs.emplace_back('A', n);
  for (int n = 4; n <= 19; ++n) graphs.emplace_back('D', n);
  for (int n = 6; n <= 8; ++n) graphs.emplace_back('E', n);
  for (auto [f, n] : graphs) {
    auto c = ade(f, n);
    o.require(!dynkin_type(c).is_none(), std::string("not recognised: ") + f + std::to_string(n));
    for (const auto& v : discrepancies(c).values) {
      o.require(v == 0, std::string("nonzero discrepancy on ") + f + std::to_string(n));
    }
  }
  return o;
}

Outcome commutation_square() {
  Outcome o;
  std::vector<KodairaType> types{KodairaType::of(K::II), KodairaType::of(K::III), KodairaType::of(K::IV)};
  std::vector<KodairaType> targets{KodairaType::of(K::IV), KodairaType::I_star(0), KodairaType::of(K::IV_star)};
  for (int n = 1; n <= 10; ++n) {
    types.push_back(KodairaType::I(n));
    targets.push_back(KodairaType::I(2 * n));
  }
  for (std::size_t i = 0; i < types.size(); ++i) {
    auto p = prepare_fiber(types[i]);
    auto x = pullback_fiber(p.config, p.cover_case);
    const auto name = types[i].to_string();
    o.require(kodaira_type(x) == targets[i], name + " lands on " + kodaira_type(x).to_string());
    auto ids = x.curve_ids();
    std::int64_t f2 = 0;
    for (const auto& c : x.curves) {
      o.require(c.self_int == -2, name + ": component not a (-2)-curve");
      const auto dot = oracle::fiber_dot(x, ids, c.id);
      o.require(dot == 0, name + ": F.C != 0");
      f2 += c.mult * dot;
    }
    o.require(f2 == 0, name + ": F^2 != 0");
  }
  return o;
}

const Expectation* find_check(const ScenarioReport& r, const std::string& name) {
  for (const auto& e : r.checks) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Outcome k3_certificates() {
  Outcome o;
  int count = 0;
  for (const auto& s : list_scenarios()) {
    if (!s.k3_certificate) continue;
    ++count;
    auto r = run_scenario(s.name);
    auto e = find_check(r, "e(X)");
    auto a = find_check(r, "curves with (K + B/2).C != 0");
    o.require(r.passed(), s.name + " does not pass");
    o.require(e && e->actual == 24, s.name + ": e(X) != 24");
    o.require(a && a->pass, s.name + ": (K + B/2).C != 0 somewhere");
    for (auto m : s.mutations) {
      o.require(!run_scenario(s.name, {m, false}).passed(), s.name + " survives " + to_string(m));
    }
  }
  o.require(count >= 8, "too few certificate scenarios");
  return o;
}

Outcome picard_arithmetic() {
  Outcome o;
  for (auto [n1, n2] : enumerate_pairs()) {
    const auto name = "lemma2_4a(" + std::to_string(n1) + "," + std::to_string(n2) + ")";
    auto r = run_scenario(name);
    const Config* s = r.artifact("S");
    o.require(s && s->ledger.rho == 10 + n1 + n2, name + ": rho(S) != 10 + n");
  }
  auto l32 = run_scenario("lemma3_2_n9");
  o.require(l32.artifact("S") && l32.artifact("S")->ledger.rho == 18, "lemma3_2_n9: rho(S) != 18");
  auto t3 = run_scenario("theorem3prime_types");
  const std::vector<std::pair<std::string, int>> types{{"Rat", 20}, {"Ell", 19}, {"Gn2", 18}};
  for (const auto& [label, rho] : types) {
    auto e = find_check(t3, "Type(" + label + ") rho(S)");
    o.require(e && e->pass && e->actual == rho, "Type(" + label + ") rho(S)");
  }
  auto c8 = run_scenario("corollary8_arith");
  const Config* t = c8.artifact("T'");
  o.require(t && t->ledger.rho == 9 && t->ledger.k_squared == 1, "corollary8_arith: rho(T') / K^2");
  o.require(c8.passed(), "corollary8_arith does not pass");
  return o;
}

Outcome chain_contraction() {
  Outcome o;
  for (int n1 = 1; n1 <= 9; ++n1) {
    auto r = run_scenario("example2_8(" + std::to_string(n1) + "," + std::to_string(10 - n1) + ")");
    auto e = find_check(r, "singularity of the 19-chain");
    o.require(e && e->actual == "C_{40,19}", "19-chain for n1 = " + std::to_string(n1));
  }
  auto r10 = run_scenario("corollary5_r10");
  auto e = find_check(r10, "points of type C_{4,1}");
  o.require(e && e->actual == 10, "ten C_{4,1} points");
  auto a19 = oracle::chain(std::vector<int>(19, 2));
  o.require(discriminant(intersection_matrix(a19).matrix) == 20, "|det A_19| != 20");
  o.require(abs(oracle::det(oracle::gram(a19))) == 20, "Laplace |det A_19| != 20");
  return o;
}

Outcome enumeration() {
  Outcome o;
  auto pairs = enumerate_pairs();
  std::set<std::pair<int, int>> want;
  for (int a = 1; a <= 9; ++a)
    for (int b = 1; a + b <= 10; ++b) want.insert({a, b});
  o.require(pairs.size() == 45, "pair count");
  o.require(std::set<std::pair<int, int>>(pairs.begin(), pairs.end()) == want, "pair set");
  o.require(enumerate_unordered_pairs().size() == 25, "unordered pair count");
  std::vector<KodairaType> persson{KodairaType::I(9), KodairaType::I(1), KodairaType::I(1), KodairaType::I(1)};
  o.require(check_euler_sum(persson, 12) && rank_bound_ok(persson, 8), "{I9, 3 I1}");
  std::vector<KodairaType> big{KodairaType::of(K::II), KodairaType::I(10)};
  o.require(check_euler_sum(big, 12) && !rank_bound_ok(big, 8), "{II, I10}");
  return o;
}

Outcome fixed_locus_bounds() {
  Outcome o;
  std::set<int> seen;
  for (const auto& s : list_scenarios()) {
    auto r = run_scenario(s.name);
    if (!r.fixed) continue;
    o.require(r.fixed->m <= 10, s.name + ": m > 10");
    seen.insert(r.fixed->m);
  }
  for (int m = 1; m <= 10; ++m) o.require(seen.count(m) > 0, "m = " + std::to_string(m) + " never attained");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"HJ suite", hj_suite},
      {"Discrepancy suite", discrepancy_suite},
      {"Prepare/pullback commutation square", commutation_square},
      {"K3 certificates", k3_certificates},
      {"Picard arithmetic", picard_arithmetic},
      {"Chain contraction", chain_contraction},
      {"Enumeration", enumeration},
      {"Fixed-locus bounds", fixed_locus_bounds},
  };
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << ms << " ms)";
    if (!o.ok) std::cout << ": " << o.why.str();
    std::cout << "\n";
    all = all && o.ok;
  }
  return all ? 0 : 1;
}
