#include "k3calc/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <regex>

#include "k3calc/birational.hpp"
#include "k3calc/cyclic.hpp"
#include "k3calc/fibration.hpp"
#include "k3calc/recognize.hpp"
#include "k3calc/serialize.hpp"

namespace k3calc {

using nlohmann::json;

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::none: return "none";
    case Mutation::drop_blowup: return "drop_blowup";
    case Mutation::move_branch: return "move_branch";
  }
  return "none";
}

Mutation parse_mutation(const std::string& text) {
  if (text == "none") return Mutation::none;
  if (text == "drop_blowup") return Mutation::drop_blowup;
  if (text == "move_branch") return Mutation::move_branch;
  throw Error(ErrorCode::parse_error, "unknown mutation '" + text + "'");
}

const std::vector<Mutation>& registered_mutations() {
  static const std::vector<Mutation> all{Mutation::drop_blowup, Mutation::move_branch};
  return all;
}

bool ScenarioReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Expectation& e) { return e.pass; });
}

const Config* ScenarioReport::artifact(const std::string& key) const {
  for (const auto& [k, c] : artifacts) {
    if (k == key) return &c;
  }
  return nullptr;
}

namespace {

constexpr const char* published = "published";
constexpr const char* derived = "derived";

struct Run {
  ScenarioReport& report;
  RunOptions opt;

  bool mutated(Mutation m) const { return opt.mutation == m; }

  void expect(const std::string& name, const json& expected, const json& actual, const char* origin) {
    report.checks.push_back({name, expected, actual, origin, expected == actual});
  }
  void note(const std::string& text) { report.notes.push_back(text); }
  void artifact(const std::string& key, const Config& c) { report.artifacts.emplace_back(key, c); }
};

std::string rat(const Rational& r) { return r.str(); }

std::string d(const std::string& prefix, int i) { return prefix + "D" + std::to_string(i); }
std::string h(const std::string& prefix, int i) { return prefix + "H" + std::to_string(i); }

Config rational_base() {
  Config c;
  c.ledger = InvariantLedger::rational(0);
  return c;
}

void add_fiber(Config& c, const std::string& prefix, KodairaType t) {
  c.merge(fiber_data(t).reference, prefix);
}

int branch_count(KodairaType t) { return fiber_shape(t).branch_count; }

std::vector<CurveId> fiber_components(const std::string& prefix, KodairaType t) {
  std::vector<CurveId> ids;
  const int n = std::max(1, fiber_shape(t).components);
  for (int i = 1; i <= n; ++i) ids.push_back(prefix + "F" + std::to_string(i));
  return ids;
}

void move_flag(Config& c, const CurveId& from, const CurveId& to) {
  c.curve(from).is_branch = false;
  c.curve(to).is_branch = true;
}

// Scenarios without any blow-up of their own lose one of the nine points
// blown up in P^2: only the ledger moves.
void drop_ledger_blowup(Run& run, Config& c) {
  c.ledger.record_blow_down();
  run.note("mutation: ledger shifted by one blow-down");
}

PreparedFiber prepare(Run& run, const Config& c, const std::string& prefix, KodairaType t, bool last) {
  PrepareOptions po;
  if (last && run.mutated(Mutation::drop_blowup)) {
    po.max_blow_ups = branch_count(t) - 1;
    run.note("mutation: last blow-up of " + prefix + " omitted");
  }
  auto p = prepare_fiber_in(c, prefix, t, po);
  run.expect("blow-ups preparing " + prefix + t.to_string(), branch_count(t), p.blow_ups, published);
  return p;
}

std::vector<CurveId> branch_ids(const Config& c) {
  std::vector<CurveId> ids;
  for (const auto& n : c.curves) {
    if (n.is_branch) ids.push_back(n.id);
  }
  return ids;
}

void ledger_checks(Run& run, const Config& s, int k_squared, int rho, const char* rho_origin) {
  run.expect("K_S^2", k_squared, s.ledger.k_squared, derived);
  run.expect("rho(S)", rho, s.ledger.rho, rho_origin);
  run.expect("e(S)", 12 - k_squared, s.ledger.euler, derived);
  run.expect("ledger consistent", true, s.ledger.consistent(), derived);
}

std::vector<int> genera(int rational, std::vector<int> others = {}) {
  std::vector<int> g(static_cast<std::size_t>(rational), 0);
  g.insert(g.end(), others.begin(), others.end());
  std::sort(g.begin(), g.end());
  return g;
}

// Branch validation, canonical resolution and the K3 certificate.
CoverResult cover_stage(Run& run, const Config& s, const std::vector<CurveId>& expected_branch,
                        const std::vector<FiberDecl>& fibers, const std::map<CurveId, CoverRule>& annotations,
                        const FixedLocusSummary& expected_fixed, const char* fixed_origin) {
  auto bd = BranchData::from_flags(s);
  auto sorted_expected = expected_branch;
  std::sort(sorted_expected.begin(), sorted_expected.end());
  auto actual = bd.branch_ids;
  std::sort(actual.begin(), actual.end());
  run.expect("branch curves", sorted_expected, actual, derived);

  auto br = validate_branch(bd);
  for (const auto& v : br.violations) run.note("branch: " + v);
  run.expect("branch divisor valid", true, br.ok, derived);
  run.expect("4K^2 + 4K.B + B^2", 0, br.relation, published);
  run.expect("curves with (K + B/2).C != 0", json::array(), br.anticanonical_failures, published);

  auto res = canonical_resolution(CoverRequest{bd, fibers, annotations});
  const auto& r = res.report;
  run.expect("e(X)", 24, r.euler_upstairs, published);
  run.expect("K_X^2", 0, res.upstairs.ledger.k_squared, derived);
  run.expect("k3_check", true, k3_check(r), derived);
  run.expect("fixed curves m", expected_fixed.m, r.fixed.m, fixed_origin);
  run.expect("fixed curve genera", expected_fixed.genera, r.fixed.genera, fixed_origin);
  run.expect("fixed-locus rule violations", json::array(), r.rule_violations, published);
  for (const auto& f : r.fibers) {
    run.expect("upstairs fiber " + f.name + " (" + f.cover_case.to_string() + ")",
               f.cover_case.upstairs_type().to_string(), f.kodaira.to_string(), published);
  }
  run.report.fixed = r.fixed;
  run.artifact("X", res.upstairs);
  return res;
}

ContractionResult contract(Run& run, const Config& c, const std::vector<CurveId>& chain) {
  ContractionOptions co;
  co.record_trace = run.opt.trace;
  auto r = contract_chain(c, chain, co);
  if (run.opt.trace) {
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      run.artifact("trace_" + std::to_string(run.report.artifacts.size()) + "_" + std::to_string(i), r.trace[i]);
    }
    run.note("contracted " + std::to_string(chain.size()) + " curves after " + std::to_string(r.blow_downs) +
             " blow-downs: " + r.label());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Two prepared fibers F1, F2 as branch data (optionally with a section M).

struct PairBuild {
  Config s;
  PreparedFiber p1, p2;
  std::vector<CurveId> branch;
};

PairBuild build_pair(Run& run, KodairaType t1, KodairaType t2, const std::function<void(Config&)>& extra = {}) {
  Config sc = rational_base();
  add_fiber(sc, "F1.", t1);
  add_fiber(sc, "F2.", t2);
  if (extra) extra(sc);
  run.expect("component rank bound", true, rank_bound_ok({t1, t2}), published);
  run.artifact("S_c", sc);
  PairBuild b;
  b.p1 = prepare(run, sc, "F1.", t1, false);
  b.p2 = prepare(run, b.p1.config, "F2.", t2, true);
  b.s = b.p2.config;
  const int n = branch_count(t1) + branch_count(t2);
  for (int i = 1; i <= branch_count(t1); ++i) b.branch.push_back(d("F1.", i));
  for (int i = 1; i <= branch_count(t2); ++i) b.branch.push_back(d("F2.", i));
  if (run.mutated(Mutation::move_branch)) move_flag(b.s, "F1.D1", "F1.H1");
  run.artifact("S", b.s);
  ledger_checks(run, b.s, -n, 10 + n, published);
  return b;
}

CoverResult pair_cover(Run& run, const PairBuild& b, const std::map<CurveId, CoverRule>& annotations = {}) {
  const int n = static_cast<int>(b.branch.size());
  return cover_stage(run, b.s, b.branch,
                     {{"F1", b.p1.curves, b.p1.cover_case}, {"F2", b.p2.curves, b.p2.cover_case}}, annotations,
                     {n, genera(n)}, published);
}

KodairaType type_arg(const std::string& text) {
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return KodairaType::I(std::stoi(text));
  }
  return KodairaType::parse(text);
}

std::string type_name(KodairaType t) {
  return t.kind == KodairaType::Kind::I ? std::to_string(t.n) : t.to_string();
}

int int_arg(const std::string& text) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::invalid_argument, "expected an integer, got '" + text + "'");
}

void want_args(const std::vector<std::string>& args, std::size_t n, const std::string& family) {
  if (args.size() != n) {
    throw Error(ErrorCode::invalid_argument,
                family + " takes " + std::to_string(n) + " argument(s), got " + std::to_string(args.size()));
  }
}

void check_pair_type(KodairaType t) {
  if (t.kind == KodairaType::Kind::I ? t.n < 1 : branch_count(t) == 0) {
    throw Error(ErrorCode::invalid_argument, "fiber type " + t.to_string() + " cannot be prepared");
  }
}

// ---------------------------------------------------------------------------
// Families.

void lemma2_4a(Run& run, const std::vector<std::string>& args) {
  want_args(args, 2, "lemma2_4a");
  auto t1 = type_arg(args[0]), t2 = type_arg(args[1]);
  check_pair_type(t1);
  check_pair_type(t2);
  auto b = build_pair(run, t1, t2);
  pair_cover(run, b);
}

void example2_8(Run& run, const std::vector<std::string>& args) {
  want_args(args, 2, "example2_8");
  const int n1 = int_arg(args[0]), n2 = int_arg(args[1]);
  if (n1 < 1 || n2 < 1 || n1 + n2 != 10) {
    throw Error(ErrorCode::invalid_argument, "example2_8 needs n1, n2 >= 1 with n1 + n2 = 10");
  }
  auto b = build_pair(run, KodairaType::I(n1), KodairaType::I(n2), [&](Config& sc) {
    sc.add_curve({"M", -1, 0, 1, false, {}});
    sc.connect("M", "F1.F" + std::to_string(n1));
    sc.connect("M", "F2.F1");
  });
  pair_cover(run, b, {{"M", CoverRule::non_split}});

  std::vector<CurveId> chain;
  for (int i = 1; i <= n1; ++i) {
    chain.push_back(d("F1.", i));
    if (i < n1) chain.push_back(h("F1.", i));
  }
  chain.push_back("M");
  for (int i = 1; i <= n2; ++i) {
    chain.push_back(d("F2.", i));
    if (i < n2) chain.push_back(h("F2.", i));
  }
  run.expect("chain length", 19, static_cast<int>(chain.size()), published);
  auto r = contract(run, b.s, chain);
  run.artifact("S_2", r.config);
  run.expect("singularity of the 19-chain", "C_{40,19}", r.label(), published);
  run.expect("blow-downs inside the chain", 9, r.blow_downs, derived);
  run.expect("rho after contraction", 1, r.rho_singular, derived);
}

void lemma2_4b(Run& run, const std::vector<std::string>& args) {
  want_args(args, 2, "lemma2_4b");
  auto t1 = type_arg(args[0]);
  const int s2 = int_arg(args[1]);
  check_pair_type(t1);
  if (s2 < 0) throw Error(ErrorCode::invalid_argument, "s2 must be >= 0");
  const auto t2 = KodairaType::I(s2);
  FibrationDescriptor desc{{t1}, t2};
  run.note("F2 is the half fiber of a double fiber of type " + desc.double_fiber->to_string());

  Config sc = rational_base();
  add_fiber(sc, "F1.", t1);
  add_fiber(sc, "F2.", t2);
  run.expect("component rank bound", true, rank_bound_ok({t1, t2}), published);
  run.artifact("S_c", sc);
  auto p1 = prepare(run, sc, "F1.", t1, true);
  Config s = p1.config;
  const int n = branch_count(t1);
  std::vector<CurveId> branch;
  for (int i = 1; i <= n; ++i) branch.push_back(d("F1.", i));
  if (run.mutated(Mutation::move_branch)) move_flag(s, "F1.D1", "F1.H1");
  run.artifact("S", s);
  ledger_checks(run, s, -n, 10 + n, published);
  auto res = cover_stage(run, s, branch,
                         {{"F1", p1.curves, p1.cover_case},
                          {"F2", fiber_components("F2.", t2), CoverCase::epsilon(s2)}},
                         {}, {n, genera(n)}, published);
  for (const auto& f : res.report.fibers) {
    if (f.name == "F2") run.expect("pi^*F2 coefficient", 1, f.pullback_coefficient, published);
  }
}

void lemma3_2_n9(Run& run, const std::vector<std::string>& args) {
  want_args(args, 0, "lemma3_2_n9");
  const int n = 9;
  auto minimal = index_two_resolution(n, InvariantLedger::rational(0)).minimal;
  run.artifact("S_c chain", minimal);
  Config s = minimal;
  int blow_ups = 0;
  for (int i = 1; i < n; ++i) {
    if (i == n - 1 && run.mutated(Mutation::drop_blowup)) {
      run.note("mutation: blow-up of D8 and D9 omitted");
      continue;
    }
    BlowUpOptions bo;
    bo.total_transform = false;
    bo.new_id = h("", i);
    s = blow_up(s, *point_joining(s, d("", i), d("", i + 1)), bo);
    ++blow_ups;
  }
  run.expect("blow-ups", n - 1, blow_ups, derived);
  std::vector<CurveId> branch;
  for (int i = 1; i <= n; ++i) {
    s.curve(d("", i)).is_branch = true;
    branch.push_back(d("", i));
  }
  s.add_curve({"F", 4, 2, 1, true, {}});
  branch.push_back("F");
  if (run.mutated(Mutation::move_branch)) move_flag(s, "D1", "H1");
  run.artifact("S", s);
  for (int i = 1; i <= n; ++i) run.expect(d("", i) + "^2", -4, s.curve(d("", i)).self_int, published);
  ledger_checks(run, s, -8, 18, published);

  std::map<CurveId, CoverRule> ann;
  for (int i = 1; i < n; ++i) ann[h("", i)] = CoverRule::non_split;
  auto res = cover_stage(run, s, branch, {}, ann, {10, genera(9, {2})}, published);
  run.expect("e(B)", 16, res.report.euler_branch, derived);

  std::vector<CurveId> chain, up_chain;
  for (int i = 1; i <= n; ++i) {
    chain.push_back(d("", i));
    up_chain.push_back("C[" + d("", i) + "]");
    if (i < n) {
      chain.push_back(h("", i));
      up_chain.push_back("G[" + h("", i) + "]");
    }
  }
  run.expect("upstairs chain", "A_17", dynkin_type(res.upstairs.restricted_to(up_chain)).to_string(), derived);

  auto r = contract(run, s, chain);
  run.artifact("S_c", r.config);
  run.expect("singular point", "C_{36,17}", r.label(), published);
  run.expect("rho(S_c)", 1, r.rho_singular, published);
  run.expect("K^2 of S_c", "1", rat(r.k_squared_singular), derived);
  run.expect("dim |-2K|", 3, dim_anti_bicanonical(n + s.ledger.k_squared), published);
}

void lemma4_1(Run& run, const std::vector<std::string>& args) {
  want_args(args, 0, "lemma4_1");
  Config s = rational_base();
  add_fiber(s, "F1.", KodairaType::I(0));
  add_fiber(s, "F2.", KodairaType::I(0));
  s.curve("F1.F1").is_branch = true;
  s.curve("F2.F1").is_branch = true;
  s.add_curve({"M", -1, 0, 1, false, {}});
  s.connect("M", "F1.F1");
  s.connect("M", "F2.F1");
  if (run.mutated(Mutation::drop_blowup)) drop_ledger_blowup(run, s);
  if (run.mutated(Mutation::move_branch)) move_flag(s, "F2.F1", "M");
  run.artifact("S", s);
  ledger_checks(run, s, 0, 10, derived);
  cover_stage(run, s, {"F1.F1", "F2.F1"}, {}, {{"M", CoverRule::non_split}}, {2, {1, 1}}, published);
}

void lemma5_1(Run& run, const std::vector<std::string>& args) {
  want_args(args, 1, "lemma5_1");
  const int s2 = int_arg(args[0]);
  if (s2 < 0 || s2 > 9) throw Error(ErrorCode::invalid_argument, "lemma5_1 needs 0 <= s <= 9");
  const auto t2 = KodairaType::I(s2);
  Config s = rational_base();
  add_fiber(s, "F1.", KodairaType::I(0));
  add_fiber(s, "F2.", t2);
  s.curve("F1.F1").is_branch = true;
  if (run.mutated(Mutation::drop_blowup)) drop_ledger_blowup(run, s);
  if (run.mutated(Mutation::move_branch)) move_flag(s, "F1.F1", "F2.F1");
  run.artifact("S", s);
  ledger_checks(run, s, 0, 10, derived);
  auto res = cover_stage(run, s, {"F1.F1"}, {{"F2", fiber_components("F2.", t2), CoverCase::epsilon(s2)}}, {},
                         {1, {1}}, published);
  run.expect("pi^*F2 coefficient", 1, res.report.fibers.front().pullback_coefficient, published);
}

void lemma6_1(Run& run, const std::vector<std::string>& args) {
  want_args(args, 1, "lemma6_1");
  auto t = type_arg(args[0]);
  check_pair_type(t);
  Config sc = rational_base();
  add_fiber(sc, "F1.", KodairaType::I(0));
  add_fiber(sc, "Finf.", t);
  sc.curve("F1.F1").is_branch = true;
  run.expect("component rank bound", true, rank_bound_ok({t}), derived);
  run.artifact("S_c", sc);
  auto p = prepare(run, sc, "Finf.", t, true);
  Config s = p.config;
  const int n = branch_count(t);
  std::vector<CurveId> branch{"F1.F1"};
  for (int i = 1; i <= n; ++i) branch.push_back(d("Finf.", i));
  if (run.mutated(Mutation::move_branch)) move_flag(s, "Finf.D1", "Finf.H1");
  run.artifact("S", s);
  ledger_checks(run, s, -n, 10 + n, published);
  cover_stage(run, s, branch, {{"Finf", p.curves, p.cover_case}}, {}, {1 + n, genera(n, {1})}, published);
}

void example2_7(Run& run, const std::vector<std::string>& args) {
  want_args(args, 0, "example2_7");
  run.note("the printed construction names a degree-6 rational curve in P^1; read as a plane sextic with "
           "10 nodes, K^2 = 9 - 10 = -1, branch = its proper transform");
  Config s;
  s.ledger = {9, 1, 3, true};
  s.add_curve({"D", 36, 10, 1, true, {}});
  for (int i = 0; i < 10; ++i) s.add_node("D");
  run.artifact("P2", s);
  const int wanted = run.mutated(Mutation::drop_blowup) ? 9 : 10;
  if (wanted < 10) run.note("mutation: one node left unresolved");
  std::map<CurveId, CoverRule> ann;
  for (int i = 1; i <= wanted; ++i) {
    std::optional<PointId> node;
    for (const auto& pt : s.points) {
      if (pt.branches.size() == 2 && pt.branches[0].curve == "D" && pt.branches[1].curve == "D") {
        node = pt.id;
        break;
      }
    }
    BlowUpOptions bo;
    bo.total_transform = false;
    bo.new_id = "E" + std::to_string(i);
    s = blow_up(s, *node, bo);
    ann["E" + std::to_string(i)] = CoverRule::non_split;
  }
  if (run.mutated(Mutation::move_branch)) move_flag(s, "D", "E1");
  run.artifact("S", s);
  run.expect("D^2", -4, s.curve("D").self_int, derived);
  run.expect("g(D)", 0, s.curve("D").genus, derived);
  run.expect("K_S^2", -1, s.ledger.k_squared, published);
  run.expect("e(S)", 13, s.ledger.euler, derived);
  cover_stage(run, s, {"D"}, {}, ann, {1, {0}}, derived);

  auto r = contract(run, s, {"D"});
  run.expect("singular point", "C_{4,1}", r.label(), derived);
  run.expect("K^2 after contraction", "0", rat(r.k_squared_singular), derived);
}

void corollary5_r10(Run& run, const std::vector<std::string>& args) {
  want_args(args, 0, "corollary5_r10");
  auto b = build_pair(run, KodairaType::I(1), KodairaType::I(9));
  pair_cover(run, b);
  // The curves are disjoint, so each contraction lowers -K^2 independently.
  Config cur = b.s;
  int c41 = 0;
  Rational k2 = b.s.ledger.k_squared;
  for (const auto& id : branch_ids(b.s)) {
    auto r = contract(run, cur, {id});
    if (r.label() == "C_{4,1}") ++c41;
    k2 -= Rational(cur.ledger.k_squared) - r.k_squared_singular;
    cur = r.config;
    cur.ledger.rho = r.rho_singular;
  }
  run.artifact("S_3", cur);
  run.expect("points of type C_{4,1}", 10, c41, published);
  run.expect("rho after contraction", 10, cur.ledger.rho, derived);
  run.expect("K^2 after contraction", "0", rat(k2), derived);
}

void corollary8_arith(Run& run, const std::vector<std::string>& args) {
  want_args(args, 0, "corollary8_arith");
  Config s = rational_base();
  add_fiber(s, "", KodairaType::I(9));
  s.add_curve({"M", -1, 0, 1, false, {}});
  s.connect("M", "F9");
  if (run.mutated(Mutation::drop_blowup)) drop_ledger_blowup(run, s);
  run.artifact("S", s);
  Config t = blow_down(s, "M");
  run.artifact("T'", t);
  run.expect("K_T'^2", 1, t.ledger.k_squared, published);
  run.expect("rho(T')", 9, t.ledger.rho, published);
  std::vector<CurveId> chain;
  for (int i = 1; i <= 8; ++i) chain.push_back("F" + std::to_string(i));
  run.expect("contracted configuration", "A_8", dynkin_type(t.restricted_to(chain)).to_string(), published);
  std::vector<CurveId> positive;
  for (const auto& c : t.curves) {
    if (c.canonical_degree() > 0) positive.push_back(c.id);
  }
  run.expect("curves with K.C > 0", json::array(), positive, derived);
  auto r = contract(run, t, chain);
  run.artifact("T", r.config);
  run.expect("singular point", "A_8", r.label(), published);
  run.expect("rho(T)", 1, r.rho_singular, published);
  run.expect("K_T^2", "1", rat(r.k_squared_singular), derived);
}

void theorem3prime_types(Run& run, const std::vector<std::string>& args) {
  want_args(args, 0, "theorem3prime_types");
  struct Sub {
    const char* label;
    const char* scenario;
    int rho;
    std::vector<int> genera;
  };
  const std::vector<Sub> subs{{"Rat", "lemma2_4a(1,9)", 20, genera(10)},
                              {"Ell", "lemma6_1(9)", 19, genera(9, {1})},
                              {"Gn2", "lemma3_2_n9", 18, genera(9, {2})}};
  for (const auto& sub : subs) {
    auto r = run_scenario(sub.scenario, run.opt);
    for (auto e : r.checks) {
      e.name = std::string(sub.label) + ": " + e.name;
      run.report.checks.push_back(std::move(e));
    }
    for (const auto& n : r.notes) run.note(std::string(sub.label) + ": " + n);
    const Config* s = r.artifact("S");
    run.expect(std::string("Type(") + sub.label + ") rho(S)", sub.rho, s ? s->ledger.rho : -1, published);
    run.expect(std::string("Type(") + sub.label + ") fixed genera", sub.genera,
               r.fixed ? r.fixed->genera : std::vector<int>{}, published);
    if (s) run.artifact(std::string(sub.label) + " S", *s);
  }
  run.report.fixed = FixedLocusSummary{10, genera(10)};
}

// The I9 + smooth-fiber surface used by the elliptic degenerations. The
// smooth fiber Fs is added by the caller.
PreparedFiber elliptic_base(Run& run, Config sc) {
  add_fiber(sc, "Finf.", KodairaType::I(9));
  run.artifact("S_c", sc);
  return prepare(run, sc, "Finf.", KodairaType::I(9), true);
}

void persson_extremal(Run& run, const std::vector<std::string>& args) {
  want_args(args, 0, "persson_extremal");
  const std::vector<KodairaType> types{KodairaType::I(9), KodairaType::I(1), KodairaType::I(1), KodairaType::I(1)};
  run.expect("Euler sum 12", true, check_euler_sum(types, 12), published);
  run.expect("component rank bound", true, rank_bound_ok(types, 8), derived);
  auto fixtures = realizable_fixtures();
  run.expect("listed as realizable", true, std::find(fixtures.begin(), fixtures.end(), types) != fixtures.end(),
             derived);
  Config sc = rational_base();
  add_fiber(sc, "Fs.", KodairaType::I(0));
  sc.curve("Fs.F1").is_branch = true;
  auto p = elliptic_base(run, sc);
  run.expect("prepared case", "delta(9)", p.cover_case.to_string(), published);
  Config s = p.config;
  std::vector<CurveId> branch{"Fs.F1"};
  for (int i = 1; i <= 9; ++i) branch.push_back(d("Finf.", i));
  if (run.mutated(Mutation::move_branch)) move_flag(s, "Finf.D1", "Finf.H1");
  run.artifact("S_ell", s);
  ledger_checks(run, s, -9, 19, published);
  cover_stage(run, s, branch, {{"Finf", p.curves, p.cover_case}}, {}, {10, genera(9, {1})}, published);
}

void ell_infinity(Run& run, const std::vector<std::string>& args) {
  want_args(args, 0, "ell_infinity");
  run.note("B = 2L with L the reduced I9 fiber after preparation; the cover is unramified");
  Config sc = rational_base();
  add_fiber(sc, "Fs.", KodairaType::I(0));
  auto p = elliptic_base(run, sc);
  Config s = p.config;
  for (const auto& id : p.curves) s.curve(id).is_branch = true;  // marks L
  if (run.mutated(Mutation::move_branch)) move_flag(s, "Finf.D1", "Fs.F1");
  run.artifact("S_ell", s);
  ledger_checks(run, s, -9, 19, derived);

  auto L = branch_ids(s);
  auto l_dot = [&](const CurveId& c) {
    int sum = 0;
    for (const auto& l : L) sum += l == c ? s.curve(c).self_int : s.intersection(l, c);
    return sum;
  };
  std::vector<CurveId> failures;
  int k_dot_l = 0, l_sq = 0;
  for (const auto& c : s.curves) {
    if (c.canonical_degree() + l_dot(c.id) != 0) failures.push_back(c.id);
  }
  for (const auto& l : L) {
    k_dot_l += s.curve(l).canonical_degree();
    l_sq += l_dot(l);
  }
  run.expect("curves with (K + L).C != 0", json::array(), failures, derived);
  run.expect("(K + L)^2", 0, s.ledger.k_squared + 2 * k_dot_l + l_sq, derived);

  Config x;
  x.merge(s, "X1.");
  x.merge(s, "X2.");
  for (auto& c : x.curves) {
    c.is_branch = false;
    c.sigma = SigmaMark::swapped((c.id[1] == '1' ? "X2." : "X1.") + c.id.substr(3));
  }
  x.ledger = {2 * s.ledger.k_squared, 2 * s.ledger.rho, 2 * s.ledger.euler, false};
  run.artifact("X", x);
  run.expect("e(X) of the disjoint union", 42, x.ledger.euler, derived);
  run.expect("connected components of X", 2, x.curves.size() == 2 * s.curves.size() ? 2 : 0, published);
  run.report.fixed = FixedLocusSummary{0, {}};
}

void ell_nodal(Run& run, const std::vector<std::string>& args) {
  want_args(args, 0, "ell_nodal");
  Config sc = rational_base();
  add_fiber(sc, "Fs.", KodairaType::I(1));
  run.artifact("S_c", sc);
  auto ps = prepare(run, sc, "Fs.", KodairaType::I(1), false);
  run.expect("nodal fiber case", "delta(1)", ps.cover_case.to_string(), derived);
  auto p = elliptic_base(run, ps.config);
  Config s = p.config;
  std::vector<CurveId> branch{"Fs.D1"};
  for (int i = 1; i <= 9; ++i) branch.push_back(d("Finf.", i));
  if (run.mutated(Mutation::move_branch)) move_flag(s, "Fs.D1", "Fs.H1");
  run.artifact("S", s);
  ledger_checks(run, s, -10, 20, published);
  auto res = cover_stage(run, s, branch,
                         {{"Fs", ps.curves, ps.cover_case}, {"Finf", p.curves, p.cover_case}}, {},
                         {10, genera(10)}, published);
  const Config& x = res.upstairs;
  const CurveId g = "G[Fs.H1]", c = "C[Fs.D1]";
  run.expect("G^2", -2, x.curve(g).self_int, derived);
  int meeting = 0;
  for (const auto& pt : x.points) {
    if (pt.passes_through(g) && pt.passes_through(c)) ++meeting;
  }
  run.expect("points of G on the fixed curve", 2, meeting, published);
  const int image_genus = x.curve(c).genus + meeting * (meeting - 1) / 2;
  run.expect("arithmetic genus of E_s", 1, image_genus, derived);
  auto fixed = res.report.fixed.genera;
  fixed.erase(std::find(fixed.begin(), fixed.end(), x.curve(c).genus));
  fixed.push_back(image_genus);
  std::sort(fixed.begin(), fixed.end());
  run.expect("fixed genera on X_s", genera(9, {1}), fixed, published);
}

void gn2_degeneration(Run& run, const std::vector<std::string>& args) {
  want_args(args, 0, "gn2_degeneration");
  Config sc = rational_base();
  add_fiber(sc, "Fs.", KodairaType::I(0));
  add_fiber(sc, "Finf.", KodairaType::I(9));
  sc.curve("Fs.F1").is_branch = true;
  // H0 passes through the node F9 + F1 of the I9 fiber and meets Fs twice.
  sc.add_curve({"H0", 0, 0, 1, false, {}});
  auto node = point_joining(sc, "Finf.F9", "Finf.F1");
  MarkedPoint pt = sc.point(*node);
  sc.remove_point(*node);
  pt.branches.push_back({"H0", 1});
  pt.set_contact(0, 2, 1);
  pt.set_contact(1, 2, 1);
  sc.add_point(pt);
  sc.connect("H0", "Fs.F1");
  sc.connect("H0", "Fs.F1");
  run.artifact("S_c", sc);
  auto p = prepare(run, sc, "Finf.", KodairaType::I(9), true);
  Config s = p.config;
  std::vector<CurveId> branch{"Fs.F1"};
  for (int i = 1; i <= 9; ++i) branch.push_back(d("Finf.", i));
  if (run.mutated(Mutation::move_branch)) move_flag(s, "Finf.D1", "Finf.H1");
  run.artifact("S_ell", s);
  run.expect("H0^2", -1, s.curve("H0").self_int, derived);
  ledger_checks(run, s, -9, 19, derived);
  auto res = cover_stage(run, s, branch, {{"Finf", p.curves, p.cover_case}}, {{"H0", CoverRule::non_split}},
                         {10, genera(9, {1})}, derived);
  run.expect("pi^*H0 . E_s", 2, res.upstairs.intersection("G[H0]", "C[Fs.F1]"), published);
  run.expect("genus of the image of E_s", 2, res.upstairs.curve("C[Fs.F1]").genus + 1, published);

  Config g = blow_down(s, "H0");
  run.artifact("S_gn2", g);
  run.expect("K^2 of S_gn2", -8, g.ledger.k_squared, derived);
  run.expect("rho(S_gn2)", 18, g.ledger.rho, derived);
  run.expect("F_s'^2", 4, g.curve("Fs.F1").self_int, derived);
  run.expect("arithmetic genus of F_s'", 2, g.curve("Fs.F1").genus, published);
  auto br = validate_branch(BranchData::from_flags(g));
  run.expect("4K^2 + 4K.B + B^2 on S_gn2", 0, br.relation, derived);
  run.expect("curves with (K + B/2).C != 0 on S_gn2", json::array(), br.anticanonical_failures, derived);

  std::vector<CurveId> chain;
  for (int i = 1; i <= 9; ++i) {
    chain.push_back(d("Finf.", i));
    if (i < 9) chain.push_back(h("Finf.", i));
  }
  int meets = 0;
  for (const auto& id : chain) meets += g.intersection("Fs.F1", id);
  run.expect("F_s' . chain", 0, meets, derived);
  auto r = contract(run, g, chain);
  run.artifact("S_gn2 bar", r.config);
  run.expect("singular point", "C_{36,17}", r.label(), published);
  run.expect("rho", 1, r.rho_singular, published);
  run.expect("K^2", "1", rat(r.k_squared_singular), derived);
  run.expect("dim |-2K|", 3, dim_anti_bicanonical(1), published);
}

using Builder = std::function<void(Run&, const std::vector<std::string>&)>;

const std::map<std::string, Builder>& families() {
  static const std::map<std::string, Builder> f{
      {"lemma2_4a", lemma2_4a},
      {"example2_8", example2_8},
      {"lemma2_4b", lemma2_4b},
      {"lemma3_2_n9", lemma3_2_n9},
      {"lemma4_1", lemma4_1},
      {"lemma5_1", lemma5_1},
      {"lemma6_1", lemma6_1},
      {"example2_7", example2_7},
      {"corollary5_r10", corollary5_r10},
      {"corollary8_arith", corollary8_arith},
      {"theorem3prime_types", theorem3prime_types},
      {"persson_extremal", persson_extremal},
      {"ell_infinity", ell_infinity},
      {"ell_nodal", ell_nodal},
      {"gn2_degeneration", gn2_degeneration},
  };
  return f;
}

std::pair<std::string, std::vector<std::string>> split_name(const std::string& name) {
  static const std::regex re(R"(^\s*([A-Za-z0-9_]+)\s*(?:\((.*)\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) {
    throw Error(ErrorCode::unknown_id, "malformed scenario name '" + name + "'");
  }
  std::vector<std::string> args;
  if (m[2].matched) {
    std::string all = m[2].str();
    std::size_t start = 0;
    while (start <= all.size()) {
      auto comma = all.find(',', start);
      auto piece = all.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      piece.erase(0, piece.find_first_not_of(" \t"));
      piece.erase(piece.find_last_not_of(" \t") + 1);
      if (!piece.empty()) args.push_back(piece);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return {m[1].str(), args};
}

}  // namespace

std::vector<ScenarioInfo> list_scenarios() {
  const std::vector<Mutation> both{Mutation::drop_blowup, Mutation::move_branch};
  std::vector<ScenarioInfo> out;
  auto add = [&](std::string name, std::string what, bool k3, std::vector<Mutation> muts) {
    out.push_back({std::move(name), std::move(what), k3, std::move(muts)});
  };
  for (auto [n1, n2] : enumerate_pairs()) {
    add("lemma2_4a(" + std::to_string(n1) + "," + std::to_string(n2) + ")",
        "two prepared I-fibers as branch locus, rho(S) = 10 + n", true, both);
  }
  using K = KodairaType::Kind;
  const std::vector<std::pair<KodairaType, KodairaType>> extra{{KodairaType::of(K::II), KodairaType::I(9)},
                                                               {KodairaType::of(K::III), KodairaType::I(8)},
                                                               {KodairaType::of(K::IV), KodairaType::I(6)},
                                                               {KodairaType::of(K::IV), KodairaType::of(K::IV)},
                                                               {KodairaType::of(K::II), KodairaType::of(K::III)}};
  for (auto [a, b] : extra) {
    add("lemma2_4a(" + type_name(a) + "," + type_name(b) + ")", "prepared fibers of additive type", true, both);
  }
  for (auto [n1, n2] : std::vector<std::pair<int, int>>{{1, 9}, {2, 8}, {5, 5}}) {
    add("example2_8(" + std::to_string(n1) + "," + std::to_string(n2) + ")",
        "section M joins the two loops; the 19-chain contracts to C_{40,19}", true, both);
  }
  for (auto [t, s2] : std::vector<std::pair<std::string, int>>{{"1", 0}, {"9", 0}, {"4", 2}, {"III", 3}, {"II", 1}}) {
    add("lemma2_4b(" + t + "," + std::to_string(s2) + ")", "one prepared fiber plus a half fiber of type I_s2",
        true, both);
  }
  add("lemma3_2_n9", "index-two chain [3,2^7,3] blown up plus a genus-2 branch curve", true, both);
  add("lemma4_1", "two smooth fibers as branch locus", true, both);
  for (int s : {0, 1, 3, 9}) {
    add("lemma5_1(" + std::to_string(s) + ")", "one smooth branch fiber, a double fiber of type I_s", true, both);
  }
  for (const char* t : {"1", "9", "II", "III", "IV"}) {
    add(std::string("lemma6_1(") + t + ")", "smooth branch fiber plus one prepared fiber", true, both);
  }
  add("example2_7", "plane sextic with 10 nodes, proper transform as branch", true, both);
  add("corollary5_r10", "ten disjoint (-4)-curves contract to ten C_{4,1} points", false, both);
  add("corollary8_arith", "A_8 contraction on the blow-down of an I9 configuration", false,
      {Mutation::drop_blowup});
  add("theorem3prime_types", "the three m = 10 extremal constructions", false, both);
  add("persson_extremal", "I9 + 3 I1 fibration prepared to a delta(9) loop", false, both);
  add("ell_infinity", "s = infinity: branch 2L, cover splits into two copies", false, both);
  add("ell_nodal", "s in {0, 1, s0}: nodal fiber, fixed nodal curve after contraction", false, both);
  add("gn2_degeneration", "blow down H0: genus-2 branch curve, C_{36,17} on the minimal model", false, both);
  return out;
}

ScenarioReport run_scenario(const std::string& name, const RunOptions& options) {
  auto [family, args] = split_name(name);
  auto it = families().find(family);
  if (it == families().end()) throw Error(ErrorCode::unknown_id, "unknown scenario '" + name + "'");
  ScenarioReport report;
  report.name = name;
  Run run{report, options};
  try {
    it->second(run, args);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::invalid_argument && report.checks.empty()) throw;
    run.expect("pipeline completes", true, false, derived);
    run.note(std::string("pipeline stopped: ") + e.what());
  } catch (const std::exception& e) {
    run.expect("pipeline completes", true, false, derived);
    run.note(std::string("pipeline stopped: ") + e.what());
  }
  return report;
}

json to_json(const ScenarioReport& r) {
  json checks = json::array();
  for (const auto& e : r.checks) {
    checks.push_back({{"name", e.name}, {"expected", e.expected}, {"actual", e.actual}, {"origin", e.origin},
                      {"pass", e.pass}});
  }
  json j{{"name", r.name}, {"passed", r.passed()}, {"checks", checks}, {"notes", r.notes}};
  if (r.fixed) j["fixed_locus"] = {{"m", r.fixed->m}, {"genera", r.fixed->genera}};
  json arts = json::array();
  for (const auto& [k, c] : r.artifacts) arts.push_back(k);
  j["artifacts"] = arts;
  return j;
}

}  // namespace k3calc
