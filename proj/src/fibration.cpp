#include "k3calc/fibration.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <functional>

namespace k3calc {

FiberShape fiber_shape(KodairaType t) {
  using K = KodairaType::Kind;
  FiberShape s;
  s.kodaira = t;
  switch (t.kind) {
    case K::I:
      if (t.n < 0) break;
      s.euler = t.n;
      s.components = std::max(t.n, 1);
      s.branch_count = t.n;
      return s;
    case K::I_star:
      if (t.n < 0) break;
      s.euler = t.n + 6;
      s.components = t.n + 5;
      return s;
    case K::II: return {t, 2, 1, 1};
    case K::III: return {t, 3, 2, 2};
    case K::IV: return {t, 4, 3, 4};
    case K::IV_star: return {t, 8, 7, 0};
    case K::III_star: return {t, 9, 8, 0};
    case K::II_star: return {t, 10, 9, 0};
    case K::none: break;
  }
  throw Error(ErrorCode::invalid_argument, "no fiber data for type '" + t.to_string() + "'");
}

namespace {

CurveId f(int i) { return "F" + std::to_string(i); }

void add_minus_two(Config& c, int id, int mult) { c.add_curve({f(id), -2, 0, mult, false, {}}); }

// Tree fiber given by multiplicities and parent links (parent 0 = none).
Config tree_fiber(const std::vector<int>& mults, const std::vector<int>& parent) {
  Config c;
  for (std::size_t i = 0; i < mults.size(); ++i) add_minus_two(c, static_cast<int>(i + 1), mults[i]);
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] > 0) c.connect(f(static_cast<int>(i + 1)), f(parent[i]));
  }
  return c;
}

}  // namespace

FiberData fiber_data(KodairaType t) {
  using K = KodairaType::Kind;
  FiberData d{fiber_shape(t), {}};
  Config& c = d.reference;
  switch (t.kind) {
    case K::I:
      if (t.n <= 1) {
        c.add_curve({f(1), 0, 1, 1, false, {}});
        if (t.n == 1) c.add_node(f(1));
      } else {
        for (int i = 1; i <= t.n; ++i) add_minus_two(c, i, 1);
        for (int i = 1; i <= t.n; ++i) c.connect(f(i), f(i % t.n + 1));
      }
      break;
    case K::II:
      c.add_curve({f(1), 0, 1, 1, false, {}});
      c.add_cusp(f(1));
      break;
    case K::III:
      add_minus_two(c, 1, 1);
      add_minus_two(c, 2, 1);
      c.connect(f(1), f(2), 2);
      break;
    case K::IV:
      for (int i = 1; i <= 3; ++i) add_minus_two(c, i, 1);
      c.connect_all({f(1), f(2), f(3)});
      break;
    case K::I_star: {
      // Chain F1..F(n+1) of multiplicity 2 with two leaves at each end.
      const int n = t.n;
      std::vector<int> mults, parent;
      for (int i = 1; i <= n + 1; ++i) {
        mults.push_back(2);
        parent.push_back(i == 1 ? 0 : i - 1);
      }
      for (int leaf = 0; leaf < 4; ++leaf) {
        mults.push_back(1);
        parent.push_back(leaf < 2 ? 1 : n + 1);
      }
      c = tree_fiber(mults, parent);
      break;
    }
    case K::IV_star:
      c = tree_fiber({3, 2, 1, 2, 1, 2, 1}, {0, 1, 2, 1, 4, 1, 6});
      break;
    case K::III_star:
      c = tree_fiber({4, 2, 3, 2, 1, 3, 2, 1}, {0, 1, 1, 3, 4, 1, 6, 7});
      break;
    case K::II_star:
      c = tree_fiber({6, 3, 4, 2, 5, 4, 3, 2, 1}, {0, 1, 1, 3, 1, 5, 6, 7, 8});
      break;
    case K::none:
      break;
  }
  c.ledger = InvariantLedger::rational(0);
  return d;
}

bool check_euler_sum(const std::vector<KodairaType>& types, int target) {
  int sum = 0;
  for (const auto& t : types) sum += fiber_shape(t).euler;
  return sum == target;
}

bool rank_bound_ok(const std::vector<KodairaType>& types, int max_rank) {
  int rank = 0;
  for (const auto& t : types) rank += fiber_shape(t).components - 1;
  return rank <= max_rank;
}

std::vector<std::pair<int, int>> enumerate_pairs() {
  std::vector<std::pair<int, int>> out;
  for (int n1 = 1; n1 <= 9; ++n1) {
    for (int n2 = 1; n1 + n2 <= 10; ++n2) out.emplace_back(n1, n2);
  }
  return out;
}

std::vector<std::pair<int, int>> enumerate_unordered_pairs() {
  auto all = enumerate_pairs();
  std::erase_if(all, [](const auto& p) { return p.first > p.second; });
  return all;
}

std::vector<std::vector<KodairaType>> enumerate_configurations(int euler, int max_rank) {
  using K = KodairaType::Kind;
  // Candidate singular types in a fixed order; I_0 is not singular.
  std::vector<KodairaType> candidates;
  for (int n = 1; n <= euler; ++n) candidates.push_back(KodairaType::I(n));
  for (int n = 0; n + 6 <= euler; ++n) candidates.push_back(KodairaType::I_star(n));
  for (auto k : {K::II, K::III, K::IV, K::IV_star, K::III_star, K::II_star}) {
    candidates.push_back(KodairaType::of(k));
  }
  std::erase_if(candidates, [&](const KodairaType& t) {
    auto s = fiber_shape(t);
    return s.euler > euler || s.components - 1 > max_rank;
  });

  std::vector<std::vector<KodairaType>> out;
  std::vector<KodairaType> current;
  std::function<void(std::size_t, int, int)> walk = [&](std::size_t from, int e_left, int r_left) {
    if (e_left == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = from; i < candidates.size(); ++i) {
      auto s = fiber_shape(candidates[i]);
      if (s.euler > e_left || s.components - 1 > r_left) continue;
      current.push_back(candidates[i]);
      walk(i, e_left - s.euler, r_left - (s.components - 1));
      current.pop_back();
    }
  };
  walk(0, euler, max_rank);
  return out;
}

std::vector<std::vector<KodairaType>> realizable_fixtures() {
  auto I = [](int n) { return KodairaType::I(n); };
  return {{I(9), I(1), I(1), I(1)}, {I(8), I(2), I(1), I(1)}, {I(5), I(5), I(1), I(1)}};
}

namespace {

std::optional<PointId> find_point(const Config& c, const std::function<bool(const MarkedPoint&)>& pred) {
  for (const auto& pt : c.points) {
    if (pred(pt)) return pt.id;
  }
  return std::nullopt;
}

bool has_curves(const MarkedPoint& pt, const std::vector<CurveId>& ids) {
  return std::all_of(ids.begin(), ids.end(), [&](const CurveId& id) { return pt.passes_through(id); });
}

}  // namespace

PreparedFiber prepare_fiber_in(const Config& config, const std::string& prefix, KodairaType t,
                               const PrepareOptions& opt) {
  using K = KodairaType::Kind;
  PreparedFiber out;
  out.config = config;
  auto F = [&](int i) { return prefix + f(i); };
  // Components of the fiber: the original F<j> and the exceptional curves
  // created so far.
  std::set<CurveId> created;
  auto fiber_curves = [&] {
    std::set<CurveId> ids = created;
    for (const auto& c : out.config.curves) {
      auto rest = c.id.substr(0, prefix.size()) == prefix ? c.id.substr(prefix.size()) : std::string();
      if (rest.size() >= 2 && rest[0] == 'F' && std::isdigit(static_cast<unsigned char>(rest[1]))) ids.insert(c.id);
    }
    return ids;
  };
  auto blow = [&](const std::optional<PointId>& p, const CurveId& new_id) {
    if (!p) throw Error(ErrorCode::shape_mismatch, "fiber '" + prefix + "' lacks the expected singular point");
    if (opt.max_blow_ups >= 0 && out.blow_ups >= opt.max_blow_ups) return;
    BlowUpOptions bo;
    bo.new_id = new_id;
    bo.divisor = fiber_curves();
    auto r = blow_up_recorded(out.config, *p, bo);
    out.config = std::move(r.config);
    created.insert(r.record.new_curve_id);
    out.records.push_back(r.record);
    ++out.blow_ups;
  };
  std::vector<std::pair<CurveId, CurveId>> renames;  // F -> D
  std::vector<CurveId> branch;

  switch (t.kind) {
    case K::I: {
      if (t.n < 1) break;
      const int n = t.n;
      if (n == 1) {
        blow(find_point(out.config, [&](const MarkedPoint& pt) {
               return pt.branches.size() == 2 && pt.branches[0].curve == F(1) && pt.branches[1].curve == F(1);
             }),
             prefix + "H1");
      } else {
        for (int i = 1; i <= n; ++i) {
          const auto a = F(i), b = F(i % n + 1);
          blow(find_point(out.config, [&](const MarkedPoint& pt) {
                 return has_curves(pt, {a, b});
               }),
               prefix + "H" + std::to_string(i));
        }
      }
      for (int i = 1; i <= n; ++i) renames.emplace_back(F(i), prefix + "D" + std::to_string(i));
      out.cover_case = CoverCase::delta(n);
      break;
    }
    case K::II:
      blow(find_point(out.config, [&](const MarkedPoint& pt) {
             return pt.branches.size() == 1 && pt.branches[0].curve == F(1) && pt.branches[0].mult == 2;
           }),
           prefix + "H1");
      renames.emplace_back(F(1), prefix + "D1");
      out.cover_case = CoverCase::alpha();
      break;
    case K::III:
      blow(find_point(out.config, [&](const MarkedPoint& pt) {
             return pt.branches.size() == 2 && has_curves(pt, {F(1), F(2)}) && pt.contact(0, 1) == 2;
           }),
           prefix + "H2");
      blow(find_point(out.config, [&](const MarkedPoint& pt) {
             return pt.branches.size() == 3 && has_curves(pt, {F(1), F(2), prefix + "H2"});
           }),
           prefix + "H1");
      renames = {{F(1), prefix + "D1"}, {F(2), prefix + "D2"}};
      out.cover_case = CoverCase::beta();
      break;
    case K::IV:
      blow(find_point(out.config, [&](const MarkedPoint& pt) {
             return pt.branches.size() == 3 && has_curves(pt, {F(1), F(2), F(3)});
           }),
           prefix + "D4");
      for (int i = 1; i <= 3; ++i) {
        blow(find_point(out.config, [&](const MarkedPoint& pt) {
               return pt.branches.size() == 2 && has_curves(pt, {F(i), prefix + "D4"});
             }),
             prefix + "H" + std::to_string(i));
      }
      renames = {{F(1), prefix + "D1"}, {F(2), prefix + "D2"}, {F(3), prefix + "D3"}};
      branch.push_back(prefix + "D4");
      out.cover_case = CoverCase::gamma();
      break;
    default:
      break;
  }
  if (renames.empty()) {
    throw Error(ErrorCode::unsupported, "prepare_fiber supports II, III, IV and I_n (n >= 1), not " + t.to_string());
  }
  for (const auto& [from, to] : renames) {
    out.config.rename_curve(from, to);
    branch.push_back(to);
  }
  for (const auto& id : branch) {
    if (out.config.has_curve(id)) out.config.curve(id).is_branch = true;
  }
  for (const auto& c : out.config.curves) {
    if (c.id.compare(0, prefix.size(), prefix) != 0) continue;
    auto rest = c.id.substr(prefix.size());
    if (!rest.empty() && (rest[0] == 'D' || rest[0] == 'H') && rest.find('.') == std::string::npos) {
      out.curves.push_back(c.id);
    }
  }
  return out;
}

PreparedFiber prepare_fiber(KodairaType t, const PrepareOptions& options) {
  return prepare_fiber_in(fiber_data(t).reference, "", t, options);
}

int dim_anti_bicanonical(int k_squared) {
  if (k_squared <= 0) {
    throw Error(ErrorCode::invalid_argument, "K^2 = " + std::to_string(k_squared) + " is not that of a log del Pezzo surface");
  }
  return 3 * k_squared;
}

int FibrationDescriptor::euler_sum() const {
  int s = 0;
  for (const auto& t : singular_fibers) s += fiber_shape(t).euler;
  if (double_fiber) s += fiber_shape(*double_fiber).euler;
  return s;
}

}  // namespace k3calc
