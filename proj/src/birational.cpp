#include "k3calc/birational.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace k3calc {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

BlowUpResult blow_up_recorded(const Config& in, const PointId& pid, const BlowUpOptions& opt) {
  const MarkedPoint& pt = in.point(pid);
  const std::size_t k = pt.branches.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (pt.contact(i, j) < 1) {
        throw Error(ErrorCode::invalid_argument, "point '" + pid + "': non-positive contact order");
      }
    }
  }

  // Branches through a common infinitely-near point form one class.
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (pt.contact(i, j) >= 2) parent[find_root(parent, i)] = find_root(parent, j);
    }
  }
  std::vector<std::vector<std::size_t>> classes;
  std::map<std::size_t, std::size_t> class_of_root;
  for (std::size_t i = 0; i < k; ++i) {
    auto r = find_root(parent, i);
    auto [it, fresh] = class_of_root.emplace(r, classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(i);
  }
  for (const auto& cls : classes) {
    if (cls.size() < 2) continue;
    for (auto i : cls) {
      if (pt.branches[i].mult != 1) {
        throw Error(ErrorCode::unsupported,
                    "point '" + pid + "': a singular branch sharing a tangent is not modelled");
      }
      for (auto j : cls) {
        if (i < j && pt.contact(i, j) < 2) {
          throw Error(ErrorCode::invalid_argument,
                      "point '" + pid + "': contact orders violate the ultrametric rule");
        }
      }
    }
  }

  Config out = in;
  CurveNode exc;
  exc.id = opt.new_id ? *opt.new_id : in.fresh_curve_id("E");
  exc.self_int = -1;
  exc.genus = 0;
  exc.mult = 1;
  if (opt.total_transform) {
    int m = 0;
    for (const auto& b : pt.branches) {
      if (!opt.divisor || opt.divisor->count(b.curve)) m += b.mult * in.curve(b.curve).mult;
    }
    exc.mult = m;
  }
  std::map<CurveId, int> point_mult;
  for (const auto& b : pt.branches) point_mult[b.curve] += b.mult;

  out.remove_point(pid);
  for (const auto& [id, m] : point_mult) {
    auto& c = out.curve(id);
    c.self_int -= m * m;
    c.genus -= m * (m - 1) / 2;
    if (c.genus < 0) {
      throw Error(ErrorCode::invariant_violation,
                  "curve '" + id + "' would get negative genus; its singular data is inconsistent");
    }
  }
  BlowUpRecord record{pid, exc.id, exc.mult};
  out.add_curve(exc);

  for (const auto& cls : classes) {
    MarkedPoint q;
    q.id = out.fresh_point_id();
    for (auto i : cls) q.branches.push_back({pt.branches[i].curve, 1});
    q.branches.push_back({record.new_curve_id, 1});
    const std::size_t e_index = cls.size();
    for (std::size_t a = 0; a < cls.size(); ++a) {
      for (std::size_t b = a + 1; b < cls.size(); ++b) {
        q.set_contact(a, b, pt.contact(cls[a], cls[b]) - 1);
      }
      int with_e = cls.size() == 1 ? pt.branches[cls[a]].mult : 1;
      q.set_contact(a, e_index, with_e);
    }
    out.add_point(std::move(q));
  }
  out.ledger.record_blow_up();
  return {std::move(out), record};
}

Config blow_up(const Config& config, const PointId& point, const BlowUpOptions& options) {
  return blow_up_recorded(config, point, options).config;
}

Config blow_down(const Config& in, const CurveId& id) {
  const auto& e = in.curve(id);
  if (e.self_int != -1 || e.genus != 0) {
    throw Error(ErrorCode::not_contractible, "'" + id + "' is not a smooth rational (-1)-curve");
  }
  for (const auto& edge : in.edges) {
    if (!edge.point && (edge.a == id || edge.b == id)) {
      throw Error(ErrorCode::not_contractible, "'" + id + "' has intersections without point data");
    }
  }

  MarkedPoint merged;
  std::vector<std::size_t> group;  // group index per merged branch
  std::vector<PointId> on_e;
  std::size_t groups = 0;
  for (const auto& pt : in.points) {
    if (!pt.passes_through(id)) continue;
    on_e.push_back(pt.id);
    std::size_t e_index = SIZE_MAX;
    for (std::size_t i = 0; i < pt.branches.size(); ++i) {
      if (pt.branches[i].curve != id) continue;
      if (e_index != SIZE_MAX || pt.branches[i].mult != 1) {
        throw Error(ErrorCode::not_contractible, "'" + id + "' is singular at '" + pt.id + "'");
      }
      e_index = i;
    }
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < pt.branches.size(); ++i) {
      if (i == e_index) continue;
      if (pt.branches[i].mult != 1) {
        throw Error(ErrorCode::unsupported,
                    "point '" + pt.id + "': singular branch on the curve being blown down");
      }
      others.push_back(i);
    }
    if (others.empty()) continue;  // a free point of the exceptional curve
    const std::size_t base = merged.branches.size();
    if (others.size() == 1) {
      merged.branches.push_back({pt.branches[others[0]].curve, pt.contact(others[0], e_index)});
      group.push_back(groups);
    } else {
      for (auto i : others) {
        if (pt.contact(i, e_index) != 1) {
          throw Error(ErrorCode::unsupported,
                      "point '" + pt.id + "': tangency to the exceptional curve among several branches");
        }
        merged.branches.push_back({pt.branches[i].curve, 1});
        group.push_back(groups);
      }
      for (std::size_t a = 0; a < others.size(); ++a) {
        for (std::size_t b = a + 1; b < others.size(); ++b) {
          merged.set_contact(base + a, base + b, pt.contact(others[a], others[b]) + 1);
        }
      }
    }
    ++groups;
  }
  for (std::size_t a = 0; a < merged.branches.size(); ++a) {
    for (std::size_t b = a + 1; b < merged.branches.size(); ++b) {
      if (group[a] != group[b]) merged.set_contact(a, b, 1);
    }
  }

  Config out = in;
  for (const auto& p : on_e) out.remove_point(p);
  out.remove_curve(id);
  std::map<CurveId, int> point_mult;
  for (const auto& b : merged.branches) point_mult[b.curve] += b.mult;
  for (const auto& [cid, m] : point_mult) {
    auto& c = out.curve(cid);
    c.self_int += m * m;
    c.genus += m * (m - 1) / 2;
  }
  if (!merged.branches.empty()) {
    merged.id = out.fresh_point_id();
    out.add_point(std::move(merged));
  }
  out.ledger.record_blow_down();
  return out;
}

std::optional<PointId> point_joining(const Config& config, const CurveId& a, const CurveId& b) {
  for (const auto& pt : config.points) {
    if (pt.branches.size() != 2) continue;
    const auto& x = pt.branches[0].curve;
    const auto& y = pt.branches[1].curve;
    if ((x == a && y == b) || (x == b && y == a)) return pt.id;
  }
  return std::nullopt;
}

std::string ContractionResult::label() const {
  switch (kind) {
    case Kind::smooth: return "smooth point";
    case Kind::du_val: return dynkin.to_string();
    case Kind::cyclic: return brieskorn.to_string();
  }
  return "smooth point";
}

ContractionResult contract_chain(const Config& in, const std::vector<CurveId>& chain_ids,
                                 const ContractionOptions& opt) {
  if (chain_ids.empty()) throw Error(ErrorCode::invalid_argument, "empty chain");
  for (std::size_t i = 0; i < chain_ids.size(); ++i) {
    const auto& c = in.curve(chain_ids[i]);
    if (c.genus != 0) {
      throw Error(ErrorCode::shape_mismatch, "chain curve '" + c.id + "' is not rational");
    }
    for (std::size_t j = i + 1; j < chain_ids.size(); ++j) {
      if (chain_ids[i] == chain_ids[j]) {
        throw Error(ErrorCode::invalid_argument, "chain repeats '" + chain_ids[i] + "'");
      }
      int want = j == i + 1 ? 1 : 0;
      if (in.intersection(chain_ids[i], chain_ids[j]) != want) {
        throw Error(ErrorCode::shape_mismatch, "curves '" + chain_ids[i] + "' and '" +
                                                   chain_ids[j] + "' do not form a linear chain");
      }
    }
  }

  ContractionResult result;
  Config cur = in;
  std::vector<CurveId> chain = chain_ids;
  if (opt.record_trace) result.trace.push_back(cur);
  while (true) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const auto& c = cur.curve(chain[i]);
      if (c.self_int == -1 && c.genus == 0) {
        pick = i;
        if (!opt.rightmost_first) break;
      }
    }
    if (!pick) break;
    cur = blow_down(cur, chain[*pick]);
    chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(*pick));
    ++result.blow_downs;
    if (opt.record_trace) result.trace.push_back(cur);
  }

  for (const auto& id : chain) {
    const auto& c = cur.curve(id);
    if (c.self_int > -2 || c.genus != 0) {
      throw Error(ErrorCode::not_contractible,
                  "curve '" + id + "' ends with self-intersection " + std::to_string(c.self_int));
    }
    result.weights.push_back(-c.self_int);
  }

  result.k_squared_singular = cur.ledger.k_squared;
  if (chain.empty()) {
    result.kind = ContractionResult::Kind::smooth;
  } else {
    Config sub = cur.restricted_to(chain);
    auto d = discrepancies(sub);
    result.k_squared_singular = Rational(cur.ledger.k_squared) - discrepancy_square(sub, d);
    result.brieskorn = hj_contract(result.weights);
    bool du_val = std::all_of(result.weights.begin(), result.weights.end(), [](int w) { return w == 2; });
    if (du_val) {
      result.kind = ContractionResult::Kind::du_val;
      result.dynkin = {DynkinLabel::Family::A, static_cast<int>(chain.size())};
    } else {
      result.kind = ContractionResult::Kind::cyclic;
    }
  }
  for (const auto& id : chain) cur.remove_curve(id);
  result.removed = chain;
  result.removed_classes = static_cast<int>(chain.size());
  result.rho_singular = cur.ledger.rho - result.removed_classes;
  result.config = std::move(cur);
  return result;
}

}  // namespace k3calc
