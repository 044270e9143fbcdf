#include "k3calc/double_cover.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

#include "k3calc/gram.hpp"

namespace k3calc {

// ---------------------------------------------------------------------------
// CoverCase

CoverCase CoverCase::parse(const std::string& text) {
  static const std::regex pattern(R"(\s*(alpha|beta|gamma|delta|epsilon)\s*(?:\(?\s*(\d+)\s*\)?)?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw Error(ErrorCode::parse_error, "unknown cover case '" + text + "'");
  }
  const std::string name = m[1];
  const bool has_n = m[2].matched;
  const int n = has_n ? std::stoi(m[2]) : 0;
  if (name == "alpha" && !has_n) return alpha();
  if (name == "beta" && !has_n) return beta();
  if (name == "gamma" && !has_n) return gamma();
  if (name == "delta" && has_n && n >= 1) return delta(n);
  if (name == "epsilon" && has_n) return epsilon(n);
  throw Error(ErrorCode::parse_error, "malformed cover case '" + text + "'");
}

std::string CoverCase::to_string() const {
  switch (label) {
    case Label::alpha: return "alpha";
    case Label::beta: return "beta";
    case Label::gamma: return "gamma";
    case Label::delta: return "delta(" + std::to_string(n) + ")";
    case Label::epsilon: return "epsilon(" + std::to_string(n) + ")";
  }
  return "alpha";
}

KodairaType CoverCase::upstairs_type() const {
  switch (label) {
    case Label::alpha: return KodairaType::of(KodairaType::Kind::IV);
    case Label::beta: return KodairaType::I_star(0);
    case Label::gamma: return KodairaType::of(KodairaType::Kind::IV_star);
    case Label::delta: return KodairaType::I(2 * n);
    case Label::epsilon: return KodairaType::I(2 * n);
  }
  return KodairaType::none();
}

// ---------------------------------------------------------------------------
// Branch data

BranchData BranchData::from_flags(const Config& config) {
  BranchData bd{config, {}};
  for (const auto& c : config.curves) {
    if (c.is_branch) bd.branch_ids.push_back(c.id);
  }
  return bd;
}

namespace {

bool has_singular_point(const Config& c, const CurveId& id) {
  for (const auto& pt : c.points) {
    int branches = 0;
    for (const auto& b : pt.branches) {
      if (b.curve != id) continue;
      ++branches;
      if (b.mult >= 2) return true;
    }
    if (branches >= 2) return true;
  }
  return std::any_of(c.edges.begin(), c.edges.end(),
                     [&](const Edge& e) { return e.a == id && e.b == id; });
}

// B.C with B the sum of the branch curves.
int branch_degree(const Config& c, const std::set<CurveId>& branch, const CurveId& id) {
  int total = 0;
  for (const auto& d : branch) total += c.intersection(d, id);
  return total;
}

}  // namespace

BranchReport validate_branch(const BranchData& bd) {
  BranchReport r;
  const Config& c = bd.config;
  std::set<CurveId> branch;
  for (const auto& id : bd.branch_ids) {
    if (!c.has_curve(id)) {
      r.violations.push_back("unknown branch curve '" + id + "'");
      continue;
    }
    if (!branch.insert(id).second) r.violations.push_back("branch curve '" + id + "' listed twice");
  }
  for (const auto& id : branch) {
    if (has_singular_point(c, id)) r.violations.push_back("branch curve '" + id + "' is not smooth");
  }
  for (auto it = branch.begin(); it != branch.end(); ++it) {
    for (auto jt = std::next(it); jt != branch.end(); ++jt) {
      if (c.intersection(*it, *jt) != 0) {
        r.violations.push_back("branch not disjoint: '" + *it + "' meets '" + *jt + "'");
      }
    }
  }
  r.k_squared = c.ledger.k_squared;
  for (const auto& id : branch) {
    r.k_dot_b += c.curve(id).canonical_degree();
    for (const auto& other : branch) r.b_squared += c.intersection(id, other);
  }
  r.relation = 4 * r.k_squared + 4 * r.k_dot_b + r.b_squared;
  if (r.relation != 0) {
    r.violations.push_back("4K^2 + 4K.B + B^2 = " + std::to_string(r.relation) + ", not 0");
  }
  for (const auto& node : c.curves) {
    int value = 2 * node.canonical_degree() + branch_degree(c, branch, node.id);
    if (value != 0) {
      r.anticanonical_failures.push_back(node.id);
      r.violations.push_back("(2K + B).'" + node.id + "' = " + std::to_string(value) + ", not 0");
    }
  }
  r.ok = r.violations.empty();
  return r;
}

// ---------------------------------------------------------------------------
// Generic pullback

std::vector<CurveId> upstairs_ids(const CurveId& id, CoverRule rule) {
  switch (rule) {
    case CoverRule::branch: return {"C[" + id + "]"};
    case CoverRule::non_split: return {"G[" + id + "]"};
    case CoverRule::split: return {"G[" + id + "]", "G'[" + id + "]"};
  }
  return {};
}

Config pullback(const Config& s, const std::map<CurveId, CoverRule>& rules,
                const std::set<std::pair<PointId, std::size_t>>& crossings) {
  for (const auto& e : s.edges) {
    if (!e.point) {
      throw Error(ErrorCode::unsupported, "pullback needs located intersections ('" + e.a + "', '" + e.b + "')");
    }
  }
  auto rule_of = [&](const CurveId& id) {
    auto it = rules.find(id);
    if (it == rules.end()) {
      throw Error(ErrorCode::invalid_argument, "curve '" + id + "' needs a split/non-split annotation");
    }
    return it->second;
  };
  std::set<CurveId> branch;
  for (const auto& c : s.curves) {
    if (rule_of(c.id) == CoverRule::branch) branch.insert(c.id);
  }

  Config x;
  for (const auto& c : s.curves) {
    auto rule = rule_of(c.id);
    auto ids = upstairs_ids(c.id, rule);
    if (rule == CoverRule::branch) {
      if (c.self_int % 2 != 0) {
        throw Error(ErrorCode::invariant_violation, "branch curve '" + c.id + "' has odd self-intersection");
      }
      x.add_curve({ids[0], c.self_int / 2, c.genus, 2 * c.mult, false, SigmaMark::fixed()});
    } else if (rule == CoverRule::non_split) {
      x.add_curve({ids[0], 2 * c.self_int, 0, c.mult, false, SigmaMark::stable()});
    } else {
      x.add_curve({ids[0], c.self_int, 0, c.mult, false, SigmaMark::swapped(ids[1])});
      x.add_curve({ids[1], c.self_int, 0, c.mult, false, SigmaMark::swapped(ids[0])});
    }
  }

  for (const auto& pt : s.points) {
    std::vector<std::size_t> on_branch;
    for (std::size_t i = 0; i < pt.branches.size(); ++i) {
      if (branch.count(pt.branches[i].curve)) on_branch.push_back(i);
    }
    if (on_branch.size() > 1) {
      throw Error(ErrorCode::invariant_violation, "branch locus is singular or not disjoint at '" + pt.id + "'");
    }
    if (on_branch.size() == 1) {
      const std::size_t d = on_branch[0];
      const auto& dcurve = pt.branches[d].curve;
      if (pt.branches[d].mult != 1) {
        throw Error(ErrorCode::invariant_violation, "branch curve '" + dcurve + "' is singular at '" + pt.id + "'");
      }
      const CurveId c_id = upstairs_ids(dcurve, CoverRule::branch)[0];
      std::vector<std::size_t> others;
      for (std::size_t i = 0; i < pt.branches.size(); ++i) {
        if (i != d) others.push_back(i);
      }
      MarkedPoint up;
      up.id = pt.id;
      up.branches.push_back({c_id, 1});
      if (others.size() == 1) {
        const auto& b = pt.branches[others[0]];
        if (b.mult != 1) {
          throw Error(ErrorCode::unsupported, "singular curve '" + b.curve + "' on the branch locus at '" + pt.id + "'");
        }
        const int contact = pt.contact(d, others[0]);
        auto rule = rule_of(b.curve);
        auto ids = upstairs_ids(b.curve, rule);
        if (rule == CoverRule::non_split && contact == 1) {
          up.branches.push_back({ids[0], 1});
          up.set_contact(0, 1, 1);
        } else if (contact % 2 == 0) {
          // z^2 = y^(2k): two branches, each meeting C and the other with order k.
          const int k = contact / 2;
          up.branches.push_back({ids[0], 1});
          up.branches.push_back({rule == CoverRule::split ? ids[1] : ids[0], 1});
          up.set_contact(0, 1, k);
          up.set_contact(0, 2, k);
          up.set_contact(1, 2, k);
        } else if (rule == CoverRule::split) {
          throw Error(ErrorCode::invariant_violation,
                      "split curve '" + b.curve + "' meets the branch locus with odd order at '" + pt.id + "'");
        } else {
          throw Error(ErrorCode::unsupported,
                      "odd tangency of order " + std::to_string(contact) + " to the branch locus at '" + pt.id + "'");
        }
      } else if (others.size() > 1) {
        for (auto i : others) {
          const auto& b = pt.branches[i];
          if (b.mult != 1 || rule_of(b.curve) != CoverRule::non_split || pt.contact(d, i) != 1) {
            throw Error(ErrorCode::unsupported,
                        "several curves through a branch point must be non-split and transversal ('" + pt.id + "')");
          }
          up.branches.push_back({upstairs_ids(b.curve, CoverRule::non_split)[0], 1});
          up.set_contact(0, up.branches.size() - 1, 1);
        }
        for (std::size_t a = 0; a < others.size(); ++a) {
          for (std::size_t b = a + 1; b < others.size(); ++b) {
            up.set_contact(a + 1, b + 1, 2 * pt.contact(others[a], others[b]));
          }
        }
      }
      x.add_point(std::move(up));
      continue;
    }

    for (int sheet = 0; sheet < 2; ++sheet) {
      MarkedPoint up;
      up.id = pt.id + (sheet == 0 ? "+" : "-");
      for (std::size_t i = 0; i < pt.branches.size(); ++i) {
        const auto& b = pt.branches[i];
        auto rule = rule_of(b.curve);
        auto ids = upstairs_ids(b.curve, rule);
        std::size_t which = 0;
        if (rule == CoverRule::split) {
          bool crossed = crossings.count({pt.id, i}) > 0;
          which = (sheet == 1) != crossed ? 1 : 0;
        }
        up.branches.push_back({ids[which], b.mult});
      }
      up.contacts = pt.contacts;
      x.add_point(std::move(up));
    }
  }

  // Self-intersections of split pairs and genera from adjunction on X,
  // where K_X = pi^*(K + B/2).
  for (const auto& c : s.curves) {
    auto rule = rule_of(c.id);
    if (rule == CoverRule::branch) continue;
    auto ids = upstairs_ids(c.id, rule);
    const int bdeg = branch_degree(s, branch, c.id);
    int kx_dot = 0;
    if (rule == CoverRule::non_split) {
      kx_dot = 2 * c.canonical_degree() + bdeg;
    } else {
      if (bdeg % 2 != 0) {
        throw Error(ErrorCode::invariant_violation, "split curve '" + c.id + "' has odd intersection with the branch");
      }
      const int meet = x.intersection(ids[0], ids[1]);
      for (const auto& id : ids) x.curve(id).self_int = c.self_int - meet;
      kx_dot = c.canonical_degree() + bdeg / 2;
    }
    for (const auto& id : ids) {
      auto& g = x.curve(id);
      const int twice = 2 + g.self_int + kx_dot;
      if (twice % 2 != 0 || twice < 0) {
        throw Error(ErrorCode::invariant_violation, "curve '" + id + "' gets an impossible genus");
      }
      g.genus = twice / 2;
    }
  }
  x.ledger = {};
  return x;
}

// ---------------------------------------------------------------------------
// Case table

namespace {

[[noreturn]] void mismatch(const CoverCase& cc, const std::string& why) {
  throw Error(ErrorCode::shape_mismatch, "fiber does not fit case " + cc.to_string() + ": " + why);
}

bool fiber_class_trivial(const Config& f) {
  auto g = intersection_matrix(f);
  for (std::size_t i = 0; i < f.curves.size(); ++i) {
    std::int64_t dot = 0;
    for (std::size_t j = 0; j < f.curves.size(); ++j) dot += g.matrix(i, j) * f.curves[j].mult;
    if (dot != 0) return false;
  }
  return true;
}

}  // namespace

void check_case_shape(const Config& f, const CoverCase& cc) {
  std::vector<const CurveNode*> br, rest;
  for (const auto& c : f.curves) (c.is_branch ? br : rest).push_back(&c);
  auto count_self = [](const std::vector<const CurveNode*>& v, int s) {
    return std::count_if(v.begin(), v.end(), [&](const CurveNode* c) { return c->self_int == s; });
  };
  if (cc.label == CoverCase::Label::epsilon) {
    if (!br.empty()) mismatch(cc, "contains branch curves");
    if (cc.n == 0) {
      if (f.curves.size() != 1 || !kodaira_type(f).is_smooth()) mismatch(cc, "not a smooth elliptic curve");
      return;
    }
    for (const auto& c : f.curves) {
      if (c.mult != 1) mismatch(cc, "component with multiplicity != 1");
    }
    if (!(kodaira_type(f) == KodairaType::I(cc.n))) mismatch(cc, "not of type " + KodairaType::I(cc.n).to_string());
    return;
  }
  for (const auto& c : f.curves) {
    if (c.genus != 0) mismatch(cc, "curve '" + c.id + "' is not rational");
  }
  for (const auto* d : br) {
    if (d->self_int != -4) mismatch(cc, "branch curve '" + d->id + "' is not a (-4)-curve");
  }
  if (!fiber_class_trivial(f)) mismatch(cc, "fiber class is not numerically trivial");
  if (!f.is_connected()) mismatch(cc, "fiber is disconnected");
  for (std::size_t i = 0; i < br.size(); ++i) {
    for (std::size_t j = i + 1; j < br.size(); ++j) {
      if (f.intersection(br[i]->id, br[j]->id) != 0) mismatch(cc, "branch curves meet");
    }
  }
  switch (cc.label) {
    case CoverCase::Label::alpha: {
      if (br.size() != 1 || rest.size() != 1 || rest[0]->self_int != -1) mismatch(cc, "need one (-4) and one (-1)");
      bool touching = false;
      for (const auto& pt : f.points) {
        if (pt.branches.size() == 2 && pt.branches[0].curve != pt.branches[1].curve && pt.contact(0, 1) == 2) {
          touching = true;
        }
      }
      if (!touching || f.intersection(br[0]->id, rest[0]->id) != 2) mismatch(cc, "no contact-2 point");
      return;
    }
    case CoverCase::Label::beta: {
      if (br.size() != 2 || rest.size() != 2 || count_self(rest, -1) != 1 || count_self(rest, -2) != 1) {
        mismatch(cc, "need two (-4), one (-1) and one (-2)");
      }
      const auto* h1 = rest[0]->self_int == -1 ? rest[0] : rest[1];
      for (const auto& c : f.curves) {
        if (c.id != h1->id && f.intersection(h1->id, c.id) != 1) mismatch(cc, "central (-1)-curve must meet all others once");
      }
      if (f.edges.size() != 3) mismatch(cc, "extra intersections");
      return;
    }
    case CoverCase::Label::gamma: {
      if (br.size() != 4 || rest.size() != 3 || count_self(rest, -1) != 3) mismatch(cc, "need four (-4) and three (-1)");
      const CurveNode* centre = nullptr;
      for (const auto* d : br) {
        bool all = std::all_of(rest.begin(), rest.end(), [&](const CurveNode* h) { return f.intersection(d->id, h->id) == 1; });
        if (all) centre = d;
      }
      if (!centre) mismatch(cc, "no central (-4)-curve");
      std::set<CurveId> tips;
      for (const auto* h : rest) {
        for (const auto* d : br) {
          if (d == centre) continue;
          int i = f.intersection(d->id, h->id);
          if (i == 1) tips.insert(d->id);
          else if (i != 0) mismatch(cc, "tip meets a (-1)-curve more than once");
        }
      }
      if (tips.size() != 3 || f.edges.size() != 6) mismatch(cc, "twigs are not D - H - D4");
      return;
    }
    case CoverCase::Label::delta: {
      const auto n = static_cast<std::size_t>(cc.n);
      if (br.size() != n || rest.size() != n || count_self(rest, -1) != cc.n) mismatch(cc, "need n (-4) and n (-1)");
      for (const auto* h : rest) {
        int total = 0;
        for (const auto* d : br) total += f.intersection(h->id, d->id);
        if (total != 2) mismatch(cc, "(-1)-curve must meet the (-4)-curves twice");
        for (const auto* o : rest) {
          if (o != h && f.intersection(h->id, o->id) != 0) mismatch(cc, "(-1)-curves meet");
        }
      }
      for (const auto* d : br) {
        int total = 0;
        for (const auto* h : rest) total += f.intersection(h->id, d->id);
        if (total != 2) mismatch(cc, "(-4)-curve must meet the (-1)-curves twice");
      }
      for (const auto& e : f.edges) {
        if (e.local_mult != 1 || e.a == e.b) mismatch(cc, "intersections must be transversal");
      }
      return;
    }
    case CoverCase::Label::epsilon: return;
  }
}

std::map<CurveId, CoverRule> case_rules(const Config& f, const CoverCase& cc) {
  std::map<CurveId, CoverRule> rules;
  for (const auto& c : f.curves) {
    if (c.is_branch) {
      rules[c.id] = CoverRule::branch;
      continue;
    }
    bool split = false;
    switch (cc.label) {
      case CoverCase::Label::alpha: split = true; break;
      case CoverCase::Label::beta: split = c.self_int == -2; break;
      case CoverCase::Label::gamma:
      case CoverCase::Label::delta: split = false; break;
      case CoverCase::Label::epsilon: split = cc.n >= 1; break;
    }
    rules[c.id] = split ? CoverRule::split : CoverRule::non_split;
  }
  return rules;
}

std::set<std::pair<PointId, std::size_t>> case_crossings(const Config& f, const CoverCase& cc) {
  if (cc.label != CoverCase::Label::epsilon || cc.n == 0) return {};
  // One crossed sheet on the cycle makes the cover of the loop connected.
  std::set<CurveId> ids;
  for (const auto& c : f.curves) ids.insert(c.id);
  for (const auto& pt : f.points) {
    if (pt.branches.size() != 2) continue;
    if (ids.count(pt.branches[0].curve) && ids.count(pt.branches[1].curve)) return {{pt.id, 1}};
  }
  throw Error(ErrorCode::shape_mismatch, "cycle has no located crossing point");
}

namespace {

int normalize_mults(Config& x, const std::vector<CurveId>& ids) {
  int g = 0;
  for (const auto& id : ids) g = std::gcd(g, x.curve(id).mult);
  if (g <= 0) g = 1;
  for (const auto& id : ids) x.curve(id).mult /= g;
  return g;
}

}  // namespace

Config pullback_fiber(const Config& fiber, const CoverCase& cc) {
  check_case_shape(fiber, cc);
  Config x = pullback(fiber, case_rules(fiber, cc), case_crossings(fiber, cc));
  normalize_mults(x, x.curve_ids());
  return x;
}

// ---------------------------------------------------------------------------
// Canonical resolution

CoverResult canonical_resolution(const CoverRequest& req) {
  CoverResult result;
  auto& report = result.report;
  report.branch = validate_branch(req.branch);
  if (!report.branch.ok) {
    throw Error(ErrorCode::invariant_violation, "invalid branch data: " + report.branch.violations.front());
  }
  Config s = req.branch.config;
  std::set<CurveId> branch(req.branch.branch_ids.begin(), req.branch.branch_ids.end());
  for (auto& c : s.curves) c.is_branch = branch.count(c.id) > 0;

  std::map<CurveId, CoverRule> rules;
  std::set<std::pair<PointId, std::size_t>> crossings;
  for (const auto& id : branch) rules[id] = CoverRule::branch;
  for (const auto& decl : req.fibers) {
    Config sub = s.restricted_to(decl.curves);
    check_case_shape(sub, decl.cover_case);
    for (const auto& [id, rule] : case_rules(sub, decl.cover_case)) rules[id] = rule;
    auto cross = case_crossings(sub, decl.cover_case);
    crossings.insert(cross.begin(), cross.end());
  }
  for (const auto& [id, rule] : req.annotations) {
    if (rules.count(id)) continue;
    if (rule == CoverRule::branch) {
      throw Error(ErrorCode::invalid_argument, "annotation marks '" + id + "' as branch outside the branch data");
    }
    rules[id] = rule;
  }

  Config x = pullback(s, rules, crossings);
  std::set<CurveId> in_fiber;
  for (const auto& decl : req.fibers) {
    UpstairsFiber uf;
    uf.name = decl.name;
    uf.cover_case = decl.cover_case;
    for (const auto& id : decl.curves) {
      for (const auto& up : upstairs_ids(id, rules.at(id))) uf.curves.push_back(up);
    }
    uf.pullback_coefficient = normalize_mults(x, uf.curves);
    uf.kodaira = kodaira_type(x.restricted_to(uf.curves));
    in_fiber.insert(uf.curves.begin(), uf.curves.end());
    report.fibers.push_back(std::move(uf));
  }
  for (auto& c : x.curves) {
    if (!in_fiber.count(c.id)) c.mult = 1;
  }

  report.euler_downstairs = s.ledger.euler;
  for (const auto& id : branch) report.euler_branch += 2 - 2 * s.curve(id).genus;
  report.euler_upstairs = 2 * report.euler_downstairs - report.euler_branch;
  report.twice_k_squared_upstairs = report.branch.relation;
  report.rho_lower_bound = s.ledger.rho;
  report.enriques_case = branch.empty();
  x.ledger.k_squared = report.twice_k_squared_upstairs / 2;
  x.ledger.rho = s.ledger.rho;
  x.ledger.euler = report.euler_upstairs;
  x.ledger.rational_surface = false;

  report.fixed = fixed_locus_summary(x);
  report.rule_violations = fixed_locus_rule_violations(x);
  result.upstairs = std::move(x);
  return result;
}

bool k3_check(const CoverReport& report) {
  return !report.enriques_case && report.branch.ok && report.branch.relation == 0 &&
         report.euler_upstairs == 24;
}

FixedLocusSummary fixed_locus_summary(const Config& x) {
  FixedLocusSummary s;
  std::vector<CurveId> fixed;
  for (const auto& c : x.curves) {
    if (c.sigma.kind != SigmaKind::fixed) continue;
    fixed.push_back(c.id);
    s.genera.push_back(c.genus);
  }
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    for (std::size_t j = i + 1; j < fixed.size(); ++j) {
      if (x.intersection(fixed[i], fixed[j]) != 0) {
        throw Error(ErrorCode::invariant_violation,
                    "fixed curves '" + fixed[i] + "' and '" + fixed[j] + "' intersect");
      }
    }
  }
  s.m = static_cast<int>(fixed.size());
  std::sort(s.genera.begin(), s.genera.end());
  return s;
}

std::vector<std::string> fixed_locus_rule_violations(const Config& x) {
  std::vector<std::string> out;
  std::vector<CurveId> fixed;
  for (const auto& c : x.curves) {
    if (c.sigma.kind == SigmaKind::fixed) fixed.push_back(c.id);
  }
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    for (std::size_t j = i + 1; j < fixed.size(); ++j) {
      if (x.intersection(fixed[i], fixed[j]) != 0) out.push_back("fixed curves '" + fixed[i] + "' and '" + fixed[j] + "' meet");
    }
  }
  for (const auto& c : x.curves) {
    if (c.sigma.kind != SigmaKind::stable_not_fixed || c.genus != 0) continue;
    int total = 0;
    for (const auto& f : fixed) total += x.intersection(c.id, f);
    if (total != 2) {
      out.push_back("stable rational curve '" + c.id + "' meets the fixed locus " + std::to_string(total) + " times");
    }
  }
  return out;
}

}  // namespace k3calc
