#include "k3calc/config.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <tuple>

namespace k3calc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::unknown_id: return "unknown_id";
    case ErrorCode::not_symmetric: return "not_symmetric";
    case ErrorCode::disconnected: return "disconnected";
    case ErrorCode::shape_mismatch: return "shape_mismatch";
    case ErrorCode::not_contractible: return "not_contractible";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::invariant_violation: return "invariant_violation";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

std::string to_string(const SigmaMark& mark) {
  switch (mark.kind) {
    case SigmaKind::unmarked: return "unmarked";
    case SigmaKind::fixed: return "fixed";
    case SigmaKind::stable_not_fixed: return "stable_not_fixed";
    case SigmaKind::swapped: return "swapped(" + mark.partner + ")";
  }
  return "unmarked";
}

// ---------------------------------------------------------------------------
// MarkedPoint

namespace {

std::pair<std::size_t, std::size_t> ordered(std::size_t i, std::size_t j) {
  return i < j ? std::pair{i, j} : std::pair{j, i};
}

}  // namespace

int MarkedPoint::contact(std::size_t i, std::size_t j) const {
  auto it = contacts.find(ordered(i, j));
  if (it == contacts.end()) {
    throw Error(ErrorCode::invariant_violation,
                "point " + id + ": missing contact order for a branch pair");
  }
  return it->second;
}

void MarkedPoint::set_contact(std::size_t i, std::size_t j, int order) {
  if (i == j) {
    throw Error(ErrorCode::invalid_argument, "contact of a branch with itself");
  }
  contacts[ordered(i, j)] = order;
}

int MarkedPoint::local_intersection(std::size_t i, std::size_t j) const {
  return branches[i].mult * branches[j].mult + contact(i, j) - 1;
}

int MarkedPoint::multiplicity_of(const CurveId& c) const {
  int m = 0;
  for (const auto& b : branches) {
    if (b.curve == c) m += b.mult;
  }
  return m;
}

bool MarkedPoint::passes_through(const CurveId& c) const {
  return std::any_of(branches.begin(), branches.end(),
                     [&](const Branch& b) { return b.curve == c; });
}

// ---------------------------------------------------------------------------
// Config lookups

bool Config::has_curve(const CurveId& id) const {
  return std::any_of(curves.begin(), curves.end(),
                     [&](const CurveNode& c) { return c.id == id; });
}

const CurveNode& Config::curve(const CurveId& id) const {
  for (const auto& c : curves) {
    if (c.id == id) return c;
  }
  throw Error(ErrorCode::unknown_id, "unknown curve '" + id + "'");
}

CurveNode& Config::curve(const CurveId& id) {
  for (auto& c : curves) {
    if (c.id == id) return c;
  }
  throw Error(ErrorCode::unknown_id, "unknown curve '" + id + "'");
}

bool Config::has_point(const PointId& id) const {
  return std::any_of(points.begin(), points.end(),
                     [&](const MarkedPoint& p) { return p.id == id; });
}

const MarkedPoint& Config::point(const PointId& id) const {
  for (const auto& p : points) {
    if (p.id == id) return p;
  }
  throw Error(ErrorCode::unknown_id, "unknown point '" + id + "'");
}

// ---------------------------------------------------------------------------
// Construction

CurveId Config::add_curve(CurveNode node) {
  if (node.id.empty()) {
    throw Error(ErrorCode::invalid_argument, "curve id must not be empty");
  }
  if (has_curve(node.id)) {
    throw Error(ErrorCode::invalid_argument, "duplicate curve id '" + node.id + "'");
  }
  if (node.mult < 1 || node.genus < 0) {
    throw Error(ErrorCode::invalid_argument,
                "curve '" + node.id + "': need mult >= 1 and genus >= 0");
  }
  curves.push_back(std::move(node));
  return curves.back().id;
}

PointId Config::add_point(MarkedPoint pt) {
  if (pt.id.empty()) pt.id = fresh_point_id();
  if (has_point(pt.id)) {
    throw Error(ErrorCode::invalid_argument, "duplicate point id '" + pt.id + "'");
  }
  if (pt.branches.empty()) {
    throw Error(ErrorCode::invalid_argument, "point '" + pt.id + "' has no branches");
  }
  for (const auto& b : pt.branches) {
    if (!has_curve(b.curve)) {
      throw Error(ErrorCode::unknown_id,
                  "point '" + pt.id + "' references unknown curve '" + b.curve + "'");
    }
    if (b.mult < 1) {
      throw Error(ErrorCode::invalid_argument,
                  "point '" + pt.id + "': branch multiplicity must be positive");
    }
  }
  for (std::size_t i = 0; i < pt.branches.size(); ++i) {
    for (std::size_t j = i + 1; j < pt.branches.size(); ++j) {
      auto it = pt.contacts.find({i, j});
      if (it == pt.contacts.end()) pt.contacts[{i, j}] = 1;
      else if (it->second < 1) {
        throw Error(ErrorCode::invalid_argument,
                    "point '" + pt.id + "': contact orders must be >= 1");
      }
    }
  }
  points.push_back(std::move(pt));
  sync_edges();
  return points.back().id;
}

PointId Config::connect(const CurveId& a, const CurveId& b, int contact) {
  MarkedPoint pt;
  pt.branches = {{a, 1}, {b, 1}};
  pt.set_contact(0, 1, contact);
  return add_point(std::move(pt));
}

PointId Config::connect_all(const std::vector<CurveId>& ids) {
  MarkedPoint pt;
  for (const auto& id : ids) pt.branches.push_back({id, 1});
  return add_point(std::move(pt));
}

PointId Config::add_node(const CurveId& c) {
  MarkedPoint pt;
  pt.branches = {{c, 1}, {c, 1}};
  pt.set_contact(0, 1, 1);
  return add_point(std::move(pt));
}

PointId Config::add_cusp(const CurveId& c) {
  MarkedPoint pt;
  pt.branches = {{c, 2}};
  return add_point(std::move(pt));
}

PointId Config::add_free_point(const CurveId& c) {
  MarkedPoint pt;
  pt.branches = {{c, 1}};
  return add_point(std::move(pt));
}

void Config::add_unlocated_edge(const CurveId& a, const CurveId& b, int local_mult) {
  if (!has_curve(a) || !has_curve(b)) {
    throw Error(ErrorCode::unknown_id, "edge references an unknown curve");
  }
  if (local_mult < 1) {
    throw Error(ErrorCode::invalid_argument, "edge multiplicity must be positive");
  }
  edges.push_back({a, b, local_mult, std::nullopt});
}

// ---------------------------------------------------------------------------
// Removal and renaming

void Config::remove_point(const PointId& id) {
  auto it = std::find_if(points.begin(), points.end(),
                         [&](const MarkedPoint& p) { return p.id == id; });
  if (it == points.end()) throw Error(ErrorCode::unknown_id, "unknown point '" + id + "'");
  points.erase(it);
  sync_edges();
}

namespace {

// Keeps only the branches for which `keep` holds, re-indexing contacts.
void filter_branches(MarkedPoint& pt, const std::function<bool(const Branch&)>& keep) {
  std::vector<std::size_t> new_index(pt.branches.size(), SIZE_MAX);
  std::vector<Branch> kept;
  for (std::size_t i = 0; i < pt.branches.size(); ++i) {
    if (keep(pt.branches[i])) {
      new_index[i] = kept.size();
      kept.push_back(pt.branches[i]);
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, int> contacts;
  for (const auto& [key, order] : pt.contacts) {
    auto [i, j] = key;
    if (new_index[i] != SIZE_MAX && new_index[j] != SIZE_MAX) {
      contacts[ordered(new_index[i], new_index[j])] = order;
    }
  }
  pt.branches = std::move(kept);
  pt.contacts = std::move(contacts);
}

}  // namespace

void Config::remove_curve(const CurveId& id) {
  auto it = std::find_if(curves.begin(), curves.end(),
                         [&](const CurveNode& c) { return c.id == id; });
  if (it == curves.end()) throw Error(ErrorCode::unknown_id, "unknown curve '" + id + "'");
  curves.erase(it);
  for (auto& pt : points) {
    filter_branches(pt, [&](const Branch& b) { return b.curve != id; });
  }
  std::erase_if(points, [](const MarkedPoint& p) { return p.branches.empty(); });
  std::erase_if(edges, [&](const Edge& e) { return e.a == id || e.b == id; });
  for (auto& c : curves) {
    if (c.sigma.kind == SigmaKind::swapped && c.sigma.partner == id) c.sigma = {};
  }
  sync_edges();
}

void Config::rename_curve(const CurveId& from, const CurveId& to) {
  if (from == to) return;
  if (has_curve(to)) {
    throw Error(ErrorCode::invalid_argument, "rename target '" + to + "' already exists");
  }
  curve(from).id = to;
  for (auto& c : curves) {
    if (c.sigma.kind == SigmaKind::swapped && c.sigma.partner == from) c.sigma.partner = to;
  }
  for (auto& pt : points) {
    for (auto& b : pt.branches) {
      if (b.curve == from) b.curve = to;
    }
  }
  for (auto& e : edges) {
    if (e.a == from) e.a = to;
    if (e.b == from) e.b = to;
  }
}

void Config::merge(const Config& other, const std::string& prefix) {
  for (auto c : other.curves) {
    c.id = prefix + c.id;
    if (c.sigma.kind == SigmaKind::swapped) c.sigma.partner = prefix + c.sigma.partner;
    add_curve(std::move(c));
  }
  for (auto pt : other.points) {
    pt.id = prefix + pt.id;
    for (auto& b : pt.branches) b.curve = prefix + b.curve;
    if (has_point(pt.id)) {
      throw Error(ErrorCode::invalid_argument, "merge produced duplicate point '" + pt.id + "'");
    }
    points.push_back(std::move(pt));
  }
  for (const auto& e : other.edges) {
    if (!e.point) edges.push_back({prefix + e.a, prefix + e.b, e.local_mult, std::nullopt});
  }
  sync_edges();
}

// ---------------------------------------------------------------------------
// Queries

int Config::intersection(const CurveId& a, const CurveId& b) const {
  if (a == b) return curve(a).self_int;
  int total = 0;
  for (const auto& e : edges) {
    if (e.joins(a, b)) total += e.local_mult;
  }
  return total;
}

std::vector<PointId> Config::points_on(const CurveId& c) const {
  std::vector<PointId> out;
  for (const auto& pt : points) {
    if (pt.passes_through(c)) out.push_back(pt.id);
  }
  return out;
}

std::vector<CurveId> Config::neighbours(const CurveId& c) const {
  std::set<CurveId> out;
  for (const auto& e : edges) {
    if (e.a == c && e.b != c) out.insert(e.b);
    if (e.b == c && e.a != c) out.insert(e.a);
  }
  return {out.begin(), out.end()};
}

std::vector<CurveId> Config::curve_ids() const {
  std::vector<CurveId> out;
  out.reserve(curves.size());
  for (const auto& c : curves) out.push_back(c.id);
  return out;
}

bool Config::is_connected() const {
  if (curves.empty()) return true;
  std::set<CurveId> seen{curves.front().id};
  std::vector<CurveId> stack{curves.front().id};
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (const auto& n : neighbours(c)) {
      if (seen.insert(n).second) stack.push_back(n);
    }
  }
  return seen.size() == curves.size();
}

Config Config::restricted_to(const std::vector<CurveId>& ids) const {
  std::set<CurveId> keep(ids.begin(), ids.end());
  Config out;
  out.ledger = ledger;
  for (const auto& c : curves) {
    if (keep.count(c.id)) out.curves.push_back(c);
  }
  if (out.curves.size() != keep.size()) {
    throw Error(ErrorCode::unknown_id, "restriction names an unknown curve");
  }
  for (auto pt : points) {
    filter_branches(pt, [&](const Branch& b) { return keep.count(b.curve) > 0; });
    if (!pt.branches.empty()) out.points.push_back(std::move(pt));
  }
  for (const auto& e : edges) {
    if (!e.point && keep.count(e.a) && keep.count(e.b)) out.edges.push_back(e);
  }
  out.sync_edges();
  return out;
}

namespace {

// Largest integer suffix among ids of the form prefix<digits>.
int max_suffix(const std::vector<std::string>& ids, const std::string& prefix) {
  int best = 0;
  for (const auto& id : ids) {
    if (id.size() <= prefix.size() || id.compare(0, prefix.size(), prefix) != 0) continue;
    int value = 0;
    const char* first = id.data() + prefix.size();
    const char* last = id.data() + id.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc() && ptr == last) best = std::max(best, value);
  }
  return best;
}

}  // namespace

PointId Config::fresh_point_id() const {
  std::vector<std::string> ids;
  for (const auto& p : points) ids.push_back(p.id);
  return "p" + std::to_string(max_suffix(ids, "p") + 1);
}

CurveId Config::fresh_curve_id(const std::string& prefix) const {
  return prefix + std::to_string(max_suffix(curve_ids(), prefix) + 1);
}

// ---------------------------------------------------------------------------
// Edges derived from points

namespace {

std::vector<Edge> edges_of(const MarkedPoint& pt) {
  std::vector<Edge> out;
  const auto& br = pt.branches;
  for (std::size_t i = 0; i < br.size(); ++i) {
    // A single singular branch is a cusp-like self point; its weight is the
    // delta invariant m(m-1)/2 of an (m, m+1) cusp.
    if (br[i].mult >= 2) {
      out.push_back({br[i].curve, br[i].curve, br[i].mult * (br[i].mult - 1) / 2, pt.id});
    }
    for (std::size_t j = i + 1; j < br.size(); ++j) {
      out.push_back({br[i].curve, br[j].curve, pt.local_intersection(i, j), pt.id});
    }
  }
  return out;
}

auto edge_key(const Edge& e) {
  const auto& lo = std::min(e.a, e.b);
  const auto& hi = std::max(e.a, e.b);
  return std::make_tuple(lo, hi, e.local_mult, e.point.value_or(""));
}

}  // namespace

void Config::sync_edges() {
  std::erase_if(edges, [](const Edge& e) { return e.point.has_value(); });
  for (const auto& pt : points) {
    auto derived = edges_of(pt);
    edges.insert(edges.end(), derived.begin(), derived.end());
  }
}

void Config::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::invariant_violation, what);
  };
  std::set<CurveId> ids;
  for (const auto& c : curves) {
    if (!ids.insert(c.id).second) fail("duplicate curve id '" + c.id + "'");
    if (c.mult < 1) fail("curve '" + c.id + "' has non-positive multiplicity");
    if (c.genus < 0) fail("curve '" + c.id + "' has negative genus");
  }
  for (const auto& c : curves) {
    if (c.sigma.kind == SigmaKind::swapped && !ids.count(c.sigma.partner)) {
      fail("curve '" + c.id + "' is swapped with unknown '" + c.sigma.partner + "'");
    }
  }
  std::set<PointId> pids;
  std::vector<Edge> derived;
  for (const auto& pt : points) {
    if (!pids.insert(pt.id).second) fail("duplicate point id '" + pt.id + "'");
    if (pt.branches.empty()) fail("point '" + pt.id + "' has no branches");
    for (const auto& b : pt.branches) {
      if (!ids.count(b.curve)) fail("point '" + pt.id + "' names unknown curve '" + b.curve + "'");
      if (b.mult < 1) fail("point '" + pt.id + "' has a non-positive branch multiplicity");
    }
    for (const auto& [key, order] : pt.contacts) {
      if (key.first >= key.second || key.second >= pt.branches.size()) {
        fail("point '" + pt.id + "' has a malformed contact entry");
      }
      if (order < 1) fail("point '" + pt.id + "' has a contact order below 1");
    }
    if (pt.contacts.size() != pt.branches.size() * (pt.branches.size() - 1) / 2) {
      fail("point '" + pt.id + "' is missing contact orders");
    }
    auto e = edges_of(pt);
    derived.insert(derived.end(), e.begin(), e.end());
  }
  std::vector<Edge> located;
  for (const auto& e : edges) {
    if (!ids.count(e.a) || !ids.count(e.b)) fail("edge references an unknown curve");
    if (e.local_mult < 1) fail("edge with non-positive multiplicity");
    if (e.point) {
      if (!pids.count(*e.point)) fail("edge references unknown point '" + *e.point + "'");
      const auto& pt = point(*e.point);
      if (!pt.passes_through(e.a) || !pt.passes_through(e.b)) {
        fail("edge " + e.a + "-" + e.b + " is not supported by point '" + *e.point + "'");
      }
      located.push_back(e);
    }
  }
  auto by_key = [](const Edge& x, const Edge& y) { return edge_key(x) < edge_key(y); };
  std::sort(located.begin(), located.end(), by_key);
  std::sort(derived.begin(), derived.end(), by_key);
  bool same = located.size() == derived.size() &&
              std::equal(located.begin(), located.end(), derived.begin(),
                         [](const Edge& x, const Edge& y) { return edge_key(x) == edge_key(y); });
  if (!same) fail("located edges disagree with the marked points");
  if (!ledger.consistent()) {
    fail("ledger of a rational surface violates rho = 10 - K^2 or e = 12 - K^2");
  }
}

// ---------------------------------------------------------------------------
// Equivalence up to point renaming

namespace {

using BranchKey = std::pair<CurveId, int>;
using PointShape = std::pair<std::vector<BranchKey>,
                             std::vector<std::tuple<BranchKey, BranchKey, int>>>;

PointShape shape_of(const MarkedPoint& pt) {
  PointShape s;
  for (const auto& b : pt.branches) s.first.emplace_back(b.curve, b.mult);
  for (const auto& [key, order] : pt.contacts) {
    BranchKey x{pt.branches[key.first].curve, pt.branches[key.first].mult};
    BranchKey y{pt.branches[key.second].curve, pt.branches[key.second].mult};
    if (y < x) std::swap(x, y);
    s.second.emplace_back(x, y, order);
  }
  std::sort(s.first.begin(), s.first.end());
  std::sort(s.second.begin(), s.second.end());
  return s;
}

}  // namespace

bool equivalent(const Config& x, const Config& y) {
  if (!(x.ledger == y.ledger)) return false;
  auto sorted_curves = [](std::vector<CurveNode> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return v;
  };
  if (sorted_curves(x.curves) != sorted_curves(y.curves)) return false;
  auto shapes = [](const Config& c) {
    std::vector<PointShape> out;
    for (const auto& p : c.points) out.push_back(shape_of(p));
    std::sort(out.begin(), out.end());
    return out;
  };
  if (shapes(x) != shapes(y)) return false;
  auto unlocated = [](const Config& c) {
    std::vector<std::tuple<CurveId, CurveId, int>> out;
    for (const auto& e : c.edges) {
      if (!e.point) out.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b), e.local_mult);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return unlocated(x) == unlocated(y);
}

}  // namespace k3calc
