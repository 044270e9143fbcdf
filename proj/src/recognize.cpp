#include "k3calc/recognize.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "k3calc/gram.hpp"

namespace k3calc {

std::string DynkinLabel::to_string() const {
  switch (family) {
    case Family::A: return "A_" + std::to_string(rank);
    case Family::D: return "D_" + std::to_string(rank);
    case Family::E: return "E_" + std::to_string(rank);
    case Family::none: return "none";
  }
  return "none";
}

std::string KodairaType::to_string() const {
  switch (kind) {
    case Kind::I: return "I_" + std::to_string(n);
    case Kind::I_star: return "I_" + std::to_string(n) + "*";
    case Kind::II: return "II";
    case Kind::III: return "III";
    case Kind::IV: return "IV";
    case Kind::IV_star: return "IV*";
    case Kind::III_star: return "III*";
    case Kind::II_star: return "II*";
    case Kind::none: return "none";
  }
  return "none";
}

KodairaType KodairaType::parse(const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  }
  if (text == "smooth") return I(0);
  static const std::map<std::string, Kind> roman{
      {"II", Kind::II},           {"III", Kind::III},           {"IV", Kind::IV},
      {"IV*", Kind::IV_star},     {"III*", Kind::III_star},     {"II*", Kind::II_star}};
  if (auto it = roman.find(text); it != roman.end()) return of(it->second);
  if (!text.empty() && text[0] == 'I') {
    std::string rest = text.substr(1);
    if (!rest.empty() && rest[0] == '_') rest = rest.substr(1);
    bool star = !rest.empty() && rest.back() == '*';
    if (star) rest.pop_back();
    if (!rest.empty() && std::all_of(rest.begin(), rest.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int n = std::stoi(rest);
      return star ? I_star(n) : I(n);
    }
  }
  throw Error(ErrorCode::parse_error, "unrecognised fiber type '" + raw + "'");
}

namespace {

// Simple-graph view of a configuration of smooth curves meeting
// transversally at points with at most two branches.
struct SimpleGraph {
  std::vector<std::set<std::size_t>> adj;
  std::size_t edge_count = 0;
};

std::size_t index_in(const Config& c, const CurveId& id) {
  for (std::size_t i = 0; i < c.curves.size(); ++i) {
    if (c.curves[i].id == id) return i;
  }
  throw Error(ErrorCode::unknown_id, "unknown curve '" + id + "'");
}

bool all_rational_minus_two(const Config& c) {
  return std::all_of(c.curves.begin(), c.curves.end(), [](const CurveNode& n) {
    return n.self_int == -2 && n.genus == 0;
  });
}

// Returns false if some intersection is tangential, repeated, a self point,
// or has three or more branches through one point.
bool simple_graph(const Config& c, SimpleGraph& g) {
  g.adj.assign(c.curves.size(), {});
  g.edge_count = 0;
  for (const auto& pt : c.points) {
    if (pt.branches.size() > 2) return false;
  }
  for (const auto& e : c.edges) {
    if (e.a == e.b || e.local_mult != 1) return false;
    auto i = index_in(c, e.a);
    auto j = index_in(c, e.b);
    if (!g.adj[i].insert(j).second) return false;
    g.adj[j].insert(i);
    ++g.edge_count;
  }
  return true;
}

// Arm lengths (number of vertices) hanging off a branch vertex in a tree.
std::vector<int> arm_lengths(const SimpleGraph& g, std::size_t centre) {
  std::vector<int> arms;
  for (auto start : g.adj[centre]) {
    int len = 0;
    std::size_t prev = centre, cur = start;
    while (true) {
      ++len;
      if (g.adj[cur].size() > 2) return {};  // a second branch vertex
      std::size_t next = SIZE_MAX;
      for (auto v : g.adj[cur]) {
        if (v != prev) next = v;
      }
      if (next == SIZE_MAX) break;
      prev = cur;
      cur = next;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  return arms;
}

// The fiber class sum(mult * C) must be numerically trivial on every
// component with primitive multiplicities.
bool fiber_class_trivial(const Config& c) {
  auto g = intersection_matrix(c);
  const std::size_t n = c.curves.size();
  int gcd = 0;
  for (const auto& node : c.curves) gcd = std::gcd(gcd, node.mult);
  if (gcd != 1) return false;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t dot = 0;
    for (std::size_t j = 0; j < n; ++j) dot += g.matrix(i, j) * c.curves[j].mult;
    if (dot != 0) return false;
  }
  return true;
}

bool is_tree(const Config& c, const SimpleGraph& g) {
  return g.edge_count + 1 == c.curves.size() && c.is_connected();
}

}  // namespace

DynkinLabel dynkin_type(const Config& c) {
  if (c.curves.empty() || !c.is_connected()) {
    throw Error(ErrorCode::disconnected, "dynkin_type needs a connected configuration");
  }
  if (!all_rational_minus_two(c)) return DynkinLabel::none();
  SimpleGraph g;
  if (!simple_graph(c, g) || !is_tree(c, g)) return DynkinLabel::none();
  const int n = static_cast<int>(c.curves.size());
  std::vector<std::size_t> branch_vertices;
  for (std::size_t i = 0; i < g.adj.size(); ++i) {
    if (g.adj[i].size() > 3) return DynkinLabel::none();
    if (g.adj[i].size() == 3) branch_vertices.push_back(i);
  }
  if (branch_vertices.empty()) return {DynkinLabel::Family::A, n};
  if (branch_vertices.size() > 1) return DynkinLabel::none();
  auto arms = arm_lengths(g, branch_vertices.front());
  if (arms.size() != 3) return DynkinLabel::none();
  if (arms[0] == 1 && arms[1] == 1) return {DynkinLabel::Family::D, n};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
    return {DynkinLabel::Family::E, n};
  }
  return DynkinLabel::none();
}

KodairaType kodaira_type(const Config& c) {
  if (c.curves.empty() || !c.is_connected()) return KodairaType::none();
  const std::size_t n = c.curves.size();

  if (n == 1) {
    const auto& f = c.curves.front();
    if (f.self_int != 0 || f.genus != 1 || f.mult != 1) return KodairaType::none();
    std::vector<const MarkedPoint*> singular;
    for (const auto& pt : c.points) {
      if (pt.branches.size() >= 2 || pt.branches.front().mult >= 2) singular.push_back(&pt);
    }
    if (singular.empty()) return KodairaType::I(0);
    if (singular.size() != 1) return KodairaType::none();
    const auto& pt = *singular.front();
    if (pt.branches.size() == 2 && pt.branches[0].mult == 1 && pt.branches[1].mult == 1 &&
        pt.contact(0, 1) == 1) {
      return KodairaType::I(1);
    }
    if (pt.branches.size() == 1 && pt.branches[0].mult == 2) return KodairaType::of(KodairaType::Kind::II);
    return KodairaType::none();
  }

  if (!all_rational_minus_two(c)) return KodairaType::none();
  for (const auto& e : c.edges) {
    if (e.a == e.b) return KodairaType::none();
  }
  if (!fiber_class_trivial(c)) return KodairaType::none();

  if (n == 2) {
    const auto& a = c.curves[0].id;
    const auto& b = c.curves[1].id;
    if (c.intersection(a, b) != 2) return KodairaType::none();
    std::size_t located = 0;
    bool tangent = false;
    for (const auto& e : c.edges) {
      if (!e.joins(a, b)) continue;
      ++located;
      if (e.local_mult == 2) tangent = true;
    }
    if (located == 1 && tangent) {
      // One point with contact two between two smooth branches.
      for (const auto& pt : c.points) {
        if (pt.branches.size() == 2 && pt.contact(0, 1) == 2) return KodairaType::of(KodairaType::Kind::III);
      }
      return KodairaType::none();
    }
    if (located == 2) return KodairaType::I(2);
    return KodairaType::none();
  }

  if (n == 3) {
    for (const auto& pt : c.points) {
      if (pt.branches.size() == 3) {
        bool transversal = pt.contact(0, 1) == 1 && pt.contact(0, 2) == 1 && pt.contact(1, 2) == 1;
        bool distinct = pt.branches[0].curve != pt.branches[1].curve &&
                        pt.branches[0].curve != pt.branches[2].curve &&
                        pt.branches[1].curve != pt.branches[2].curve;
        if (transversal && distinct && c.edges.size() == 3) return KodairaType::of(KodairaType::Kind::IV);
        return KodairaType::none();
      }
    }
  }

  SimpleGraph g;
  if (!simple_graph(c, g)) return KodairaType::none();
  const int count = static_cast<int>(n);
  if (g.edge_count == n) {
    bool cycle = std::all_of(g.adj.begin(), g.adj.end(), [](const auto& s) { return s.size() == 2; });
    return cycle ? KodairaType::I(count) : KodairaType::none();
  }
  if (!is_tree(c, g)) return KodairaType::none();

  std::vector<std::size_t> branch_vertices;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.adj[i].size() >= 3) branch_vertices.push_back(i);
  }
  if (branch_vertices.size() == 1) {
    auto centre = branch_vertices.front();
    if (g.adj[centre].size() == 4) {
      return count == 5 ? KodairaType::I_star(0) : KodairaType::none();
    }
    if (g.adj[centre].size() != 3) return KodairaType::none();
    auto arms = arm_lengths(g, centre);
    if (arms == std::vector<int>{2, 2, 2}) return KodairaType::of(KodairaType::Kind::IV_star);
    if (arms == std::vector<int>{1, 3, 3}) return KodairaType::of(KodairaType::Kind::III_star);
    if (arms == std::vector<int>{1, 2, 5}) return KodairaType::of(KodairaType::Kind::II_star);
    return KodairaType::none();
  }
  if (branch_vertices.size() == 2) {
    // D~_{k}: two degree-3 vertices, each carrying two leaves.
    for (auto v : branch_vertices) {
      if (g.adj[v].size() != 3) return KodairaType::none();
      int leaves = 0;
      for (auto w : g.adj[v]) leaves += g.adj[w].size() == 1 ? 1 : 0;
      if (leaves < 2) return KodairaType::none();
    }
    return count >= 6 ? KodairaType::I_star(count - 5) : KodairaType::none();
  }
  return KodairaType::none();
}

}  // namespace k3calc
