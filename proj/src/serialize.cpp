#include "k3calc/serialize.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace k3calc {

using nlohmann::json;

namespace {

json sigma_to_json(const SigmaMark& mark) {
  switch (mark.kind) {
    case SigmaKind::unmarked: return "unmarked";
    case SigmaKind::fixed: return "fixed";
    case SigmaKind::stable_not_fixed: return "stable_not_fixed";
    case SigmaKind::swapped: return json{{"swapped", mark.partner}};
  }
  return "unmarked";
}

SigmaMark sigma_from_json(const json& j) {
  if (j.is_object()) return SigmaMark::swapped(j.at("swapped").get<std::string>());
  auto s = j.get<std::string>();
  if (s == "unmarked") return {};
  if (s == "fixed") return SigmaMark::fixed();
  if (s == "stable_not_fixed") return SigmaMark::stable();
  throw Error(ErrorCode::parse_error, "unknown sigma_mark '" + s + "'");
}

}  // namespace

json to_json(const Config& config) {
  auto curves = config.curves;
  std::sort(curves.begin(), curves.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  json jc = json::array();
  for (const auto& c : curves) {
    jc.push_back({{"id", c.id},
                  {"self_int", c.self_int},
                  {"genus", c.genus},
                  {"mult", c.mult},
                  {"is_branch", c.is_branch},
                  {"sigma_mark", sigma_to_json(c.sigma)}});
  }

  auto edges = config.edges;
  for (auto& e : edges) {
    if (e.b < e.a) std::swap(e.a, e.b);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::make_tuple(x.a, x.b, x.point.value_or(""), x.local_mult) <
           std::make_tuple(y.a, y.b, y.point.value_or(""), y.local_mult);
  });
  json je = json::array();
  for (const auto& e : edges) {
    je.push_back({{"a", e.a},
                  {"b", e.b},
                  {"local_mult", e.local_mult},
                  {"point", e.point ? json(*e.point) : json(nullptr)}});
  }

  auto points = config.points;
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  json jp = json::array();
  for (const auto& pt : points) {
    json branches = json::array();
    for (const auto& b : pt.branches) branches.push_back({{"curve", b.curve}, {"mult", b.mult}});
    json contacts = json::array();
    for (const auto& [key, order] : pt.contacts) {
      contacts.push_back({{"pair", {key.first, key.second}}, {"order", order}});
    }
    jp.push_back({{"id", pt.id}, {"branches", branches}, {"contacts", contacts}});
  }

  const auto& l = config.ledger;
  return {{"curves", jc},
          {"edges", je},
          {"points", jp},
          {"ledger",
           {{"k_squared", l.k_squared}, {"rho", l.rho}, {"euler", l.euler}, {"rational", l.rational_surface}}}};
}

Config config_from_json(const json& doc) {
  try {
    Config c;
    for (const auto& jc : doc.at("curves")) {
      CurveNode n;
      n.id = jc.at("id").get<std::string>();
      n.self_int = jc.at("self_int").get<int>();
      n.genus = jc.value("genus", 0);
      n.mult = jc.value("mult", 1);
      n.is_branch = jc.value("is_branch", false);
      if (jc.contains("sigma_mark")) n.sigma = sigma_from_json(jc.at("sigma_mark"));
      c.add_curve(std::move(n));
    }
    for (const auto& jp : doc.value("points", json::array())) {
      MarkedPoint pt;
      pt.id = jp.at("id").get<std::string>();
      for (const auto& jb : jp.at("branches")) {
        pt.branches.push_back({jb.at("curve").get<std::string>(), jb.value("mult", 1)});
      }
      for (const auto& jo : jp.value("contacts", json::array())) {
        auto pair = jo.at("pair");
        pt.set_contact(pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>(),
                       jo.at("order").get<int>());
      }
      c.add_point(std::move(pt));
    }
    for (const auto& je : doc.value("edges", json::array())) {
      if (je.contains("point") && !je.at("point").is_null()) continue;  // derived from points
      c.add_unlocated_edge(je.at("a").get<std::string>(), je.at("b").get<std::string>(),
                           je.value("local_mult", 1));
    }
    if (doc.contains("ledger")) {
      const auto& jl = doc.at("ledger");
      c.ledger.k_squared = jl.at("k_squared").get<int>();
      c.ledger.rho = jl.at("rho").get<int>();
      c.ledger.euler = jl.at("euler").get<int>();
      c.ledger.rational_surface = jl.value("rational", false);
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("config JSON: ") + e.what());
  }
}

std::string to_dot(const Config& config) {
  auto curves = config.curves;
  std::sort(curves.begin(), curves.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::ostringstream out;
  out << "graph config {\n";
  for (const auto& c : curves) {
    out << "  \"" << c.id << "\" [label=\"" << c.self_int << "/" << c.mult << "\"";
    if (c.is_branch) out << ", shape=doublecircle";
    else if (c.sigma.kind == SigmaKind::fixed) out << ", shape=box";
    out << "];\n";
  }
  auto edges = config.edges;
  for (auto& e : edges) {
    if (e.b < e.a) std::swap(e.a, e.b);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::make_tuple(x.a, x.b, x.point.value_or(""), x.local_mult) <
           std::make_tuple(y.a, y.b, y.point.value_or(""), y.local_mult);
  });
  for (const auto& e : edges) {
    out << "  \"" << e.a << "\" -- \"" << e.b << "\"";
    if (e.local_mult != 1) out << " [label=\"" << e.local_mult << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit(const Config& config, const std::string& format) {
  if (format == "json") return to_json(config).dump(2) + "\n";
  if (format == "dot") return to_dot(config);
  throw Error(ErrorCode::invalid_argument, "unknown format '" + format + "'");
}

}  // namespace k3calc
