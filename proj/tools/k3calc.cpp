// Command-line front end for the k3calc library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "k3calc/birational.hpp"
#include "k3calc/cyclic.hpp"
#include "k3calc/double_cover.hpp"
#include "k3calc/fibration.hpp"
#include "k3calc/scenarios.hpp"
#include "k3calc/serialize.hpp"

using namespace k3calc;
using nlohmann::json;

namespace {

bool trace_enabled() {
  const char* v = std::getenv("K3CALC_TRACE");
  return v && std::string(v) == "1";
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_summary(const ScenarioReport& r) {
  int failed = 0;
  for (const auto& e : r.checks) {
    if (e.pass) continue;
    ++failed;
    std::cout << "  FAIL " << e.name << ": expected " << e.expected.dump() << ", got " << e.actual.dump() << "\n";
  }
  std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks.size() - failed << "/"
            << r.checks.size() << " expectations)\n";
}

void write_dot(const ScenarioReport& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [key, config] : r.artifacts) {
    std::string file;
    for (char c : r.name + "_" + key) file.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    std::ofstream(std::filesystem::path(dir) / (file + ".dot")) << emit(config, "dot");
  }
}

json resolve_json(const BrieskornType& t) {
  Config chain;
  auto w = hj_expand(t.q, t.q1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    chain.add_curve({"B" + std::to_string(i + 1), -w[i], 0, 1, false, {}});
    if (i > 0) chain.connect("B" + std::to_string(i), "B" + std::to_string(i + 1));
  }
  auto d = discrepancies(chain);
  json disc = json::array();
  for (const auto& v : d.values) disc.push_back(v.str());
  return {{"type", t.to_string()},   {"q", t.q},
          {"q1", t.q1},              {"weights", w},
          {"discrepancies", disc},   {"log_terminal", d.log_terminal},
          {"cartier_index", cartier_index(chain)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k3calc: dual-graph bookkeeping for K3 double covers of rational surfaces"};
  app.require_subcommand(1);
  int exit_code = 0;
  const RunOptions base{Mutation::none, trace_enabled()};

  auto* list = app.add_subcommand("list", "List registered scenarios");

  std::string scenario, dot_dir, mutation = "none";
  bool as_json = false;
  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("scenario", scenario, "Scenario name, e.g. lemma2_4a(1,9)")->required();
  run->add_flag("--json", as_json, "Print the report as JSON");
  run->add_option("--dot", dot_dir, "Write every artifact as DOT into this directory");
  run->add_option("--mutation", mutation, "none, drop_blowup or move_branch");

  bool verify_json = false;
  auto* verify = app.add_subcommand("verify-paper", "Run every registered scenario");
  verify->add_flag("--json", verify_json, "Print all reports as JSON");

  std::string singularity;
  auto* resolve = app.add_subcommand("resolve", "Minimal resolution of a cyclic quotient C_{q,q1}");
  resolve->add_option("type", singularity, "C_{q,q1}")->required();

  auto* fibers = app.add_subcommand("fibers", "Fiber tables and preparation");
  fibers->require_subcommand(1);
  int euler = 12, max_rank = 8;
  auto* enumerate = fibers->add_subcommand("enumerate", "Singular-fiber multisets passing the necessary conditions");
  enumerate->add_option("--euler", euler, "Euler sum");
  enumerate->add_option("--max-rank", max_rank, "Bound on the sum of (components - 1)");
  auto* pairs = fibers->add_subcommand("pairs", "Admissible (n1, n2) for two prepared I-fibers");
  std::string fiber_type;
  auto* prepare = fibers->add_subcommand("prepare", "Blow a fiber up into its branch shape");
  prepare->add_option("type", fiber_type, "II, III, IV or I_n")->required();

  std::string cover_scenario, input, branch_list, split_list, nonsplit_list;
  std::vector<std::string> fiber_decls;
  auto* cover = app.add_subcommand("cover", "Canonical resolution of a double cover");
  cover->add_option("--scenario", cover_scenario, "Take S and the branch locus from a scenario");
  cover->add_option("--input", input, "Config JSON of S");
  cover->add_option("--branch", branch_list, "Comma-separated branch curve ids");
  cover->add_option("--fiber", fiber_decls, "name:case:id,id,... (case as alpha, delta(5), ...)");
  cover->add_option("--split", split_list, "Comma-separated curves whose pullback splits");
  cover->add_option("--nonsplit", nonsplit_list, "Comma-separated curves whose pullback is irreducible");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& s : list_scenarios()) std::cout << s.name << "\t" << s.description << "\n";
    } else if (*run) {
      RunOptions opt = base;
      opt.mutation = parse_mutation(mutation);
      auto r = run_scenario(scenario, opt);
      if (as_json) {
        std::cout << to_json(r).dump(2) << "\n";
      } else {
        print_summary(r);
      }
      if (opt.trace) {
        for (const auto& n : r.notes) std::cerr << "trace: " << n << "\n";
      }
      if (!dot_dir.empty()) write_dot(r, dot_dir);
      exit_code = r.passed() ? 0 : 1;
    } else if (*verify) {
      json all = json::array();
      int failed = 0, total = 0;
      for (const auto& s : list_scenarios()) {
        auto r = run_scenario(s.name, base);
        ++total;
        if (!r.passed()) ++failed;
        if (verify_json) {
          all.push_back(to_json(r));
        } else {
          print_summary(r);
        }
      }
      if (verify_json) {
        std::cout << all.dump(2) << "\n";
      } else {
        std::cout << total - failed << "/" << total << " scenarios passed\n";
      }
      exit_code = failed == 0 ? 0 : 1;
    } else if (*resolve) {
      std::cout << resolve_json(BrieskornType::parse(singularity)).dump(2) << "\n";
    } else if (*fibers) {
      if (*enumerate) {
        json out = json::array();
        for (const auto& c : enumerate_configurations(euler, max_rank)) {
          json row = json::array();
          for (const auto& t : c) row.push_back(t.to_string());
          out.push_back(row);
        }
        std::cout << out.dump(2) << "\n";
      } else if (*pairs) {
        json out = json::array();
        for (auto [a, b] : enumerate_pairs()) out.push_back({a, b});
        std::cout << out.dump() << "\n";
      } else if (*prepare) {
        auto p = k3calc::prepare_fiber(KodairaType::parse(fiber_type));
        json out{{"case", p.cover_case.to_string()}, {"blow_ups", p.blow_ups}, {"config", to_json(p.config)}};
        std::cout << out.dump(2) << "\n";
      }
    } else if (*cover) {
      CoverRequest req;
      if (!cover_scenario.empty()) {
        auto r = run_scenario(cover_scenario, base);
        const Config* x = r.artifact("X");
        if (!x) throw Error(ErrorCode::invalid_argument, "scenario '" + cover_scenario + "' builds no cover");
        json out{{"upstairs", to_json(*x)}, {"report", to_json(r)}};
        std::cout << out.dump(2) << "\n";
        exit_code = r.passed() ? 0 : 1;
      } else {
        if (input.empty()) throw Error(ErrorCode::invalid_argument, "cover needs --scenario or --input");
        std::ifstream in(input);
        if (!in) throw Error(ErrorCode::invalid_argument, "cannot read '" + input + "'");
        Config s = config_from_json(json::parse(in));
        if (!branch_list.empty()) {
          for (auto& c : s.curves) c.is_branch = false;
          for (const auto& id : split(branch_list, ',')) s.curve(id).is_branch = true;
        }
        req.branch = BranchData::from_flags(s);
        for (const auto& decl : fiber_decls) {
          auto parts = split(decl, ':');
          if (parts.size() != 3) throw Error(ErrorCode::parse_error, "bad --fiber '" + decl + "'");
          req.fibers.push_back({parts[0], split(parts[2], ','), CoverCase::parse(parts[1])});
        }
        for (const auto& id : split(split_list, ',')) req.annotations[id] = CoverRule::split;
        for (const auto& id : split(nonsplit_list, ',')) req.annotations[id] = CoverRule::non_split;
        auto res = canonical_resolution(req);
        const auto& rep = res.report;
        json fibers_out = json::array();
        for (const auto& f : rep.fibers) {
          fibers_out.push_back({{"name", f.name},
                                {"case", f.cover_case.to_string()},
                                {"kodaira", f.kodaira.to_string()},
                                {"pullback_coefficient", f.pullback_coefficient}});
        }
        json out{{"upstairs", to_json(res.upstairs)},
                 {"report",
                  {{"euler_downstairs", rep.euler_downstairs},
                   {"euler_branch", rep.euler_branch},
                   {"euler_upstairs", rep.euler_upstairs},
                   {"relation", rep.branch.relation},
                   {"k3_check", k3_check(rep)},
                   {"enriques_case", rep.enriques_case},
                   {"fixed_locus", {{"m", rep.fixed.m}, {"genera", rep.fixed.genera}}},
                   {"rule_violations", rep.rule_violations},
                   {"fibers", fibers_out}}}};
        if (rep.enriques_case) out["report"]["note"] = "Enriques case, out of numeric scope";
        std::cout << out.dump(2) << "\n";
        exit_code = k3_check(rep) ? 0 : 1;
      }
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
