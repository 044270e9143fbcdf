#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "k3calc/config.hpp"
#include "k3calc/recognize.hpp"

namespace k3calc {

/// How a curve pulls back under the double cover.
enum class CoverRule {
  branch,     // pi^*D = 2C, C fixed by the involution
  non_split,  // one curve G, stable but not fixed
  split,      // two curves G + G' exchanged by the involution
};

/// Downstairs fiber shapes with their monodromy data. alpha..delta carry
/// branch (-4)-curves; epsilon is an I_s fiber (smooth when s = 0) away
/// from the branch locus.
struct CoverCase {
  enum class Label { alpha, beta, gamma, delta, epsilon };
  Label label = Label::alpha;
  int n = 0;  // loop length for delta, s for epsilon

  static CoverCase alpha() { return {Label::alpha, 0}; }
  static CoverCase beta() { return {Label::beta, 0}; }
  static CoverCase gamma() { return {Label::gamma, 0}; }
  static CoverCase delta(int n) { return {Label::delta, n}; }
  static CoverCase epsilon(int s) { return {Label::epsilon, s}; }
  /// "alpha", "beta", "gamma", "delta(5)", "epsilon(1)".
  static CoverCase parse(const std::string& text);

  std::string to_string() const;
  KodairaType upstairs_type() const;

  friend bool operator==(const CoverCase&, const CoverCase&) = default;
};

struct BranchData {
  Config config;
  std::vector<CurveId> branch_ids;

  /// Uses the is_branch flags of `config`.
  static BranchData from_flags(const Config& config);
};

struct BranchReport {
  bool ok = true;
  std::vector<std::string> violations;
  int k_squared = 0;
  int k_dot_b = 0;
  int b_squared = 0;
  int relation = 0;  // 4K^2 + 4K.B + B^2
  std::vector<CurveId> anticanonical_failures;  // curves with (2K + B).C != 0
};

BranchReport validate_branch(const BranchData& bd);

/// Curve-by-curve pullback. Points on the branch locus have one preimage,
/// the others two ("<id>+" and "<id>-"). For split curves the sheet of each
/// branch at an off-branch point is straight unless (point, branch index)
/// is listed in `crossings`. Multiplicities are raw pullback coefficients.
Config pullback(const Config& downstairs, const std::map<CurveId, CoverRule>& rules,
                const std::set<std::pair<PointId, std::size_t>>& crossings = {});

/// Upstairs ids of a downstairs curve under a rule.
std::vector<CurveId> upstairs_ids(const CurveId& id, CoverRule rule);

/// Throws Error(shape_mismatch) unless the fiber (with branch flags set)
/// has the shape the case describes.
void check_case_shape(const Config& fiber, const CoverCase& cover_case);
std::map<CurveId, CoverRule> case_rules(const Config& fiber, const CoverCase& cover_case);
std::set<std::pair<PointId, std::size_t>> case_crossings(const Config& fiber, const CoverCase& cover_case);

/// Pulls back one fiber; multiplicities are divided by their gcd so the
/// output is a primitive fiber.
Config pullback_fiber(const Config& fiber, const CoverCase& cover_case);

struct FiberDecl {
  std::string name;
  std::vector<CurveId> curves;
  CoverCase cover_case;
};

struct CoverRequest {
  BranchData branch;
  std::vector<FiberDecl> fibers;
  /// Rules for curves that are neither branch nor inside a declared fiber.
  std::map<CurveId, CoverRule> annotations;
};

struct UpstairsFiber {
  std::string name;
  CoverCase cover_case;
  std::vector<CurveId> curves;
  KodairaType kodaira;
  int pullback_coefficient = 1;  // pi^* F = coefficient * (upstairs fiber)
};

struct FixedLocusSummary {
  int m = 0;
  std::vector<int> genera;  // sorted
};

struct CoverReport {
  BranchReport branch;
  int euler_downstairs = 0;
  int euler_branch = 0;
  int euler_upstairs = 0;
  int twice_k_squared_upstairs = 0;  // 4K^2 + 4K.B + B^2 = 2 K_X^2
  int rho_lower_bound = 0;
  bool enriques_case = false;
  std::vector<UpstairsFiber> fibers;
  FixedLocusSummary fixed;
  std::vector<std::string> rule_violations;
};

struct CoverResult {
  Config upstairs;
  CoverReport report;
};

/// Throws Error(invariant_violation) if the branch data is invalid and
/// Error(invalid_argument) if some curve has no rule.
CoverResult canonical_resolution(const CoverRequest& request);

bool k3_check(const CoverReport& report);

/// Throws Error(invariant_violation) if two fixed curves meet.
FixedLocusSummary fixed_locus_summary(const Config& upstairs);

/// Local rules for the fixed locus: fixed curves are disjoint and every
/// stable rational curve that is not fixed meets the fixed locus in total
/// multiplicity exactly two.
std::vector<std::string> fixed_locus_rule_violations(const Config& upstairs);

}  // namespace k3calc
