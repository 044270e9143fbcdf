#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3calc/config.hpp"
#include "k3calc/cyclic.hpp"
#include "k3calc/recognize.hpp"

namespace k3calc {

struct BlowUpOptions {
  /// When set, the exceptional curve gets the multiplicity it has in the
  /// total transform of the divisor sum(mult * C); otherwise 1.
  bool total_transform = true;
  /// Curves making up the tracked divisor; unset means every curve.
  std::optional<std::set<CurveId>> divisor;
  std::optional<CurveId> new_id;
};

struct BlowUpRecord {
  PointId point_id;
  CurveId new_curve_id;
  int multiplicity_assigned = 1;
};

struct BlowUpResult {
  Config config;
  BlowUpRecord record;
};

/// Blows up one marked point. Branches sharing tangents (contact >= 2) stay
/// together on one point of the exceptional curve with contact lowered by
/// one; all others separate. A singular branch must be an ordinary cusp
/// transversal to every other branch.
BlowUpResult blow_up_recorded(const Config& config, const PointId& point,
                              const BlowUpOptions& options = {});
Config blow_up(const Config& config, const PointId& point, const BlowUpOptions& options = {});

/// Inverse of blow_up. Throws Error(not_contractible) unless `curve` is a
/// smooth rational (-1)-curve whose intersections are all located.
Config blow_down(const Config& config, const CurveId& curve);

struct ContractionOptions {
  bool rightmost_first = false;
  bool record_trace = false;
};

struct ContractionResult {
  enum class Kind { smooth, du_val, cyclic };

  Config config;  // smooth model after blow-downs, chain curves removed
  Kind kind = Kind::smooth;
  std::vector<int> weights;       // remaining chain, negated self-intersections
  BrieskornType brieskorn;        // meaningful unless kind == smooth
  DynkinLabel dynkin;             // A_k when kind == du_val
  int blow_downs = 0;
  int removed_classes = 0;
  std::vector<CurveId> removed;
  int rho_singular = 0;           // rho of the smooth model minus removed classes
  Rational k_squared_singular;
  std::vector<Config> trace;

  std::string label() const;      // "smooth point", "A_8" or "C_{40,19}"
};

/// Blows down (-1)-curves inside a linear chain of rational curves until
/// none is left, then contracts what remains to one point.
ContractionResult contract_chain(const Config& config, const std::vector<CurveId>& chain,
                                 const ContractionOptions& options = {});

/// The marked point whose branches are exactly one branch of a and one of b.
std::optional<PointId> point_joining(const Config& config, const CurveId& a, const CurveId& b);

}  // namespace k3calc
