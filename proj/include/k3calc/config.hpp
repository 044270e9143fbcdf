#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3calc/error.hpp"

namespace k3calc {

using CurveId = std::string;
using PointId = std::string;

enum class SigmaKind { unmarked, fixed, stable_not_fixed, swapped };

/// How the covering involution acts on a curve.
struct SigmaMark {
  SigmaKind kind = SigmaKind::unmarked;
  CurveId partner;  // only meaningful for swapped

  static SigmaMark fixed() { return {SigmaKind::fixed, {}}; }
  static SigmaMark stable() { return {SigmaKind::stable_not_fixed, {}}; }
  static SigmaMark swapped(CurveId partner) {
    return {SigmaKind::swapped, std::move(partner)};
  }

  friend bool operator==(const SigmaMark&, const SigmaMark&) = default;
};

std::string to_string(const SigmaMark& mark);

/// One irreducible curve. `genus` is the arithmetic genus, so that
/// K.C = 2g - 2 - C^2 holds for singular curves too.
struct CurveNode {
  CurveId id;
  int self_int = 0;
  int genus = 0;
  int mult = 1;
  bool is_branch = false;
  SigmaMark sigma;

  int canonical_degree() const { return 2 * genus - 2 - self_int; }

  friend bool operator==(const CurveNode&, const CurveNode&) = default;
};

/// A local analytic branch of a curve through a marked point.
struct Branch {
  CurveId curve;
  int mult = 1;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// A point of the surface with the branches of curves passing through it.
///
/// Contact orders count shared infinitely-near points: 1 means distinct
/// tangents. A branch of multiplicity m >= 2 is modelled as an ordinary
/// (m, m+1) cusp that becomes smooth after one blow-up and then meets the
/// exceptional curve with contact m. Under that model the local intersection
/// number of two branches is m_i * m_j + contact - 1.
struct MarkedPoint {
  PointId id;
  std::vector<Branch> branches;
  std::map<std::pair<std::size_t, std::size_t>, int> contacts;  // keys i < j

  int contact(std::size_t i, std::size_t j) const;
  void set_contact(std::size_t i, std::size_t j, int order);
  int local_intersection(std::size_t i, std::size_t j) const;
  /// Sum of branch multiplicities of `curve` here (its point multiplicity).
  int multiplicity_of(const CurveId& curve) const;
  bool passes_through(const CurveId& curve) const;
};

struct Edge {
  CurveId a;
  CurveId b;
  int local_mult = 1;
  std::optional<PointId> point;

  bool joins(const CurveId& x, const CurveId& y) const {
    return (a == x && b == y) || (a == y && b == x);
  }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct InvariantLedger {
  int k_squared = 0;
  int rho = 1;
  int euler = 0;
  bool rational_surface = false;

  static InvariantLedger rational(int k_squared) {
    return {k_squared, 10 - k_squared, 12 - k_squared, true};
  }

  void record_blow_up() {
    k_squared -= 1;
    rho += 1;
    euler += 1;
  }
  void record_blow_down() {
    k_squared += 1;
    rho -= 1;
    euler -= 1;
  }
  /// rational_surface implies Noether's formula and rho = 10 - K^2.
  bool consistent() const {
    return !rational_surface ||
           (rho == 10 - k_squared && euler == 12 - k_squared);
  }

  friend bool operator==(const InvariantLedger&, const InvariantLedger&) = default;
};

/// Weighted dual graph of curves plus marked points and ambient invariants.
///
/// Edges that carry a point id are derived from the marked points and are
/// regenerated whenever points change; edges without a point are
/// "unlocated" intersections supplied directly by the caller.
struct Config {
  std::vector<CurveNode> curves;
  std::vector<Edge> edges;
  std::vector<MarkedPoint> points;
  InvariantLedger ledger;

  bool has_curve(const CurveId& id) const;
  const CurveNode& curve(const CurveId& id) const;
  CurveNode& curve(const CurveId& id);
  bool has_point(const PointId& id) const;
  const MarkedPoint& point(const PointId& id) const;

  CurveId add_curve(CurveNode node);
  /// Adds a point and the edges it induces.
  PointId add_point(MarkedPoint pt);
  /// Two smooth branches of a and b meeting with the given contact order.
  PointId connect(const CurveId& a, const CurveId& b, int contact = 1);
  /// All listed curves through one point, pairwise transversal.
  PointId connect_all(const std::vector<CurveId>& ids);
  PointId add_node(const CurveId& c);
  PointId add_cusp(const CurveId& c);
  PointId add_free_point(const CurveId& c);
  void add_unlocated_edge(const CurveId& a, const CurveId& b, int local_mult);

  void remove_point(const PointId& id);
  void remove_curve(const CurveId& id);
  void rename_curve(const CurveId& from, const CurveId& to);
  /// Copies the curves and points of `other` with every id prefixed.
  /// The ledger of `this` is kept.
  void merge(const Config& other, const std::string& prefix);

  /// Total intersection number of two distinct curves.
  int intersection(const CurveId& a, const CurveId& b) const;
  std::vector<PointId> points_on(const CurveId& c) const;
  std::vector<CurveId> neighbours(const CurveId& c) const;
  std::vector<CurveId> curve_ids() const;
  bool is_connected() const;
  /// Sub-configuration on the given curves (points restricted to them).
  Config restricted_to(const std::vector<CurveId>& ids) const;

  PointId fresh_point_id() const;
  CurveId fresh_curve_id(const std::string& prefix) const;

  /// Regenerates the located edges from the marked points.
  void sync_edges();
  /// Throws Error(invariant_violation) when any structural invariant fails.
  void validate() const;
};

/// Equality up to renaming of marked points.
bool equivalent(const Config& x, const Config& y);

}  // namespace k3calc
