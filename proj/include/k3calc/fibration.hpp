#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "k3calc/birational.hpp"
#include "k3calc/config.hpp"
#include "k3calc/double_cover.hpp"
#include "k3calc/recognize.hpp"

namespace k3calc {

struct FiberShape {
  KodairaType kodaira;
  int euler = 0;
  int components = 1;
  /// Number of (-4)-curves after preparation: II 1, III 2, IV 4, I_n n.
  /// Zero for types that are never prepared.
  int branch_count = 0;
};

/// Table row; throws Error(invalid_argument) for none or negative indices.
FiberShape fiber_shape(KodairaType type);

struct FiberData {
  FiberShape shape;
  Config reference;  // components F1, F2, ... on a rational elliptic surface
};
FiberData fiber_data(KodairaType type);

bool check_euler_sum(const std::vector<KodairaType>& types, int target = 12);
/// sum(components - 1) <= max_rank.
bool rank_bound_ok(const std::vector<KodairaType>& types, int max_rank = 8);

/// Ordered (n1, n2) with n_i >= 1 and 2 <= n1 + n2 <= 10.
std::vector<std::pair<int, int>> enumerate_pairs();
/// Same set with n1 <= n2.
std::vector<std::pair<int, int>> enumerate_unordered_pairs();

/// Multisets of singular fiber types meeting the Euler-sum and rank
/// conditions. Necessary conditions only.
std::vector<std::vector<KodairaType>> enumerate_configurations(int euler = 12, int max_rank = 8);
/// Configurations used by the constructions, realizable by Persson's list.
std::vector<std::vector<KodairaType>> realizable_fixtures();

struct PrepareOptions {
  /// Stop after this many blow-ups (negative: no limit).
  int max_blow_ups = -1;
};

struct PreparedFiber {
  Config config;
  CoverCase cover_case;
  int blow_ups = 0;
  std::vector<CurveId> curves;  // all components after preparation
  std::vector<BlowUpRecord> records;
};

/// Blows up the fiber whose components are `prefix`F1, `prefix`F2, ... in
/// `config` until it has the alpha/beta/gamma/delta shape. Components are
/// renamed `prefix`D<j> (branch) and `prefix`H<j>.
/// Throws Error(unsupported) for types other than II, III, IV and I_n.
PreparedFiber prepare_fiber_in(const Config& config, const std::string& prefix, KodairaType type,
                               const PrepareOptions& options = {});
PreparedFiber prepare_fiber(KodairaType type, const PrepareOptions& options = {});

/// dim |-2K| = 3 K^2 on a log del Pezzo surface; rejects K^2 <= 0.
int dim_anti_bicanonical(int k_squared);

/// Singular fibers of a rational elliptic fibration plus at most one
/// fiber of multiplicity two.
struct FibrationDescriptor {
  std::vector<KodairaType> singular_fibers;
  std::optional<KodairaType> double_fiber;

  int euler_sum() const;
};

}  // namespace k3calc
