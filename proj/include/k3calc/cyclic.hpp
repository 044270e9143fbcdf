#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "k3calc/config.hpp"
#include "k3calc/gram.hpp"

namespace k3calc {

/// Cyclic quotient singularity C_{q,q1}: its minimal resolution is the
/// Hirzebruch-Jung chain of q/q1, read left to right.
struct BrieskornType {
  std::int64_t q = 2;
  std::int64_t q1 = 1;

  std::vector<int> weights() const;
  std::string to_string() const;  // "C_{40,19}"
  /// Accepts "C_{40,19}", "C_40_19", "C40,19" and "40,19".
  static BrieskornType parse(const std::string& text);

  friend bool operator==(const BrieskornType&, const BrieskornType&) = default;
};

/// One step of the expansion: b = ceil(q/q1) and the remainder pair
/// (q1, b*q1 - q). The expansion stops when the remainder's q1 is 0.
struct HjStep {
  int b;
  std::int64_t q;
  std::int64_t q1;
};
HjStep hj_step(std::int64_t q, std::int64_t q1);

/// Unique expansion q/q1 = b1 - 1/(b2 - 1/(...)) with all b >= 2.
/// Throws Error(invalid_argument) unless 1 <= q1 < q and gcd(q, q1) = 1.
std::vector<int> hj_expand(std::int64_t q, std::int64_t q1);
/// Allocation-free variant; returns the number of weights written.
std::size_t hj_expand_into(std::int64_t q, std::int64_t q1, std::span<int> out);

/// Inverse of hj_expand. Throws Error(invalid_argument) on an empty list or
/// any weight below 2.
BrieskornType hj_contract(const std::vector<int>& weights);
/// Unchecked inner loop used by the exhaustive tests: returns (q, q1).
std::pair<std::int64_t, std::int64_t> hj_contract_raw(std::span<const int> weights);

struct IndexTwoResolution {
  Config minimal;    // chain D1..Dn with weights of (4n, 2n-1)
  Config blown_up;   // every D is a (-4)-curve, H1..H(n-1) the (-1)-curves
};
/// `base` is the ledger of the surface carrying the minimal chain.
IndexTwoResolution index_two_resolution(int n, InvariantLedger base = {});

struct DiscrepancyVector {
  std::vector<CurveId> ids;
  std::vector<Rational> values;
  bool log_terminal = true;  // every value in [0, 1)
};

/// Solves (K + sum a_k B_k).B_t = 0 exactly over all curves of `chain`.
/// Throws Error(invalid_argument) if the configuration is not negative
/// definite.
DiscrepancyVector discrepancies(const Config& chain);
std::int64_t cartier_index(const Config& chain);
/// (sum a_k B_k)^2, so that K^2 of the contracted surface is K^2 minus this.
Rational discrepancy_square(const Config& chain, const DiscrepancyVector& d);

}  // namespace k3calc
