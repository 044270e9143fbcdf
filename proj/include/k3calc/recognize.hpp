#pragma once

#include <string>

#include "k3calc/config.hpp"

namespace k3calc {

struct DynkinLabel {
  enum class Family { A, D, E, none };
  Family family = Family::none;
  int rank = 0;

  static DynkinLabel none() { return {}; }
  bool is_none() const { return family == Family::none; }
  std::string to_string() const;  // "A_8", "D_4", "E_6", "none"

  friend bool operator==(const DynkinLabel&, const DynkinLabel&) = default;
};

/// Kodaira fiber type. I_0 stands for a smooth elliptic fiber.
struct KodairaType {
  enum class Kind { I, I_star, II, III, IV, IV_star, III_star, II_star, none };
  Kind kind = Kind::none;
  int n = 0;  // index for I_n and I_n*

  static KodairaType I(int n) { return {Kind::I, n}; }
  static KodairaType I_star(int n) { return {Kind::I_star, n}; }
  static KodairaType of(Kind k) { return {k, 0}; }
  static KodairaType none() { return {}; }
  /// Accepts "I_9", "I9", "I_0*", "I0*", "II", "III", "IV", "IV*", "III*",
  /// "II*" and "smooth". Throws Error(parse_error).
  static KodairaType parse(const std::string& text);

  bool is_none() const { return kind == Kind::none; }
  bool is_smooth() const { return kind == Kind::I && n == 0; }
  std::string to_string() const;

  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

/// ADE label of a connected configuration of smooth rational (-2)-curves
/// meeting transversally in a Dynkin tree; none otherwise.
/// Throws Error(disconnected) for disconnected input.
DynkinLabel dynkin_type(const Config& config);

/// Kodaira type read off the dual graph, contact data and multiplicities.
/// Returns none on any mismatch, including disconnected input.
KodairaType kodaira_type(const Config& config);

}  // namespace k3calc
