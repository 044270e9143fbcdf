#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "k3calc/config.hpp"

namespace k3calc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool symmetric() const;

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Intersection matrix together with the curve order of its rows.
struct GramMatrix {
  std::vector<CurveId> ids;
  IntMatrix matrix;

  std::size_t index_of(const CurveId& id) const;
};

GramMatrix intersection_matrix(const Config& config);

/// Exact test: the k-th leading principal minor has sign (-1)^k for all k.
/// Throws Error(not_symmetric) on non-symmetric input.
bool is_negative_definite(const IntMatrix& m);

/// Exact determinant (fraction-free Bareiss elimination).
BigInt gram_determinant(const IntMatrix& m);

/// |det|, the orientation-free quantity reported as the discriminant.
BigInt discriminant(const IntMatrix& m);

/// Solves m * x = rhs exactly; m must be square and non-singular.
std::vector<Rational> solve_exact(const IntMatrix& m, const std::vector<Rational>& rhs);

}  // namespace k3calc
