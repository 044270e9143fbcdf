#include "k3calc/gram.hpp"

#include <algorithm>

namespace k3calc {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorCode::invalid_argument, "ragged matrix literal");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

bool IntMatrix::symmetric() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

std::size_t GramMatrix::index_of(const CurveId& id) const {
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) throw Error(ErrorCode::unknown_id, "curve '" + id + "' not in matrix");
  return static_cast<std::size_t>(it - ids.begin());
}

GramMatrix intersection_matrix(const Config& config) {
  GramMatrix g;
  g.ids = config.curve_ids();
  const std::size_t n = g.ids.size();
  g.matrix = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) g.matrix(i, i) = config.curves[i].self_int;
  for (const auto& e : config.edges) {
    if (e.a == e.b) continue;
    auto i = g.index_of(e.a);
    auto j = g.index_of(e.b);
    g.matrix(i, j) += e.local_mult;
    g.matrix(j, i) += e.local_mult;
  }
  return g;
}

namespace {

std::vector<std::vector<BigInt>> to_big(const IntMatrix& m) {
  std::vector<std::vector<BigInt>> a(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  }
  return a;
}

}  // namespace

bool is_negative_definite(const IntMatrix& m) {
  if (!m.symmetric()) {
    throw Error(ErrorCode::not_symmetric, "negative-definiteness needs a symmetric matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return true;
  // Bareiss without pivoting: after step k the pivot a[k][k] equals the
  // (k+1)-th leading principal minor. A zero minor already rules out
  // definiteness, so no pivoting is ever needed.
  auto a = to_big(m);
  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const BigInt& minor = a[k][k];
    bool want_negative = (k % 2 == 0);
    if (minor == 0 || (minor < 0) != want_negative) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return true;
}

BigInt gram_determinant(const IntMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::invalid_argument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  auto a = to_big(m);
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

BigInt discriminant(const IntMatrix& m) {
  BigInt d = gram_determinant(m);
  return d < 0 ? BigInt(-d) : d;
}

std::vector<Rational> solve_exact(const IntMatrix& m, const std::vector<Rational>& rhs) {
  if (!m.square() || rhs.size() != m.rows()) {
    throw Error(ErrorCode::invalid_argument, "solve_exact: dimension mismatch");
  }
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n] = rhs[i];
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k] == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::invalid_argument, "solve_exact: singular matrix");
    std::swap(a[k], a[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j <= n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

}  // namespace k3calc
