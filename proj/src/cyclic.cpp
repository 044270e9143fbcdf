#include "k3calc/cyclic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <regex>

#include "k3calc/birational.hpp"

namespace k3calc {

namespace {

void check_pair(std::int64_t q, std::int64_t q1) {
  if (q < 2 || q1 < 1 || q1 >= q) {
    throw Error(ErrorCode::invalid_argument, "need 1 <= q1 < q, got (" + std::to_string(q) + "," +
                                                 std::to_string(q1) + ")");
  }
  if (std::gcd(q, q1) != 1) {
    throw Error(ErrorCode::invalid_argument, "q and q1 must be coprime, got (" + std::to_string(q) +
                                                 "," + std::to_string(q1) + ")");
  }
}

}  // namespace

HjStep hj_step(std::int64_t q, std::int64_t q1) {
  std::int64_t b = (q + q1 - 1) / q1;
  return {static_cast<int>(b), q1, b * q1 - q};
}

std::vector<int> hj_expand(std::int64_t q, std::int64_t q1) {
  check_pair(q, q1);
  std::vector<int> out;
  while (q1 != 0) {
    auto s = hj_step(q, q1);
    out.push_back(s.b);
    q = s.q;
    q1 = s.q1;
  }
  return out;
}

std::size_t hj_expand_into(std::int64_t q, std::int64_t q1, std::span<int> out) {
  std::size_t n = 0;
  while (q1 != 0) {
    if (n == out.size()) throw Error(ErrorCode::invalid_argument, "hj_expand_into: buffer too small");
    auto s = hj_step(q, q1);
    out[n++] = s.b;
    q = s.q;
    q1 = s.q1;
  }
  return n;
}

std::pair<std::int64_t, std::int64_t> hj_contract_raw(std::span<const int> weights) {
  std::int64_t p = 1, p1 = 0;
  for (auto it = weights.rbegin(); it != weights.rend(); ++it) {
    std::int64_t next = *it * p - p1;
    p1 = p;
    p = next;
  }
  return {p, p1};
}

BrieskornType hj_contract(const std::vector<int>& weights) {
  if (weights.empty()) throw Error(ErrorCode::invalid_argument, "hj_contract of an empty chain");
  for (int w : weights) {
    if (w < 2) {
      throw Error(ErrorCode::invalid_argument, "hj_contract needs weights >= 2, got " + std::to_string(w));
    }
  }
  auto [q, q1] = hj_contract_raw(weights);
  return {q, q1};
}

std::vector<int> BrieskornType::weights() const { return hj_expand(q, q1); }

std::string BrieskornType::to_string() const {
  return "C_{" + std::to_string(q) + "," + std::to_string(q1) + "}";
}

BrieskornType BrieskornType::parse(const std::string& text) {
  static const std::regex pattern(R"(\s*(?:C_?\{?)?\s*(\d+)\s*[,_]\s*(\d+)\s*\}?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw Error(ErrorCode::parse_error, "cannot read a Brieskorn type from '" + text + "'");
  }
  BrieskornType t{std::stoll(m[1]), std::stoll(m[2])};
  check_pair(t.q, t.q1);
  return t;
}

IndexTwoResolution index_two_resolution(int n, InvariantLedger base) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "index_two_resolution needs n >= 1");
  IndexTwoResolution r;
  r.minimal.ledger = base;
  auto w = hj_expand(4LL * n, 2LL * n - 1);
  for (int i = 0; i < n; ++i) {
    CurveNode c;
    c.id = "D" + std::to_string(i + 1);
    c.self_int = -w[static_cast<std::size_t>(i)];
    r.minimal.add_curve(c);
  }
  for (int i = 1; i < n; ++i) {
    r.minimal.connect("D" + std::to_string(i), "D" + std::to_string(i + 1));
  }
  r.blown_up = r.minimal;
  for (int i = 1; i < n; ++i) {
    auto a = "D" + std::to_string(i);
    auto b = "D" + std::to_string(i + 1);
    auto p = point_joining(r.blown_up, a, b);
    BlowUpOptions opt;
    opt.total_transform = false;
    opt.new_id = "H" + std::to_string(i);
    r.blown_up = blow_up(r.blown_up, *p, opt);
  }
  return r;
}

DiscrepancyVector discrepancies(const Config& chain) {
  auto g = intersection_matrix(chain);
  if (!is_negative_definite(g.matrix)) {
    throw Error(ErrorCode::invalid_argument, "discrepancies need a negative definite configuration");
  }
  std::vector<Rational> rhs;
  for (const auto& c : chain.curves) rhs.emplace_back(-c.canonical_degree());
  DiscrepancyVector d;
  d.ids = g.ids;
  d.values = solve_exact(g.matrix, rhs);
  d.log_terminal = std::all_of(d.values.begin(), d.values.end(),
                               [](const Rational& a) { return a >= 0 && a < 1; });
  return d;
}

std::int64_t cartier_index(const Config& chain) {
  auto d = discrepancies(chain);
  BigInt l = 1;
  for (const auto& a : d.values) {
    BigInt den = boost::multiprecision::denominator(a);
    l = l / boost::multiprecision::gcd(l, den) * den;
  }
  return l.convert_to<std::int64_t>();
}

Rational discrepancy_square(const Config& chain, const DiscrepancyVector& d) {
  auto g = intersection_matrix(chain);
  Rational s = 0;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    for (std::size_t j = 0; j < d.values.size(); ++j) {
      s += d.values[i] * d.values[j] * g.matrix(i, j);
    }
  }
  return s;
}

}  // namespace k3calc
