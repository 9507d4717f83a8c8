#include "qsp/cost_model.hpp"

#include "qsp/errors.hpp"

namespace qsp {
namespace {

constexpr int kMaxModelQubits = 40;

void check_args(int n, int m) {
  if (n < 2) throw InvalidInput("cost model needs n >= 2");
  if (n > kMaxModelQubits) throw InvalidInput("cost model n out of range");
  if (m < 0 || m > half_width(n)) throw InvalidInput("m must satisfy 0 <= m <= floor(n/2)");
}

std::int64_t p2(int e) { return std::int64_t{1} << e; }

// Everything below is in 1/96 units.
std::int64_t prep_x96(int q) { return 96 * (p2(q) - q - 1); }
std::int64_t isometry_x96(int m, int q) { return 96 * p2(m + q) - 4 * p2(q); }
std::int64_t unitary_x96(int q) { return 46 * p2(2 * q) - 144 * p2(q) + 128; }

double as_real(std::int64_t x96) { return static_cast<double>(x96) / kCostDenominator; }

}  // namespace

std::string_view to_string(CostRegime r) {
  switch (r) {
    case CostRegime::IsoEven: return "iso-even";
    case CostRegime::IsoOdd: return "iso-odd";
    case CostRegime::UniEven: return "uni-even";
    case CostRegime::UniOdd: return "uni-odd";
  }
  return "?";
}

int half_width(int n) { return n / 2; }

CostEstimate lrsp_estimate(int n, int m) {
  check_args(n, m);
  const int k = half_width(n);
  const bool even = n % 2 == 0;
  std::int64_t p1 = 0, p2_ = 0, p34 = 0;
  CostEstimate e;
  e.k = k;
  if (m < k) {
    p1 = prep_x96(m);
    p2_ = 96 * m;
    e.regime = even ? CostRegime::IsoEven : CostRegime::IsoOdd;
    p34 = even ? 2 * isometry_x96(m, k) : isometry_x96(m, k) + isometry_x96(m, k + 1);
  } else {
    p1 = prep_x96(k);
    p2_ = 96 * k;
    e.regime = even ? CostRegime::UniEven : CostRegime::UniOdd;
    p34 = even ? 2 * unitary_x96(k) : unitary_x96(k) + unitary_x96(k + 1);
  }
  e.phase1 = as_real(p1);
  e.phase2 = as_real(p2_);
  e.phase34 = as_real(p34);
  e.total_x96 = p1 + p2_ + p34;
  e.total = as_real(e.total_x96);
  return e;
}

std::int64_t table1_bound_x96(int n, int m) {
  check_args(n, m);
  const int k = half_width(n);
  const bool even = n % 2 == 0;
  if (m < k) {
    return even ? 2 * p2(n / 2) * (96 * p2(m) - 4) : 3 * p2((n - 1) / 2) * (96 * p2(m) - 4);
  }
  return even ? 92 * p2(n) : 115 * p2(n);
}

double table1_bound(int n, int m) { return as_real(table1_bound_x96(n, m)); }

std::int64_t bipartition_count(int n) {
  if (n < 2) throw InvalidInput("bipartition count needs n >= 2");
  if (n > 62) throw InvalidInput("bipartition count n out of range");
  std::int64_t total = 0;
  std::int64_t binom = 1;
  for (int j = 1; j <= n / 2; ++j) {
    binom = binom * (n - j + 1) / j;
    total += binom;
  }
  return total;
}

std::int64_t baseline_sp_count(int q) {
  if (q < 1 || q > 62) throw InvalidInput("qubit count out of range");
  return (std::int64_t{1} << q) - q - 1;
}

}  // namespace qsp
