#pragma once

#include <cstdint>
#include <string_view>

namespace qsp {

// Analytic CNOT counts for the four-phase low-rank preparation circuit.
// Values are real: the isometry and unitary terms carry 1/24 and 4/3
// fractions that are kept unrounded. Every term is a multiple of 1/96, so
// the exact value is also carried as an integer count of 1/96 units.

inline constexpr std::int64_t kCostDenominator = 96;

enum class CostRegime { IsoEven, IsoOdd, UniEven, UniOdd };

std::string_view to_string(CostRegime r);

struct CostEstimate {
  double phase1 = 0;
  double phase2 = 0;
  double phase34 = 0;
  double total = 0;
  std::int64_t total_x96 = 0;  // exact: total == total_x96 / 96
  CostRegime regime = CostRegime::IsoEven;
  int k = 0;
};

/// floor(n/2): the size of the smaller register.
int half_width(int n);

CostEstimate lrsp_estimate(int n, int m);

/// Large-n upper bound from the summary table.
double table1_bound(int n, int m);
/// Exact bound in 1/96 units.
std::int64_t table1_bound_x96(int n, int m);

/// sum_{j=1}^{floor(n/2)} C(n, j); counts complementary halves twice for even n.
std::int64_t bipartition_count(int n);

/// 2^q - q - 1.
std::int64_t baseline_sp_count(int q);

}  // namespace qsp
