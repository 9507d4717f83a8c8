#pragma once

#include "qsp/schmidt.hpp"
#include "qsp/state.hpp"

namespace qsp {

struct MeasureReport {
  double purity = 1.0;
  int schmidt_rank = 1;
  double schmidt_measure = 0.0;  // e-bits
  int m_qubits = 0;
  double meyer_wallach = 0.0;
};

/// Purity of either reduced state, sum of sigma^4. Requires sum sigma^2 = 1 +- 1e-8.
double purity_from_sigma(const Eigen::VectorXd& sigma);

/// log2(rank), in e-bits.
double schmidt_measure(int rank);

/// ceil(log2(rank)); 0 for rank 1.
int m_of(int rank);

/// Meyer-Wallach Q = 2(1 - mean single-qubit purity). Needs n >= 2.
double meyer_wallach(const StateVector& psi);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

MeasureReport measure(const StateVector& psi, const Bipartition& bp, double tol = kDefaultRankTolerance);

}  // namespace qsp
