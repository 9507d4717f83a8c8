#include "qsp/measures.hpp"

#include <algorithm>
#include <cmath>

#include "qsp/errors.hpp"

namespace qsp {

double purity_from_sigma(const Eigen::VectorXd& sigma) {
  if (sigma.size() == 0) throw InvalidInput("empty Schmidt spectrum");
  if (std::abs(sigma.squaredNorm() - 1.0) > 1e-8) throw InvalidInput("Schmidt spectrum is not normalized");
  return sigma.array().pow(4).sum();
}

double schmidt_measure(int rank) {
  if (rank < 1) throw InvalidInput("Schmidt rank must be >= 1");
  return std::log2(static_cast<double>(rank));
}

int m_of(int rank) {
  if (rank < 1) throw InvalidInput("Schmidt rank must be >= 1");
  int m = 0;
  while ((1LL << m) < rank) ++m;
  return m;
}

double meyer_wallach(const StateVector& psi) {
  const int n = psi.num_qubits();
  if (n < 2) throw InvalidInput("Meyer-Wallach measure needs at least 2 qubits");
  double purity_sum = 0.0;
  for (int q = 0; q < n; ++q) {
    const auto sd = schmidt_decompose(psi, Bipartition::from_subset(n, {q}), 0.0);
    purity_sum += sd.sigma.array().pow(4).sum();
  }
  const double q = 2.0 * (1.0 - purity_sum / n);
  return std::clamp(q, 0.0, 1.0);
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw InvalidInput("fidelity of states with different dimensions");
  const double f = std::norm(a.amplitudes().dot(b.amplitudes()));
  return std::min(f, 1.0);
}

MeasureReport measure(const StateVector& psi, const Bipartition& bp, double tol) {
  const auto sd = schmidt_decompose(psi, bp, tol);
  MeasureReport r;
  r.purity = purity_from_sigma(sd.sigma / sd.sigma.norm());
  r.schmidt_rank = sd.rank;
  r.schmidt_measure = schmidt_measure(sd.rank);
  r.m_qubits = m_of(sd.rank);
  r.meyer_wallach = meyer_wallach(psi);
  return r;
}

}  // namespace qsp
