#include "qsp/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsp/errors.hpp"

namespace qsp {
namespace {

int log2_exact(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw InvalidInput("amplitude count must be a power of two >= 2, got " + std::to_string(dim));
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

}  // namespace

StateVector::StateVector(CVector amplitudes, double tol) : amps_(std::move(amplitudes)) {
  n_ = log2_exact(static_cast<std::size_t>(amps_.size()));
  if (!amps_.allFinite()) throw InvalidInput("state has non-finite amplitudes");
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol) {
    throw InvalidInput("state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
  }
}

StateVector StateVector::normalized(CVector amplitudes) {
  if (!amplitudes.allFinite()) throw InvalidInput("state has non-finite amplitudes");
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw InvalidInput("cannot normalize the zero vector");
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  if (n < 1 || n > 30) throw InvalidInput("qubit count out of range");
  const auto dim = Eigen::Index{1} << n;
  if (index >= static_cast<std::uint64_t>(dim)) throw InvalidInput("basis index out of range");
  CVector v = CVector::Zero(dim);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amps_(static_cast<Eigen::Index>(i)));
  return p;
}

Bipartition::Bipartition(std::vector<int> a, std::vector<int> b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty() || b_.empty()) throw InvalidInput("bipartition sides must be nonempty");
  const int n = num_qubits();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto* side : {&a_, &b_}) {
    for (int q : *side) {
      if (q < 0 || q >= n) throw InvalidInput("bipartition qubit index out of range");
      if (seen[static_cast<std::size_t>(q)]) throw InvalidInput("bipartition sides overlap");
      seen[static_cast<std::size_t>(q)] = true;
    }
  }
}

Bipartition Bipartition::half_split(int n) {
  if (n < 2) throw InvalidInput("half split needs at least 2 qubits");
  std::vector<int> a, b;
  for (int q = 0; q < n; ++q) (q < n / 2 ? a : b).push_back(q);
  return Bipartition(std::move(a), std::move(b));
}

Bipartition Bipartition::from_subset(int n, std::vector<int> a) {
  std::sort(a.begin(), a.end());
  std::vector<int> b;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(a.begin(), a.end(), q)) b.push_back(q);
  }
  return Bipartition(std::move(a), std::move(b));
}

}  // namespace qsp
