#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "qsp/random.hpp"
#include "qsp/state.hpp"

namespace qsp::test {

inline StateVector bell() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return StateVector(v);
}

inline StateVector ghz3() {
  CVector v = CVector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return StateVector(v);
}

inline StateVector w3() {
  CVector v = CVector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return StateVector(v);
}

// Kronecker product, `a` on the more significant qubits.
inline CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  }
  return out;
}

// Distance between two states modulo a global phase.
inline double phase_distance(const CVector& a, const CVector& b) {
  const Complex overlap = b.dot(a);
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a - phase * b).norm();
}

// Applies a 2x2 matrix to qubit q of an n-qubit vector by building the full
// Kronecker operator (independent of the simulator's stride loops).
inline CVector apply_local(const CMatrix& u2, int q, const CVector& v) {
  const int n = static_cast<int>(std::log2(static_cast<double>(v.size())) + 0.5);
  CMatrix op = CMatrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    const CMatrix f = k == q ? u2 : CMatrix::Identity(2, 2);
    CMatrix next(op.rows() * 2, op.cols() * 2);
    for (Eigen::Index i = 0; i < op.rows(); ++i)
      for (Eigen::Index j = 0; j < op.cols(); ++j) next.block(i * 2, j * 2, 2, 2) = op(i, j) * f;
    op = std::move(next);
  }
  return op * v;
}

// Nonempty proper subsets of {0..n-1} with size <= n/2.
inline std::vector<std::vector<int>> small_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask + 1 < (1U << n); ++mask) {
    std::vector<int> s;
    for (int q = 0; q < n; ++q)
      if (mask & (1U << q)) s.push_back(q);
    if (2 * s.size() <= static_cast<std::size_t>(n)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace qsp::test
