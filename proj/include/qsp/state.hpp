#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qsp {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-10;

// Amplitude index convention is big-endian: qubit 0 is the most significant
// bit of the index.
inline constexpr int bit_of(std::uint64_t index, int qubit, int width) {
  return static_cast<int>((index >> (width - 1 - qubit)) & 1U);
}

/// Normalized amplitude vector over n qubits.
class StateVector {
 public:
  StateVector() = default;

  /// Validates length 2^n and unit norm (within `tol`).
  explicit StateVector(CVector amplitudes, double tol = kNormTolerance);

  /// Rescales to unit norm. Rejects zero vectors.
  static StateVector normalized(CVector amplitudes);
  static StateVector basis(int n, std::uint64_t index);
  static StateVector zero(int n) { return basis(n, 0); }

  int num_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  /// |a_x|^2 for every basis index.
  std::vector<double> probabilities() const;

 private:
  int n_ = 0;
  CVector amps_;
};

/// Two-set split of qubit indices. Indices inside each set are kept in the
/// order given; reshaping follows that order.
class Bipartition {
 public:
  Bipartition() = default;

  /// Validates that `a` and `b` are nonempty, disjoint and cover 0..n-1.
  Bipartition(std::vector<int> a, std::vector<int> b);

  /// A = first floor(n/2) qubits, B = the rest.
  static Bipartition half_split(int n);
  /// A = `a` (sorted), B = complement in 0..n-1 (sorted).
  static Bipartition from_subset(int n, std::vector<int> a);

  const std::vector<int>& a() const noexcept { return a_; }
  const std::vector<int>& b() const noexcept { return b_; }
  int num_qubits() const noexcept { return static_cast<int>(a_.size() + b_.size()); }

  bool is_canonical() const noexcept { return a_.size() <= b_.size(); }
  Bipartition swapped() const { return Bipartition(b_, a_); }
  Bipartition canonical() const { return is_canonical() ? *this : swapped(); }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  std::vector<int> a_;
  std::vector<int> b_;
};

}  // namespace qsp
