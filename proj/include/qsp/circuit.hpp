#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "qsp/state.hpp"

namespace qsp {

using Mat2 = std::array<Complex, 4>;  // row-major 2x2

/// U(theta, phi, lambda) =
///   [[cos(t/2),            -e^{i l} sin(t/2)],
///    [e^{i p} sin(t/2),  e^{i(p+l)} cos(t/2)]]
struct OneQubitGate {
  double theta = 0;
  double phi = 0;
  double lambda = 0;
  int target = 0;

  Mat2 matrix() const;
  OneQubitGate inverse() const { return {-theta, -lambda, -phi, target}; }
  friend bool operator==(const OneQubitGate&, const OneQubitGate&) = default;
};

struct CnotGate {
  int control = 0;
  int target = 0;
  friend bool operator==(const CnotGate&, const CnotGate&) = default;
};

using Gate = std::variant<OneQubitGate, CnotGate>;

/// Writes an arbitrary 2x2 unitary as e^{i*phase} * U(theta, phi, lambda).
struct EulerAngles {
  double theta, phi, lambda, phase;
};
EulerAngles euler_decompose(const Mat2& u);

Mat2 ry_matrix(double angle);
Mat2 rz_matrix(double angle);
Mat2 multiply(const Mat2& a, const Mat2& b);

/// Ordered gate list over `width` qubits with a tracked global phase.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int width);

  int width() const noexcept { return width_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  double global_phase() const noexcept { return global_phase_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }

  Circuit& u(double theta, double phi, double lambda, int target);
  Circuit& cx(int control, int target);
  Circuit& ry(double angle, int target);
  /// Rz(a) = diag(e^{-ia/2}, e^{ia/2}); recorded as U(0,0,a) plus phase -a/2.
  Circuit& rz(double angle, int target);
  /// Any 2x2 unitary, via euler_decompose.
  Circuit& unitary(const Mat2& m, int target);
  Circuit& add(const Gate& g);
  Circuit& add_phase(double phase);

  /// Appends `other`, mapping its qubit j onto `qubits[j]`.
  Circuit& append(const Circuit& other, std::span<const int> qubits);
  /// Appends `other` on the same qubit indices.
  Circuit& append(const Circuit& other);

  Circuit inverse() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check_qubit(int q) const;

  int width_ = 0;
  std::vector<Gate> gates_;
  double global_phase_ = 0;
};

std::size_t cnot_count(const Circuit& c);

/// ASAP critical-path length; every gate is one layer unit.
std::size_t depth(const Circuit& c);

inline constexpr double kElisionTolerance = 1e-12;

/// Peephole cleanup: drops single-qubit gates equal to identity (up to phase),
/// merges consecutive single-qubit gates on a wire and cancels CNOT pairs that
/// meet with nothing in between on either wire. Action is unchanged.
Circuit simplify(const Circuit& c, double tol = kElisionTolerance);

}  // namespace qsp
