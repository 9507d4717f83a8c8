#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "qsp/circuit.hpp"
#include "qsp/schmidt.hpp"
#include "qsp/state.hpp"

namespace qsp {

enum class RotationAxis { Y, Z };

/// Uniformly controlled rotation: for every bit pattern j of `controls`
/// (controls[0] is the most significant bit of j) the target receives
/// R_axis(angles[j]). Controls the angles do not depend on are dropped; the
/// rest are realized in Gray-code order with 2^k CNOTs for k kept controls.
Circuit multiplexed_rotation(int width, RotationAxis axis, std::span<const double> angles,
                             std::span<const int> controls, int target);

/// diag(e^{i phases[x]}) on log2(phases.size()) qubits; at most 2^q - 2 CNOTs.
Circuit diagonal(std::span<const double> phases);

/// Circuit mapping |0...0> to v exactly (global phase included). Ry cascade,
/// followed by a multiplexed-Rz diagonal when v has non-trivial phases.
Circuit prep_state(const CVector& v);

/// I - (1 + w)|u><u| with |w| = 1.
Circuit reflection(const CVector& u, Complex w);

/// Circuit W with W|j> = V.col(j) for j < cols(V). V must be isometric.
Circuit synth_isometry(const CMatrix& v);

/// Same, but column j is produced from basis state |positions[j]>.
Circuit synth_isometry_at(const CMatrix& v, std::span<const std::uint64_t> positions);

Circuit synth_unitary(const CMatrix& u);

struct LrspConfig {
  int max_rank = std::numeric_limits<int>::max();
  double tol = kDefaultRankTolerance;
  bool recurse_product = true;
};

struct SynthesisReport {
  int n = 0;
  int rank = 1;
  int m = 0;
  double predicted_loss = 0;
  std::size_t cnots = 0;
  std::size_t depth = 0;
  double model_estimate = 0;
  // CNOTs of phases 1..4 as built; on a rank-1 split, phases 3 and 4 hold
  // the two recursive sub-circuits.
  std::array<std::size_t, 4> phase_cnots{};
  bool recursed = false;
};

struct LrspResult {
  Circuit circuit;
  SynthesisReport report;
};

/// Four-phase low-rank preparation over the half split.
LrspResult lrsp(const StateVector& psi, const LrspConfig& cfg = {});

}  // namespace qsp
