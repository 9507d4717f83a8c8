#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "qsp/circuit.hpp"
#include "qsp/state.hpp"

namespace qsp {

struct ShotCounts {
  std::int64_t shots = 0;
  std::map<std::uint64_t, std::int64_t> histogram;  // basis index -> count

  friend bool operator==(const ShotCounts&, const ShotCounts&) = default;
};

/// Exact gate-by-gate statevector evolution (big-endian qubit order).
StateVector simulate(const Circuit& c);
StateVector simulate(const Circuit& c, const StateVector& start);

/// Unnormalized evolution of an arbitrary vector.
CVector evolve(const Circuit& c, CVector v);

/// Full 2^w x 2^w action of a circuit, column j = simulate(c, |j>).
CMatrix circuit_unitary(const Circuit& c);

/// `shots` i.i.d. draws from |a_x|^2. The draw stream is Rng(seed).
ShotCounts sample(const StateVector& psi, std::int64_t shots, std::uint64_t seed);

/// Monte Carlo trajectories: after every CNOT, with probability p_cnot a
/// uniformly random non-identity two-qubit Pauli hits its (control, target).
/// Trajectory s draws its insertions from Rng(derive_seed(seed, s)); shots
/// sharing an insertion pattern are simulated once and their outcomes are
/// drawn from Rng(seed) in pattern order, so p_cnot = 0 reproduces sample().
ShotCounts simulate_noisy(const Circuit& c, double p_cnot, std::int64_t shots, std::uint64_t seed);

/// (1/2^n) sum_x |counts(x)/shots - |a_x|^2|.
double mae(const ShotCounts& counts, const StateVector& target);

nlohmann::json to_json(const ShotCounts& counts);
ShotCounts shot_counts_from_json(const nlohmann::json& j);

}  // namespace qsp
