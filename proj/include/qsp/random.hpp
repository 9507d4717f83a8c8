#pragma once

#include <cstdint>
#include <random>

#include "qsp/state.hpp"

namespace qsp {

// Seeded generator used everywhere randomness is part of a result.
// mt19937_64 output is specified bit-for-bit by the standard; doubles are
// formed from the top 53 bits so streams are identical across platforms.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// splitmix64 mix of (seed, stream): seeds for independent sub-streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Re and Im drawn uniformly from [0, 1), then normalized.
StateVector random_state(int n, Rng& rng);

/// Same distribution with Re and Im uniform on [-1, 1).
StateVector random_symmetric_state(int n, Rng& rng);

/// Tensor product of n independent random single-qubit states.
StateVector random_product_state(int n, Rng& rng);

/// Haar-random unitary of dimension `dim` (QR of a Gaussian matrix).
CMatrix random_unitary(Eigen::Index dim, Rng& rng);

}  // namespace qsp
