#pragma once

#include <vector>

#include "qsp/state.hpp"

namespace qsp {

inline constexpr double kDefaultRankTolerance = 1e-10;

struct SvdResult {
  CMatrix u;                 // rows(M) x p, orthonormal columns
  Eigen::VectorXd s;         // p = min(rows, cols), descending, >= 0
  CMatrix vh;                // p x cols(M), orthonormal rows
};

/// Thin singular value decomposition M = u * diag(s) * vh.
SvdResult svd(const CMatrix& m);

/// M[x][y] = amplitude whose A-bits (in A order) spell x and B-bits spell y.
CMatrix reshape_to_matrix(const StateVector& psi, const Bipartition& bp);

/// Inverse of reshape_to_matrix; no normalization applied.
CVector flatten_from_matrix(const CMatrix& m, const Bipartition& bp);

struct SchmidtDecomposition {
  Bipartition bipartition;
  // All min(dA, dB) coefficients, descending; the first `rank` exceed `tol`.
  Eigen::VectorXd sigma;
  // Column i of `left` is |alpha_i> on A, column i of `right` is |beta_i> on
  // B. Both carry min(dA, dB) orthonormal columns; the trailing ones complete
  // the Schmidt basis and are used for padding.
  CMatrix left;
  CMatrix right;
  int rank = 0;
  double tol = kDefaultRankTolerance;

  Eigen::VectorXd kept_sigma() const { return sigma.head(rank); }
};

SchmidtDecomposition schmidt_decompose(const StateVector& psi, const Bipartition& bp,
                                       double tol = kDefaultRankTolerance);

struct TruncationResult {
  int keep = 0;
  double normalizer = 1.0;
  Eigen::VectorXd sigma_prime;
  double loss = 0.0;
};

/// Keeps the r largest coefficients and renormalizes them.
TruncationResult truncate(const SchmidtDecomposition& sd, int r);
/// Same arithmetic over a bare descending spectrum.
TruncationResult truncate(const Eigen::VectorXd& sigma, int r, double tol = kDefaultRankTolerance);

/// Sum of the first `keep` Schmidt terms (default: rank), renormalized.
StateVector reconstruct(const SchmidtDecomposition& sd, int keep = -1);

}  // namespace qsp
