#include "qsp/schmidt.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "qsp/errors.hpp"

namespace qsp {
namespace {

// Global index for the (x, y) cell of the reshaped matrix.
std::uint64_t global_index(std::uint64_t x, std::uint64_t y, const Bipartition& bp) {
  const int n = bp.num_qubits();
  const auto& a = bp.a();
  const auto& b = bp.b();
  std::uint64_t idx = 0;
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  for (int i = 0; i < na; ++i) {
    if ((x >> (na - 1 - i)) & 1U) idx |= std::uint64_t{1} << (n - 1 - a[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < nb; ++i) {
    if ((y >> (nb - 1 - i)) & 1U) idx |= std::uint64_t{1} << (n - 1 - b[static_cast<std::size_t>(i)]);
  }
  return idx;
}

}  // namespace

SvdResult svd(const CMatrix& m) {
  if (m.size() == 0) throw InvalidInput("svd of an empty matrix");
  if (!m.allFinite()) throw InvalidInput("svd input has non-finite entries");
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // Eigen returns singular values sorted in decreasing order.
  return SvdResult{solver.matrixU(), solver.singularValues(), solver.matrixV().adjoint()};
}

CMatrix reshape_to_matrix(const StateVector& psi, const Bipartition& bp) {
  if (bp.num_qubits() != psi.num_qubits()) {
    throw InvalidInput("bipartition does not match the state's qubit count");
  }
  const auto rows = Eigen::Index{1} << bp.a().size();
  const auto cols = Eigen::Index{1} << bp.b().size();
  CMatrix m(rows, cols);
  for (Eigen::Index x = 0; x < rows; ++x) {
    for (Eigen::Index y = 0; y < cols; ++y) {
      m(x, y) = psi[global_index(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y), bp)];
    }
  }
  return m;
}

CVector flatten_from_matrix(const CMatrix& m, const Bipartition& bp) {
  const auto rows = Eigen::Index{1} << bp.a().size();
  const auto cols = Eigen::Index{1} << bp.b().size();
  if (m.rows() != rows || m.cols() != cols) throw InvalidInput("matrix shape does not match bipartition");
  CVector v(rows * cols);
  for (Eigen::Index x = 0; x < rows; ++x) {
    for (Eigen::Index y = 0; y < cols; ++y) {
      v(static_cast<Eigen::Index>(global_index(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y), bp))) =
          m(x, y);
    }
  }
  return v;
}

SchmidtDecomposition schmidt_decompose(const StateVector& psi, const Bipartition& bp, double tol) {
  if (!(tol >= 0.0)) throw InvalidInput("rank tolerance must be nonnegative");
  auto [u, s, vh] = svd(reshape_to_matrix(psi, bp));
  SchmidtDecomposition sd;
  sd.bipartition = bp;
  sd.sigma = std::move(s);
  sd.left = std::move(u);
  // |beta_i> is row i of vh read as a column (no conjugation).
  sd.right = vh.transpose();
  sd.tol = tol;
  sd.rank = static_cast<int>((sd.sigma.array() > tol).count());
  if (sd.rank == 0) throw InvalidInput("state has no Schmidt coefficient above tolerance");
  return sd;
}

TruncationResult truncate(const Eigen::VectorXd& sigma, int r, double tol) {
  if (r < 1) throw InvalidInput("truncation rank must be >= 1");
  if (sigma.size() == 0) throw InvalidInput("empty Schmidt spectrum");
  const int rank = static_cast<int>((sigma.array() > tol).count());
  TruncationResult out;
  if (r >= rank) {
    out.keep = rank;
    out.normalizer = 1.0;
    out.sigma_prime = sigma.head(rank);
    out.loss = 0.0;
    return out;
  }
  const double total = sigma.squaredNorm();
  const double discarded = sigma.tail(sigma.size() - r).squaredNorm() / total;
  out.keep = r;
  out.loss = discarded;
  out.normalizer = std::sqrt(1.0 - discarded);
  out.sigma_prime = sigma.head(r) / sigma.head(r).norm();
  return out;
}

TruncationResult truncate(const SchmidtDecomposition& sd, int r) { return truncate(sd.sigma, r, sd.tol); }

StateVector reconstruct(const SchmidtDecomposition& sd, int keep) {
  if (keep < 0) keep = sd.rank;
  keep = std::clamp(keep, 1, static_cast<int>(sd.sigma.size()));
  CMatrix m = sd.left.leftCols(keep) * sd.sigma.head(keep).cast<Complex>().asDiagonal() *
              sd.right.leftCols(keep).transpose();
  return StateVector::normalized(flatten_from_matrix(m, sd.bipartition));
}

}  // namespace qsp
