#include "qsp/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "qsp/errors.hpp"

namespace qsp {
namespace {

double gaussian(Rng& rng) {
  // Box-Muller over uniform01 keeps the stream platform independent.
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CVector draw(int n, Rng& rng, double lo, double hi) {
  if (n < 1 || n > 28) throw InvalidInput("random state qubit count out of range");
  CVector v(Eigen::Index{1} << n);
  for (auto& a : v) {
    const double re = lo + (hi - lo) * uniform01(rng);
    const double im = lo + (hi - lo) * uniform01(rng);
    a = Complex(re, im);
  }
  return v;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

StateVector random_state(int n, Rng& rng) { return StateVector::normalized(draw(n, rng, 0.0, 1.0)); }

StateVector random_symmetric_state(int n, Rng& rng) { return StateVector::normalized(draw(n, rng, -1.0, 1.0)); }

StateVector random_product_state(int n, Rng& rng) {
  if (n < 1 || n > 28) throw InvalidInput("random state qubit count out of range");
  CVector v = CVector::Ones(1);
  for (int q = 0; q < n; ++q) {
    CVector one(2);
    one << Complex(2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1), Complex(2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1);
    one.normalize();
    CVector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * one(0);
      next(2 * i + 1) = v(i) * one(1);
    }
    v = std::move(next);
  }
  return StateVector::normalized(std::move(v));
}

CMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  CMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(gaussian(rng), gaussian(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace qsp
