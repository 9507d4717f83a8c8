#include "qsp/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qsp/cost_model.hpp"
#include "qsp/errors.hpp"
#include "qsp/measures.hpp"

namespace qsp {
namespace {

constexpr double kAngleTol = kElisionTolerance;
constexpr double kIsometryTol = 1e-10;
constexpr double kResidualTol = 1e-12;

int log2_dim(Eigen::Index dim, const char* what) {
  if (dim < 2 || (dim & (dim - 1)) != 0) throw InvalidInput(std::string(what) + ": dimension must be a power of two >= 2");
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

void add_rotation(Circuit& c, RotationAxis axis, double angle, int target) {
  if (axis == RotationAxis::Y) {
    c.ry(angle, target);
  } else {
    c.rz(angle, target);
  }
}

std::vector<int> iota_qubits(int count, int first = 0) {
  std::vector<int> q(static_cast<std::size_t>(count));
  std::iota(q.begin(), q.end(), first);
  return q;
}

}  // namespace

Circuit multiplexed_rotation(int width, RotationAxis axis, std::span<const double> angles,
                             std::span<const int> controls, int target) {
  const std::size_t k = controls.size();
  if (angles.size() != (std::size_t{1} << k)) throw InvalidInput("multiplexor needs 2^k angles");

  // Drop controls the angle table does not depend on.
  std::vector<double> alpha(angles.begin(), angles.end());
  std::vector<int> ctrl(controls.begin(), controls.end());
  for (std::size_t pos = 0; pos < ctrl.size();) {
    const std::size_t bit = std::size_t{1} << (ctrl.size() - 1 - pos);
    bool independent = true;
    for (std::size_t j = 0; j < alpha.size() && independent; ++j) {
      if (std::abs(alpha[j] - alpha[j ^ bit]) > kAngleTol) independent = false;
    }
    if (!independent) {
      ++pos;
      continue;
    }
    std::vector<double> reduced;
    reduced.reserve(alpha.size() / 2);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (!(j & bit)) reduced.push_back(alpha[j]);
    }
    alpha = std::move(reduced);
    ctrl.erase(ctrl.begin() + static_cast<std::ptrdiff_t>(pos));
  }

  Circuit c(width);
  const std::size_t kk = ctrl.size();
  const std::size_t count = alpha.size();
  if (kk == 0) {
    if (std::abs(alpha[0]) > kAngleTol) add_rotation(c, axis, alpha[0], target);
    return c;
  }

  // alpha_j = sum_i (-1)^{|j & g_i|} theta_i with g_i the i-th Gray code.
  std::vector<double> theta(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t g = i ^ (i >> 1);
    double acc = 0;
    for (std::size_t j = 0; j < count; ++j) acc += (std::popcount(j & g) % 2 ? -alpha[j] : alpha[j]);
    theta[i] = acc / static_cast<double>(count);
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (std::abs(theta[i]) > kAngleTol) add_rotation(c, axis, theta[i], target);
    const std::size_t flip = i + 1 < count ? static_cast<std::size_t>(std::countr_zero(i + 1)) : kk - 1;
    c.cx(ctrl[kk - 1 - flip], target);
  }
  return c;
}

Circuit diagonal(std::span<const double> phases) {
  const int q = log2_dim(static_cast<Eigen::Index>(phases.size()), "diagonal");
  Circuit c(q);
  std::vector<double> phi(phases.begin(), phases.end());
  // Peel one qubit at a time, last qubit first; diagonal factors commute.
  for (int t = q - 1; t >= 0; --t) {
    const std::size_t half = phi.size() / 2;
    std::vector<double> alpha(half), rest(half);
    for (std::size_t p = 0; p < half; ++p) {
      alpha[p] = phi[2 * p + 1] - phi[2 * p];
      rest[p] = 0.5 * (phi[2 * p] + phi[2 * p + 1]);
    }
    const auto ctrl = iota_qubits(t);
    c.append(multiplexed_rotation(q, RotationAxis::Z, alpha, ctrl, t));
    phi = std::move(rest);
  }
  c.add_phase(phi[0]);
  return c;
}

Circuit prep_state(const CVector& v) {
  const int q = log2_dim(v.size(), "prep_state");
  if (!v.allFinite() || std::abs(v.squaredNorm() - 1.0) > kIsometryTol) {
    throw InvalidInput("prep_state input must be a normalized vector");
  }
  const std::size_t dim = static_cast<std::size_t>(v.size());
  std::vector<double> mass(dim), phase(dim, 0.0);
  bool has_phase = false;
  for (std::size_t x = 0; x < dim; ++x) {
    mass[x] = std::norm(v(static_cast<Eigen::Index>(x)));
    if (std::abs(v(static_cast<Eigen::Index>(x))) > kAngleTol) {
      phase[x] = std::arg(v(static_cast<Eigen::Index>(x)));
      if (std::abs(phase[x]) > kAngleTol) has_phase = true;
    }
  }

  // mass_by_level[j][p]: probability that the first j qubits read p.
  std::vector<std::vector<double>> mass_by_level(static_cast<std::size_t>(q) + 1);
  mass_by_level[static_cast<std::size_t>(q)] = mass;
  for (int j = q - 1; j >= 0; --j) {
    const auto& finer = mass_by_level[static_cast<std::size_t>(j) + 1];
    auto& coarse = mass_by_level[static_cast<std::size_t>(j)];
    coarse.resize(finer.size() / 2);
    for (std::size_t p = 0; p < coarse.size(); ++p) coarse[p] = finer[2 * p] + finer[2 * p + 1];
  }

  Circuit c(q);
  for (int j = 0; j < q; ++j) {
    const auto& finer = mass_by_level[static_cast<std::size_t>(j) + 1];
    std::vector<double> angles(finer.size() / 2);
    for (std::size_t p = 0; p < angles.size(); ++p) {
      angles[p] = 2.0 * std::atan2(std::sqrt(finer[2 * p + 1]), std::sqrt(finer[2 * p]));
    }
    const auto ctrl = iota_qubits(j);
    c.append(multiplexed_rotation(q, RotationAxis::Y, angles, ctrl, j));
  }
  if (has_phase) c.append(diagonal(phase));
  return simplify(c);
}

Circuit reflection(const CVector& u, Complex w) {
  if (std::abs(std::abs(w) - 1.0) > kIsometryTol) throw InvalidInput("reflection phase must have unit modulus");
  const int k = log2_dim(u.size(), "reflection");
  if (!u.allFinite() || std::abs(u.squaredNorm() - 1.0) > kIsometryTol) {
    throw InvalidInput("reflection vector must be normalized");
  }
  Circuit c(k);
  if (std::abs(1.0 + w) < kAngleTol) return c;  // I - 0 * |u><u|
  const Circuit prep = prep_state(u);
  std::vector<double> phases(static_cast<std::size_t>(u.size()), 0.0);
  phases[0] = std::arg(-w);
  c.append(prep.inverse());
  c.append(diagonal(phases));
  c.append(prep);
  return simplify(c);
}

Circuit synth_isometry_at(const CMatrix& v, std::span<const std::uint64_t> positions) {
  const int k = log2_dim(v.rows(), "synth_isometry");
  const Eigen::Index cols = v.cols();
  if (cols < 1 || cols > v.rows()) throw InvalidInput("isometry must have 1 <= columns <= rows");
  if (positions.size() != static_cast<std::size_t>(cols)) throw InvalidInput("one basis position per column required");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] >= static_cast<std::uint64_t>(v.rows())) throw InvalidInput("basis position out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (positions[i] == positions[j]) throw InvalidInput("basis positions must be distinct");
    }
  }
  if (!v.allFinite()) throw InvalidInput("isometry has non-finite entries");
  const CMatrix gram = v.adjoint() * v;
  if ((gram - CMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff() > kIsometryTol) {
    throw InvalidInput("matrix columns are not orthonormal");
  }
  if (cols == 1 && positions[0] == 0) return prep_state(v.col(0));

  // Reduce column j onto e_{positions[j]} with Householder reflections; each
  // reflection vector is orthogonal to the already fixed basis states.
  CMatrix work = v;
  std::vector<CVector> reflections;
  for (Eigen::Index j = 0; j < cols; ++j) {
    const auto p = static_cast<Eigen::Index>(positions[static_cast<std::size_t>(j)]);
    CVector x = work.col(j);
    const Complex xp = x(p);
    CVector residual = x;
    residual(p) = 0.0;
    if (residual.norm() < kResidualTol) continue;
    const Complex alpha = std::abs(xp) > 0 ? -xp / std::abs(xp) : Complex(-1.0);
    CVector u = x;
    u(p) -= alpha * x.norm();
    u.normalize();
    work.rightCols(cols - j) -= 2.0 * u * (u.adjoint() * work.rightCols(cols - j));
    reflections.push_back(std::move(u));
  }

  std::vector<double> phases(static_cast<std::size_t>(v.rows()), 0.0);
  bool any_phase = false;
  for (Eigen::Index j = 0; j < cols; ++j) {
    const auto p = static_cast<Eigen::Index>(positions[static_cast<std::size_t>(j)]);
    phases[static_cast<std::size_t>(p)] = std::arg(work(p, j));
    if (std::abs(phases[static_cast<std::size_t>(p)]) > kAngleTol) any_phase = true;
  }

  Circuit c(k);
  if (any_phase) c.append(diagonal(phases));
  for (auto it = reflections.rbegin(); it != reflections.rend(); ++it) c.append(reflection(*it, 1.0));
  return simplify(c);
}

Circuit synth_isometry(const CMatrix& v) {
  std::vector<std::uint64_t> positions(static_cast<std::size_t>(v.cols()));
  std::iota(positions.begin(), positions.end(), std::uint64_t{0});
  return synth_isometry_at(v, positions);
}

Circuit synth_unitary(const CMatrix& u) {
  if (u.rows() != u.cols()) throw InvalidInput("unitary must be square");
  return synth_isometry(u);
}

LrspResult lrsp(const StateVector& psi, const LrspConfig& cfg) {
  if (cfg.max_rank < 1) throw InvalidInput("requested rank must be >= 1");
  const int n = psi.num_qubits();
  if (n < 1) throw InvalidInput("lrsp needs at least one qubit");

  LrspResult out;
  auto& rep = out.report;
  rep.n = n;
  if (n == 1) {
    out.circuit = prep_state(psi.amplitudes());
    rep.cnots = 0;
    rep.depth = depth(out.circuit);
    return out;
  }

  const int a = n / 2;
  const int b = n - a;
  const auto sd = schmidt_decompose(psi, Bipartition::half_split(n), cfg.tol);
  const int rank = std::min(sd.rank, cfg.max_rank);
  const auto cut = truncate(sd, rank);
  const int m = m_of(rank);
  rep.rank = rank;
  rep.m = m;
  rep.predicted_loss = cut.loss;
  rep.model_estimate = lrsp_estimate(n, m).total;

  const auto a_qubits = iota_qubits(a);
  const auto b_qubits = iota_qubits(b, a);
  Circuit c(n);

  if (rank == 1 && cfg.recurse_product) {
    LrspConfig child = cfg;
    child.max_rank = std::numeric_limits<int>::max();
    const auto left = lrsp(StateVector::normalized(sd.left.col(0)), child);
    const auto right = lrsp(StateVector::normalized(sd.right.col(0)), child);
    c.append(left.circuit, a_qubits);
    c.append(right.circuit, b_qubits);
    rep.phase_cnots = {0, 0, left.report.cnots, right.report.cnots};
    rep.recursed = true;
  } else {
    const Eigen::Index cols = Eigen::Index{1} << m;
    // Schmidt index i sits on the first m qubits of each register.
    std::vector<std::uint64_t> pos_a(static_cast<std::size_t>(cols)), pos_b(static_cast<std::size_t>(cols));
    for (Eigen::Index i = 0; i < cols; ++i) {
      pos_a[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i) << (a - m);
      pos_b[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i) << (b - m);
    }

    Circuit phase1(n);
    if (m > 0) {
      CVector s = CVector::Zero(cols);
      s.head(rank) = cut.sigma_prime.cast<Complex>();
      phase1.append(prep_state(s), iota_qubits(m));
    }
    Circuit phase2(n);
    for (int q = 0; q < m; ++q) phase2.cx(q, q + a);
    Circuit phase3(n);
    phase3.append(synth_isometry_at(sd.left.leftCols(cols), pos_a), a_qubits);
    Circuit phase4(n);
    phase4.append(synth_isometry_at(sd.right.leftCols(cols), pos_b), b_qubits);

    rep.phase_cnots = {cnot_count(phase1), cnot_count(phase2), cnot_count(phase3), cnot_count(phase4)};
    for (const auto* part : {&phase1, &phase2, &phase3, &phase4}) c.append(*part);
  }

  out.circuit = simplify(c);
  rep.cnots = cnot_count(out.circuit);
  rep.depth = depth(out.circuit);
  return out;
}

}  // namespace qsp
