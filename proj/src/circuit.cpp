#include "qsp/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsp/errors.hpp"

namespace qsp {
namespace {

constexpr double kEulerEps = 1e-14;

bool is_identity(const Mat2& m, double tol, double* phase) {
  if (std::abs(m[1]) > tol || std::abs(m[2]) > tol || std::abs(m[0] - m[3]) > tol) return false;
  *phase = std::arg(m[0]);
  return true;
}

}  // namespace

Mat2 OneQubitGate::matrix() const {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return {Complex(c, 0), -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
}

Mat2 ry_matrix(double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  return {Complex(c), Complex(-s), Complex(s), Complex(c)};
}

Mat2 rz_matrix(double angle) { return {std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2)}; }

Mat2 multiply(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

EulerAngles euler_decompose(const Mat2& m) {
  const double c = std::abs(m[0]);
  const double s = std::abs(m[2]);
  EulerAngles e{2.0 * std::atan2(s, c), 0.0, 0.0, 0.0};
  if (c > kEulerEps) {
    e.phase = std::arg(m[0]);
    e.phi = s > kEulerEps ? std::arg(m[2]) - e.phase : 0.0;
    e.lambda = std::arg(m[3]) - e.phase - e.phi;
  } else {
    e.phase = std::arg(m[2]);
    e.phi = 0.0;
    e.lambda = std::arg(-m[1]) - e.phase;
  }
  return e;
}

Circuit::Circuit(int width) : width_(width) {
  if (width < 1) throw InvalidInput("circuit width must be >= 1");
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= width_) throw InvalidInput("qubit index out of range for circuit width");
}

Circuit& Circuit::u(double theta, double phi, double lambda, int target) {
  return add(OneQubitGate{theta, phi, lambda, target});
}

Circuit& Circuit::cx(int control, int target) { return add(CnotGate{control, target}); }

Circuit& Circuit::ry(double angle, int target) { return u(angle, 0.0, 0.0, target); }

Circuit& Circuit::rz(double angle, int target) {
  add_phase(-angle / 2);
  return u(0.0, 0.0, angle, target);
}

Circuit& Circuit::unitary(const Mat2& m, int target) {
  const auto e = euler_decompose(m);
  add_phase(e.phase);
  return u(e.theta, e.phi, e.lambda, target);
}

Circuit& Circuit::add(const Gate& g) {
  if (const auto* one = std::get_if<OneQubitGate>(&g)) {
    check_qubit(one->target);
    if (!std::isfinite(one->theta) || !std::isfinite(one->phi) || !std::isfinite(one->lambda)) {
      throw InvalidInput("gate angles must be finite");
    }
  } else {
    const auto& cx = std::get<CnotGate>(g);
    check_qubit(cx.control);
    check_qubit(cx.target);
    if (cx.control == cx.target) throw InvalidInput("CNOT control equals target");
  }
  gates_.push_back(g);
  return *this;
}

Circuit& Circuit::add_phase(double phase) {
  global_phase_ = std::remainder(global_phase_ + phase, 2 * std::numbers::pi);
  return *this;
}

Circuit& Circuit::append(const Circuit& other, std::span<const int> qubits) {
  if (qubits.size() != static_cast<std::size_t>(other.width())) {
    throw InvalidInput("qubit map size does not match appended circuit width");
  }
  for (const auto& g : other.gates()) {
    if (const auto* one = std::get_if<OneQubitGate>(&g)) {
      auto mapped = *one;
      mapped.target = qubits[static_cast<std::size_t>(one->target)];
      add(mapped);
    } else {
      const auto& cx = std::get<CnotGate>(g);
      add(CnotGate{qubits[static_cast<std::size_t>(cx.control)], qubits[static_cast<std::size_t>(cx.target)]});
    }
  }
  add_phase(other.global_phase());
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.width() > width_) throw InvalidInput("appended circuit is wider than target");
  for (const auto& g : other.gates()) add(g);
  add_phase(other.global_phase());
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit inv(width_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    if (const auto* one = std::get_if<OneQubitGate>(&*it)) {
      inv.add(one->inverse());
    } else {
      inv.add(*it);
    }
  }
  inv.add_phase(-global_phase_);
  return inv;
}

std::size_t cnot_count(const Circuit& c) {
  return static_cast<std::size_t>(std::count_if(c.gates().begin(), c.gates().end(),
                                                [](const Gate& g) { return std::holds_alternative<CnotGate>(g); }));
}

std::size_t depth(const Circuit& c) {
  std::vector<std::size_t> level(static_cast<std::size_t>(std::max(c.width(), 0)), 0);
  std::size_t best = 0;
  for (const auto& g : c.gates()) {
    std::size_t d = 0;
    if (const auto* one = std::get_if<OneQubitGate>(&g)) {
      d = ++level[static_cast<std::size_t>(one->target)];
    } else {
      const auto& cx = std::get<CnotGate>(g);
      auto& lc = level[static_cast<std::size_t>(cx.control)];
      auto& lt = level[static_cast<std::size_t>(cx.target)];
      d = std::max(lc, lt) + 1;
      lc = lt = d;
    }
    best = std::max(best, d);
  }
  return best;
}

Circuit simplify(const Circuit& c, double tol) {
  // Work list with tombstones; per-wire stacks hold indices of live gates.
  std::vector<Gate> work;
  std::vector<bool> alive;
  std::vector<std::vector<std::size_t>> wire(static_cast<std::size_t>(c.width()));
  double phase = c.global_phase();

  auto top = [&](int q) -> std::ptrdiff_t {
    const auto& s = wire[static_cast<std::size_t>(q)];
    return s.empty() ? -1 : static_cast<std::ptrdiff_t>(s.back());
  };

  for (const auto& g : c.gates()) {
    if (const auto* one = std::get_if<OneQubitGate>(&g)) {
      const int q = one->target;
      const auto t = top(q);
      Mat2 m = one->matrix();
      bool merged = false;
      if (t >= 0 && std::holds_alternative<OneQubitGate>(work[static_cast<std::size_t>(t)])) {
        m = multiply(m, std::get<OneQubitGate>(work[static_cast<std::size_t>(t)]).matrix());
        alive[static_cast<std::size_t>(t)] = false;
        wire[static_cast<std::size_t>(q)].pop_back();
        merged = true;
      }
      double id_phase = 0;
      if (is_identity(m, tol, &id_phase)) {
        phase += id_phase;
        continue;
      }
      if (merged) {
        const auto e = euler_decompose(m);
        phase += e.phase;
        work.emplace_back(OneQubitGate{e.theta, e.phi, e.lambda, q});
      } else {
        work.push_back(g);
      }
      alive.push_back(true);
      wire[static_cast<std::size_t>(q)].push_back(work.size() - 1);
    } else {
      const auto& cx = std::get<CnotGate>(g);
      const auto tc = top(cx.control);
      if (tc >= 0 && tc == top(cx.target)) {
        const auto& prev = work[static_cast<std::size_t>(tc)];
        if (const auto* pcx = std::get_if<CnotGate>(&prev); pcx && *pcx == cx) {
          alive[static_cast<std::size_t>(tc)] = false;
          wire[static_cast<std::size_t>(cx.control)].pop_back();
          wire[static_cast<std::size_t>(cx.target)].pop_back();
          continue;
        }
      }
      work.push_back(g);
      alive.push_back(true);
      wire[static_cast<std::size_t>(cx.control)].push_back(work.size() - 1);
      wire[static_cast<std::size_t>(cx.target)].push_back(work.size() - 1);
    }
  }

  Circuit out(c.width());
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (alive[i]) out.add(work[i]);
  }
  out.add_phase(phase);
  return out;
}

}  // namespace qsp
