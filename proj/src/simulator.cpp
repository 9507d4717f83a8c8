#include "qsp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qsp/errors.hpp"
#include "qsp/random.hpp"

namespace qsp {
namespace {

void apply_one(CVector& v, int width, int target, const Mat2& m) {
  const Eigen::Index stride = Eigen::Index{1} << (width - 1 - target);
  const Eigen::Index dim = v.size();
  Complex* a = v.data();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index i = base; i < base + stride; ++i) {
      const Complex x0 = a[i];
      const Complex x1 = a[i + stride];
      a[i] = m[0] * x0 + m[1] * x1;
      a[i + stride] = m[2] * x0 + m[3] * x1;
    }
  }
}

void apply_cnot(CVector& v, int width, int control, int target) {
  const Eigen::Index cmask = Eigen::Index{1} << (width - 1 - control);
  const Eigen::Index tmask = Eigen::Index{1} << (width - 1 - target);
  Complex* a = v.data();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(a[i], a[i | tmask]);
  }
}

const std::array<Mat2, 4>& paulis() {
  static const std::array<Mat2, 4> p = {
      Mat2{1.0, 0.0, 0.0, 1.0},
      Mat2{0.0, 1.0, 1.0, 0.0},
      Mat2{0.0, Complex(0, -1), Complex(0, 1), 0.0},
      Mat2{1.0, 0.0, 0.0, -1.0},
  };
  return p;
}

void apply_gate(CVector& v, int width, const Gate& g) {
  if (const auto* one = std::get_if<OneQubitGate>(&g)) {
    apply_one(v, width, one->target, one->matrix());
  } else {
    const auto& cx = std::get<CnotGate>(g);
    apply_cnot(v, width, cx.control, cx.target);
  }
}

// Draws `shots` outcomes from `probs` using `rng`, accumulating into `out`.
void draw_into(const std::vector<double>& probs, std::int64_t shots, Rng& rng, ShotCounts& out) {
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  const double total = cdf.back();
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++out.histogram[static_cast<std::uint64_t>(it - cdf.begin())];
  }
  out.shots += shots;
}

std::vector<double> probabilities_of(const CVector& v) {
  std::vector<double> p(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(v(i));
  return p;
}

}  // namespace

StateVector simulate(const Circuit& c) { return simulate(c, StateVector::zero(c.width())); }

CVector evolve(const Circuit& c, CVector v) {
  if (v.size() != (Eigen::Index{1} << c.width())) throw InvalidInput("vector size does not match circuit width");
  for (const auto& g : c.gates()) apply_gate(v, c.width(), g);
  v *= std::polar(1.0, c.global_phase());
  return v;
}

StateVector simulate(const Circuit& c, const StateVector& start) {
  if (start.num_qubits() != c.width()) throw InvalidInput("start state width does not match circuit");
  return StateVector(evolve(c, start.amplitudes()), 1e-9);
}

CMatrix circuit_unitary(const Circuit& c) {
  const Eigen::Index dim = Eigen::Index{1} << c.width();
  CMatrix u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    CVector v = CVector::Zero(dim);
    v(j) = 1.0;
    for (const auto& g : c.gates()) apply_gate(v, c.width(), g);
    u.col(j) = v * std::polar(1.0, c.global_phase());
  }
  return u;
}

ShotCounts sample(const StateVector& psi, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidInput("shots must be >= 1");
  ShotCounts out;
  Rng rng(seed);
  draw_into(psi.probabilities(), shots, rng, out);
  return out;
}

ShotCounts simulate_noisy(const Circuit& c, double p_cnot, std::int64_t shots, std::uint64_t seed) {
  if (!(p_cnot >= 0.0 && p_cnot <= 1.0)) throw InvalidInput("CNOT error probability must be in [0, 1]");
  if (shots < 1) throw InvalidInput("shots must be >= 1");

  std::vector<std::size_t> cnot_at;  // gate index of every CNOT
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    if (std::holds_alternative<CnotGate>(c.gates()[i])) cnot_at.push_back(i);
  }

  // Pattern: (CNOT ordinal, Pauli code 1..15); code = 4*control_pauli + target_pauli.
  using Pattern = std::vector<std::pair<std::uint32_t, std::uint8_t>>;
  std::map<Pattern, std::int64_t> groups;
  if (p_cnot == 0.0 || cnot_at.empty()) {
    groups[{}] = shots;
  } else {
    for (std::int64_t s = 0; s < shots; ++s) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
      Pattern pat;
      for (std::uint32_t k = 0; k < cnot_at.size(); ++k) {
        if (uniform01(rng) < p_cnot) pat.emplace_back(k, static_cast<std::uint8_t>(1 + rng() % 15));
      }
      ++groups[std::move(pat)];
    }
  }

  const int w = c.width();
  const auto& gates = c.gates();
  const Complex phase = std::polar(1.0, c.global_phase());
  ShotCounts out;
  Rng draw_rng(seed);

  // The error-free group sorts first; the others follow in ascending order
  // of their first error, so the shared error-free prefix only moves forward.
  CVector prefix = StateVector::zero(w).amplitudes();
  std::size_t prefix_end = 0;  // gates [0, prefix_end) applied to `prefix`
  for (const auto& [pat, count] : groups) {
    if (!pat.empty()) {
      for (const std::size_t first_err = cnot_at[pat.front().first] + 1; prefix_end < first_err; ++prefix_end)
        apply_gate(prefix, w, gates[prefix_end]);
    }
    CVector v = prefix;
    std::size_t next = 0;
    for (std::size_t g = prefix_end; g <= gates.size(); ++g) {
      // Apply every error scheduled right after gate g-1.
      while (next < pat.size() && cnot_at[pat[next].first] + 1 == g) {
        const auto& cx = std::get<CnotGate>(gates[g - 1]);
        const int code = pat[next].second;
        if (code / 4) apply_one(v, w, cx.control, paulis()[static_cast<std::size_t>(code / 4)]);
        if (code % 4) apply_one(v, w, cx.target, paulis()[static_cast<std::size_t>(code % 4)]);
        ++next;
      }
      if (g < gates.size()) apply_gate(v, w, gates[g]);
    }
    v *= phase;
    draw_into(probabilities_of(v), count, draw_rng, out);
  }
  return out;
}

double mae(const ShotCounts& counts, const StateVector& target) {
  if (counts.shots < 1) throw InvalidInput("histogram has no shots");
  const auto probs = target.probabilities();
  double total = 0;
  for (std::size_t x = 0; x < probs.size(); ++x) {
    const auto it = counts.histogram.find(x);
    const double freq = it == counts.histogram.end() ? 0.0 : static_cast<double>(it->second) / counts.shots;
    total += std::abs(freq - probs[x]);
  }
  for (const auto& [x, _] : counts.histogram) {
    if (x >= probs.size()) throw InvalidInput("histogram outcome outside target dimension");
  }
  return total / static_cast<double>(probs.size());
}

nlohmann::json to_json(const ShotCounts& counts) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [x, n] : counts.histogram) hist[std::to_string(x)] = n;
  return {{"shots", counts.shots}, {"counts", hist}};
}

ShotCounts shot_counts_from_json(const nlohmann::json& j) {
  ShotCounts out;
  out.shots = j.at("shots").get<std::int64_t>();
  std::int64_t sum = 0;
  for (const auto& [key, value] : j.at("counts").items()) {
    const auto n = value.get<std::int64_t>();
    out.histogram[std::stoull(key)] = n;
    sum += n;
  }
  if (sum != out.shots) throw InvalidInput("histogram counts do not sum to shots");
  return out;
}

}  // namespace qsp
