#include "qsp/baa.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <tuple>

#include "qsp/cost_model.hpp"
#include "qsp/errors.hpp"
#include "qsp/schmidt.hpp"

namespace qsp {
namespace {

constexpr int kBruteForceMaxQubits = 6;

// Memoized factor costs; Realized cost runs a full synthesis per factor.
class CostCache {
 public:
  explicit CostCache(CostFunction f) : fn_(f) {}

  std::int64_t operator()(const FactorState& f) {
    if (fn_ == CostFunction::Model || f.qubits.size() == 1) return factor_cost(f, fn_);
    Key key{f.qubits, {}};
    key.second.reserve(2 * f.state.dim());
    for (std::size_t i = 0; i < f.state.dim(); ++i) {
      key.second.push_back(std::llround(f.state[i].real() * 1e12));
      key.second.push_back(std::llround(f.state[i].imag() * 1e12));
    }
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const auto c = factor_cost(f, fn_);
    cache_.emplace(std::move(key), c);
    return c;
  }

 private:
  using Key = std::pair<std::vector<int>, std::vector<long long>>;
  CostFunction fn_;
  std::map<Key, std::int64_t> cache_;
};

bool steps_less(const std::vector<PlanStep>& x, const std::vector<PlanStep>& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [](const PlanStep& s, const PlanStep& t) {
    return std::tie(s.factor_qubits, s.subset_a) < std::tie(t.factor_qubits, t.subset_a);
  });
}

// Strict "a is preferred over b".
bool better(const ApproxPlan& a, const ApproxPlan& b) {
  if (a.saved_cnots != b.saved_cnots) return a.saved_cnots > b.saved_cnots;
  if (a.total_loss != b.total_loss) return a.total_loss < b.total_loss;
  return steps_less(a.steps, b.steps);
}

void check_budget(double budget) {
  if (!(budget >= 0.0 && budget <= 1.0)) throw InvalidInput("loss budget must lie in [0, 1]");
}

std::vector<int> all_qubits(int n) {
  std::vector<int> q(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = i;
  return q;
}

ApproxPlan finish(std::vector<FactorState> factors, std::vector<PlanStep> steps, std::int64_t cost, int n,
                  CostFunction fn) {
  ApproxPlan p;
  std::vector<double> losses;
  for (const auto& s : steps) losses.push_back(s.step_loss);
  p.total_loss = compose_loss(losses);
  p.factors = std::move(factors);
  p.steps = std::move(steps);
  p.predicted_cnots = cost;
  p.saved_cnots = baseline_sp_count(n) - cost;
  p.cost = fn;
  return p;
}

// Every factorization tree of `f`, each as (steps in preorder, leaves).
struct SubPlan {
  std::vector<PlanStep> steps;
  std::vector<FactorState> leaves;
};

std::vector<SubPlan> all_trees(const FactorState& f) {
  std::vector<SubPlan> out;
  out.push_back({{}, {f}});
  const int q = static_cast<int>(f.qubits.size());
  if (q < 2) return out;
  for (const auto& bp : enumerate_bipartitions(q)) {
    auto br = branch(f, bp);
    PlanStep step{f.qubits, br.a.qubits, br.step_loss};
    const auto left = all_trees(br.a);
    const auto right = all_trees(br.b);
    for (const auto& l : left) {
      for (const auto& r : right) {
        SubPlan s;
        s.steps.push_back(step);
        s.steps.insert(s.steps.end(), l.steps.begin(), l.steps.end());
        s.steps.insert(s.steps.end(), r.steps.begin(), r.steps.end());
        s.leaves = l.leaves;
        s.leaves.insert(s.leaves.end(), r.leaves.begin(), r.leaves.end());
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(CostFunction f) { return f == CostFunction::Model ? "model" : "realized"; }

CostFunction cost_function_from_string(std::string_view s) {
  if (s == "model") return CostFunction::Model;
  if (s == "realized") return CostFunction::Realized;
  throw InvalidInput("cost function must be 'model' or 'realized'");
}

std::vector<Bipartition> enumerate_bipartitions(int q) {
  if (q < 2) throw InvalidInput("bipartitions need at least 2 qubits");
  if (q > 30) throw InvalidInput("too many qubits to enumerate bipartitions");
  std::vector<Bipartition> out;
  for (int size = 1; size <= q / 2; ++size) {
    // Lexicographic combinations of `size` positions.
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      if (!(2 * size == q && pick.front() != 0)) out.push_back(Bipartition::from_subset(q, pick));
      int i = size - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == q - size + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j) - 1] + 1;
    }
  }
  return out;
}

BranchResult branch(const FactorState& f, const Bipartition& bp) {
  if (bp.num_qubits() != static_cast<int>(f.qubits.size())) {
    throw InvalidInput("bipartition does not match factor size");
  }
  const auto sd = schmidt_decompose(f.state, bp, 0.0);
  BranchResult r;
  for (int p : bp.a()) r.a.qubits.push_back(f.qubits[static_cast<std::size_t>(p)]);
  for (int p : bp.b()) r.b.qubits.push_back(f.qubits[static_cast<std::size_t>(p)]);
  const bool sorted = std::is_sorted(r.a.qubits.begin(), r.a.qubits.end()) &&
                      std::is_sorted(r.b.qubits.begin(), r.b.qubits.end());
  if (!sorted) throw InvalidInput("bipartition sides must list positions in ascending order");
  r.a.state = StateVector::normalized(sd.left.col(0));
  r.b.state = StateVector::normalized(sd.right.col(0));
  const double top = sd.sigma(0) * sd.sigma(0) / sd.sigma.squaredNorm();
  r.step_loss = std::clamp(1.0 - top, 0.0, 1.0);
  return r;
}

double compose_loss(std::span<const double> losses) {
  double keep = 1.0;
  for (double l : losses) {
    if (!(l >= 0.0 && l <= 1.0)) throw InvalidInput("step loss must lie in [0, 1]");
    keep *= 1.0 - l;
  }
  return 1.0 - keep;
}

std::int64_t factor_cost(const FactorState& f, CostFunction cost) {
  const int q = static_cast<int>(f.qubits.size());
  if (cost == CostFunction::Model) return baseline_sp_count(q);
  return static_cast<std::int64_t>(lrsp(f.state).report.cnots);
}

ApproxPlan baa_search(const StateVector& psi, double budget, CostFunction cost) {
  check_budget(budget);
  const int n = psi.num_qubits();
  const std::int64_t baseline = baseline_sp_count(n);
  CostCache coster(cost);

  struct Node {
    std::vector<FactorState> done;
    std::vector<FactorState> pending;  // stack; back() is expanded next
    std::vector<PlanStep> steps;
    double keep = 1.0;  // running product of (1 - l_i)
    std::int64_t done_cost = 0;
  };

  std::optional<ApproxPlan> best;
  std::deque<Node> frontier;
  frontier.push_back(Node{{}, {FactorState{all_qubits(n), psi}}, {}, 1.0, 0});

  // Pending factors can at best be split down to single qubits at zero cost.
  auto hopeless = [&](const Node& node) {
    if (!best) return false;
    const std::int64_t bound = baseline - node.done_cost;
    const double loss = 1.0 - node.keep;
    return bound < best->saved_cnots || (bound == best->saved_cnots && loss > best->total_loss);
  };

  while (!frontier.empty()) {
    Node node = std::move(frontier.front());
    frontier.pop_front();
    if (hopeless(node)) continue;
    if (node.pending.empty()) {
      auto plan = finish(std::move(node.done), std::move(node.steps), node.done_cost, n, cost);
      if (plan.total_loss <= budget && (!best || better(plan, *best))) best = std::move(plan);
      continue;
    }
    FactorState top = std::move(node.pending.back());
    node.pending.pop_back();

    const int q = static_cast<int>(top.qubits.size());
    if (q >= 2) {
      for (const auto& bp : enumerate_bipartitions(q)) {
        auto br = branch(top, bp);
        const double keep = node.keep * (1.0 - br.step_loss);
        if (1.0 - keep > budget) continue;  // loss only grows along a path
        Node child = node;
        child.keep = keep;
        child.steps.push_back(PlanStep{top.qubits, br.a.qubits, br.step_loss});
        child.pending.push_back(std::move(br.b));
        child.pending.push_back(std::move(br.a));
        if (!hopeless(child)) frontier.push_back(std::move(child));
      }
    }
    // Keep `top` as a leaf.
    node.done_cost += coster(top);
    node.done.push_back(std::move(top));
    if (!hopeless(node)) frontier.push_back(std::move(node));
  }
  if (!best) throw InvalidInput("no plan satisfies the loss budget");
  return *std::move(best);
}

ApproxPlan brute_force_plans(const StateVector& psi, double budget, CostFunction cost) {
  check_budget(budget);
  const int n = psi.num_qubits();
  if (n > kBruteForceMaxQubits) throw ResourceLimit("exhaustive plan search is limited to 6 qubits");
  CostCache coster(cost);
  std::optional<ApproxPlan> best;
  for (auto& sub : all_trees(FactorState{all_qubits(n), psi})) {
    std::int64_t c = 0;
    for (const auto& leaf : sub.leaves) c += coster(leaf);
    auto plan = finish(std::move(sub.leaves), std::move(sub.steps), c, n, cost);
    if (plan.total_loss <= budget && (!best || better(plan, *best))) best = std::move(plan);
  }
  if (!best) throw InvalidInput("no plan satisfies the loss budget");
  return *std::move(best);
}

std::vector<double> full_product_losses(const StateVector& psi) {
  const int n = psi.num_qubits();
  if (n > kBruteForceMaxQubits) throw ResourceLimit("path enumeration is limited to 6 qubits");
  std::vector<double> out;
  for (const auto& sub : all_trees(FactorState{all_qubits(n), psi})) {
    if (static_cast<int>(sub.leaves.size()) != n) continue;
    std::vector<double> losses;
    for (const auto& s : sub.steps) losses.push_back(s.step_loss);
    out.push_back(compose_loss(losses));
  }
  return out;
}

StateVector plan_state(const ApproxPlan& plan) {
  int n = 0;
  for (const auto& f : plan.factors) n += static_cast<int>(f.qubits.size());
  if (n < 1) throw InvalidInput("plan has no factors");
  const auto dim = std::uint64_t{1} << n;
  CVector v(static_cast<Eigen::Index>(dim));
  for (std::uint64_t x = 0; x < dim; ++x) {
    Complex amp = 1.0;
    for (const auto& f : plan.factors) {
      const int q = static_cast<int>(f.qubits.size());
      std::uint64_t local = 0;
      for (int i = 0; i < q; ++i) local = (local << 1) | static_cast<std::uint64_t>(bit_of(x, f.qubits[static_cast<std::size_t>(i)], n));
      amp *= f.state[local];
    }
    v(static_cast<Eigen::Index>(x)) = amp;
  }
  return StateVector::normalized(std::move(v));
}

Circuit synth_plan(const ApproxPlan& plan, const LrspConfig& cfg) {
  int n = 0;
  for (const auto& f : plan.factors) n += static_cast<int>(f.qubits.size());
  if (n < 1) throw InvalidInput("plan has no factors");
  Circuit c(n);
  for (const auto& f : plan.factors) c.append(lrsp(f.state, cfg).circuit, f.qubits);
  return c;
}

nlohmann::json to_json(const ApproxPlan& plan) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : plan.steps) {
    steps.push_back({{"factor_qubits", s.factor_qubits}, {"subset_a", s.subset_a}, {"step_loss", s.step_loss}});
  }
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : plan.factors) factors.push_back(f.qubits);
  return {{"schema", "v1"},
          {"steps", steps},
          {"factors", factors},
          {"total_loss", plan.total_loss},
          {"predicted_cnots", plan.predicted_cnots},
          {"saved_cnots", plan.saved_cnots},
          {"cost_fn", to_string(plan.cost)}};
}

}  // namespace qsp
