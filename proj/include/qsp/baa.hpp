#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsp/circuit.hpp"
#include "qsp/state.hpp"
#include "qsp/synthesis.hpp"

namespace qsp {

/// A sub-state living on a subset of the global qubits (ascending order).
struct FactorState {
  std::vector<int> qubits;
  StateVector state;
};

struct PlanStep {
  std::vector<int> factor_qubits;  // global indices of the factor that was split
  std::vector<int> subset_a;       // global indices kept on the A side
  double step_loss = 0;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

enum class CostFunction { Model, Realized };

std::string_view to_string(CostFunction f);
CostFunction cost_function_from_string(std::string_view s);

struct ApproxPlan {
  std::vector<FactorState> factors;
  std::vector<PlanStep> steps;  // depth-first order, A side before B side
  double total_loss = 0;
  std::int64_t predicted_cnots = 0;
  std::int64_t saved_cnots = 0;  // baseline_sp_count(n) - predicted_cnots
  CostFunction cost = CostFunction::Model;
};

/// All splits of `q` local positions with 1 <= |A| <= q/2. For even q the
/// |A| = q/2 half keeps only the member containing position 0.
std::vector<Bipartition> enumerate_bipartitions(int q);

struct BranchResult {
  FactorState a;
  FactorState b;
  double step_loss = 0;
};

/// Rank-1 split of `f` over `bp` (positions local to f): the top Schmidt pair.
BranchResult branch(const FactorState& f, const Bipartition& bp);

/// 1 - prod(1 - l_i).
double compose_loss(std::span<const double> losses);

/// CNOT cost of preparing one factor under `cost`.
std::int64_t factor_cost(const FactorState& f, CostFunction cost);

/// Branch-and-bound breadth-first search for the plan with the most saved
/// CNOTs and total loss <= budget. Ties: smaller loss, then the
/// lexicographically smallest step sequence.
ApproxPlan baa_search(const StateVector& psi, double budget, CostFunction cost = CostFunction::Model);

/// Exhaustive reference for baa_search. Limited to n <= 6.
ApproxPlan brute_force_plans(const StateVector& psi, double budget, CostFunction cost = CostFunction::Model);

/// Total loss of every full-product tree (all factors single qubits).
std::vector<double> full_product_losses(const StateVector& psi);

/// Product of per-factor lrsp circuits on their global qubits.
Circuit synth_plan(const ApproxPlan& plan, const LrspConfig& cfg = {});

/// Tensor product of the plan's factors as a global state.
StateVector plan_state(const ApproxPlan& plan);

nlohmann::json to_json(const ApproxPlan& plan);

}  // namespace qsp
