#include <algorithm>
#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "qsp/baa.hpp"
#include "qsp/cost_model.hpp"
#include "qsp/errors.hpp"
#include "qsp/measures.hpp"
#include "qsp/simulator.hpp"
#include "test_util.hpp"

using namespace qsp;

namespace {

FactorState whole(const StateVector& psi) {
  std::vector<int> q(static_cast<std::size_t>(psi.num_qubits()));
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = static_cast<int>(i);
  return {q, psi};
}

}  // namespace

TEST(EnumerateBipartitions, Counts) {
  EXPECT_EQ(enumerate_bipartitions(2).size(), 1u);
  EXPECT_EQ(enumerate_bipartitions(3).size(), 3u);
  EXPECT_EQ(enumerate_bipartitions(4).size(), 7u);
  EXPECT_EQ(enumerate_bipartitions(6).size(), 6u + 15u + 10u);
  EXPECT_THROW(enumerate_bipartitions(1), InvalidInput);
}

TEST(EnumerateBipartitions, NoComplementDuplicates) {
  for (int q = 2; q <= 8; ++q) {
    const auto all = enumerate_bipartitions(q);
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_LE(2 * all[i].a().size(), static_cast<std::size_t>(q));
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        EXPECT_FALSE(all[i] == all[j]);
        EXPECT_FALSE(all[i].a() == all[j].b());
      }
    }
  }
}

TEST(Branch, ProductFactorIsLossless) {
  Rng rng(1);
  const auto f = whole(random_product_state(4, rng));
  for (const auto& bp : enumerate_bipartitions(4)) EXPECT_NEAR(branch(f, bp).step_loss, 0.0, 1e-12);
}

TEST(Branch, BellAndGhz) {
  const auto bell = branch(whole(test::bell()), Bipartition::from_subset(2, {0}));
  EXPECT_NEAR(bell.step_loss, 0.5, 1e-12);
  EXPECT_EQ(bell.a.qubits, std::vector<int>{0});
  EXPECT_EQ(bell.b.qubits, std::vector<int>{1});
  EXPECT_NEAR(std::abs(bell.a.state[0]), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(bell.b.state[0]), 1.0, 1e-12);

  const auto ghz = branch(whole(test::ghz3()), Bipartition::from_subset(3, {0}));
  EXPECT_NEAR(ghz.step_loss, 0.5, 1e-12);
  EXPECT_EQ(ghz.b.qubits, (std::vector<int>{1, 2}));
  EXPECT_NEAR(std::abs(ghz.a.state[0]), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(ghz.b.state[0]), 1.0, 1e-12);
}

TEST(Branch, MapsLocalPositionsToGlobalQubits) {
  Rng rng(2);
  const FactorState f{{1, 4, 6}, random_state(3, rng)};
  const auto r = branch(f, Bipartition::from_subset(3, {1}));
  EXPECT_EQ(r.a.qubits, std::vector<int>{4});
  EXPECT_EQ(r.b.qubits, (std::vector<int>{1, 6}));
}

TEST(ComposeLoss, Examples) {
  EXPECT_EQ(compose_loss(std::vector<double>{0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(compose_loss(std::vector<double>{0.25}), 0.25);
  const double second = 1 - 0.6915 / 0.9417;
  EXPECT_NEAR(second, 0.2656897, 1e-7);
  EXPECT_NEAR(compose_loss(std::vector<double>{0.0583, second}), 0.3085, 1e-4);
  EXPECT_EQ(compose_loss(std::vector<double>{}), 0.0);
}

TEST(FactorCost, ModelAndRealized) {
  Rng rng(3);
  const auto f = whole(random_state(5, rng));
  EXPECT_EQ(factor_cost(f, CostFunction::Model), 26);
  EXPECT_EQ(factor_cost(f, CostFunction::Realized), static_cast<std::int64_t>(lrsp(f.state).report.cnots));
  EXPECT_EQ(factor_cost(whole(StateVector::zero(1)), CostFunction::Model), 0);
}

TEST(CostFunctionNames, RoundTrip) {
  for (auto f : {CostFunction::Model, CostFunction::Realized}) EXPECT_EQ(cost_function_from_string(to_string(f)), f);
  EXPECT_THROW(cost_function_from_string("optimal"), InvalidInput);
}

TEST(BaaSearch, ZeroBudgetKeepsEntangledStateWhole) {
  Rng rng(4);
  const auto plan = baa_search(random_state(4, rng), 0.0);
  EXPECT_TRUE(plan.steps.empty());
  EXPECT_EQ(plan.factors.size(), 1u);
  EXPECT_EQ(plan.saved_cnots, 0);
  EXPECT_EQ(plan.total_loss, 0.0);
}

TEST(BaaSearch, FullBudgetGivesFullProduct) {
  Rng rng(5);
  const auto plan = baa_search(random_state(3, rng), 1.0);
  EXPECT_EQ(plan.factors.size(), 3u);
  EXPECT_EQ(plan.saved_cnots, 4);
  EXPECT_EQ(plan.predicted_cnots, 0);
}

TEST(BaaSearch, RejectsBadBudget) {
  EXPECT_THROW(baa_search(test::bell(), -0.1), InvalidInput);
  EXPECT_THROW(baa_search(test::bell(), 1.5), InvalidInput);
}

TEST(BaaSearch, PlanInvariants) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 3;
    const double budget = 0.05 * (1 + trial % 5);
    const auto psi = random_state(n, rng);
    const auto plan = baa_search(psi, budget);
    EXPECT_LE(plan.total_loss, budget);
    std::vector<double> losses;
    for (const auto& s : plan.steps) losses.push_back(s.step_loss);
    EXPECT_NEAR(plan.total_loss, compose_loss(losses), 1e-12);
    EXPECT_EQ(plan.saved_cnots, baseline_sp_count(n) - plan.predicted_cnots);
    std::vector<int> seen(n, 0);
    std::int64_t cost = 0;
    for (const auto& f : plan.factors) {
      for (int q : f.qubits) ++seen[q];
      cost += factor_cost(f, CostFunction::Model);
    }
    EXPECT_EQ(cost, plan.predicted_cnots);
    for (int c : seen) EXPECT_EQ(c, 1);
  }
}

TEST(BruteForce, Examples) {
  Rng rng(7);
  const auto product = brute_force_plans(random_product_state(4, rng), 0.0);
  EXPECT_EQ(product.factors.size(), 4u);
  EXPECT_NEAR(product.total_loss, 0.0, 1e-12);
  EXPECT_EQ(product.saved_cnots, baseline_sp_count(4));

  const auto ghz = brute_force_plans(test::ghz3(), 0.4);
  EXPECT_TRUE(ghz.steps.empty());
  EXPECT_EQ(baa_search(test::ghz3(), 0.4).saved_cnots, 0);

  EXPECT_THROW(brute_force_plans(random_state(7, rng), 0.1), ResourceLimit);
}

TEST(BruteForce, BellWithFreeQubit) {
  Rng rng(8);
  const StateVector psi(test::kron(test::bell().amplitudes(), random_state(1, rng).amplitudes()));
  for (double budget : {0.0, 0.3, 0.6}) {
    const auto brute = brute_force_plans(psi, budget);
    const auto search = baa_search(psi, budget);
    EXPECT_EQ(brute.saved_cnots, search.saved_cnots) << budget;
    EXPECT_NEAR(brute.total_loss, search.total_loss, 1e-12) << budget;
  }
  // Splitting off the free qubit is lossless and saves 3 of 4.
  EXPECT_EQ(baa_search(psi, 0.0).saved_cnots, 3);
  EXPECT_EQ(baa_search(psi, 0.6).saved_cnots, 4);
}

TEST(BaaProperties, OracleEquivalence) {
  Rng rng(9);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 3 + trial % 3;
    const auto psi = random_state(n, rng);
    for (double budget : {0.01, 0.05, 0.1, 0.3}) {
      for (auto cost : {CostFunction::Model, CostFunction::Realized}) {
        const auto s = baa_search(psi, budget, cost);
        const auto b = brute_force_plans(psi, budget, cost);
        EXPECT_EQ(s.saved_cnots, b.saved_cnots) << "n=" << n << " budget=" << budget;
        EXPECT_EQ(s.steps, b.steps);
      }
    }
  }
}

TEST(SynthPlan, SingleFactorEqualsLrsp) {
  Rng rng(10);
  const auto psi = random_state(4, rng);
  const auto plan = baa_search(psi, 0.0);
  EXPECT_EQ(synth_plan(plan), lrsp(psi).circuit);
}

TEST(SynthPlan, FullProductHasNoCnots) {
  Rng rng(11);
  const auto psi = random_state(4, rng);
  const auto plan = baa_search(psi, 1.0);
  EXPECT_EQ(cnot_count(synth_plan(plan)), 0u);
}

TEST(SynthPlan, FidelityMatchesPlanState) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 4;
    const auto psi = random_state(n, rng);
    const auto plan = baa_search(psi, 0.05 * (trial % 7));
    EXPECT_NEAR(fidelity(simulate(synth_plan(plan)), psi), fidelity(plan_state(plan), psi), 1e-9);
  }
}

TEST(LossComposition, ExactAlongAChain) {
  // Each split only refines the factor produced by the previous one.
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 4;
    const auto psi = random_state(n, rng);
    std::vector<FactorState> kept;
    FactorState cur = whole(psi);
    std::vector<double> losses;
    while (cur.qubits.size() > 1) {
      const int q = static_cast<int>(cur.qubits.size());
      const auto r = branch(cur, Bipartition::from_subset(q, {static_cast<int>(rng() % q)}));
      losses.push_back(r.step_loss);
      kept.push_back(r.a);
      cur = r.b;
    }
    kept.push_back(cur);
    ApproxPlan plan;
    plan.factors = kept;
    EXPECT_NEAR(fidelity(plan_state(plan), psi), 1 - compose_loss(losses), 1e-10);
  }
}

TEST(LossComposition, CrossTermsWhenBothChildrenSplit) {
  // Splitting both halves leaves overlaps between the discarded Schmidt
  // terms and the approximated children, so 1 - prod(1 - l_i) is only an
  // estimate of the realized loss.
  Rng rng(16);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = random_state(4, rng);
    const auto top = branch(whole(psi), Bipartition::from_subset(4, {0, 1}));
    const auto a = branch(top.a, Bipartition::from_subset(2, {0}));
    const auto b = branch(top.b, Bipartition::from_subset(2, {0}));
    ApproxPlan plan;
    plan.factors = {a.a, a.b, b.a, b.b};
    const double composed = compose_loss(std::vector<double>{top.step_loss, a.step_loss, b.step_loss});
    worst = std::max(worst, std::abs(1 - fidelity(plan_state(plan), psi) - composed));
  }
  EXPECT_GT(worst, 1e-4);
}

TEST(FullProductLosses, OnePerTreeWithinBudgetRange) {
  Rng rng(13);
  const auto losses = full_product_losses(random_state(3, rng));
  // 3 first cuts, each leaving exactly one 2-qubit factor.
  EXPECT_EQ(losses.size(), 3u);
  for (double l : losses) {
    EXPECT_GE(l, 0.0);
    EXPECT_LE(l, 1.0);
  }
  const auto product = full_product_losses(random_product_state(4, rng));
  for (double l : product) EXPECT_NEAR(l, 0.0, 1e-10);
}

TEST(PlanJson, Shape) {
  Rng rng(14);
  const auto plan = baa_search(random_state(3, rng), 1.0);
  const auto j = to_json(plan);
  EXPECT_EQ(j.at("schema"), "v1");
  EXPECT_EQ(j.at("cost_fn"), "model");
  EXPECT_EQ(j.at("saved_cnots"), 4);
  EXPECT_EQ(j.at("steps").size(), plan.steps.size());
  EXPECT_TRUE(j.at("steps")[0].contains("subset_a"));
}
