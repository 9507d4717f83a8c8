#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qsp/errors.hpp"
#include "qsp/measures.hpp"
#include "test_util.hpp"

using namespace qsp;

TEST(Purity, PublishedSpectrum) {
  Eigen::VectorXd s(4);
  s << 0.9033, 0.3256, 0.2348, 0.1509;
  EXPECT_NEAR(purity_from_sigma(s / s.norm()), 0.6807, 5e-4);
}

TEST(Purity, ProductAndBell) {
  EXPECT_DOUBLE_EQ(purity_from_sigma(Eigen::VectorXd::Ones(1)), 1.0);
  EXPECT_NEAR(purity_from_sigma(Eigen::VectorXd::Constant(2, 1 / std::sqrt(2.0))), 0.5, 1e-15);
}

TEST(Purity, RejectsUnnormalizedSpectrum) {
  Eigen::VectorXd s(2);
  s << 0.9, 0.3;
  EXPECT_THROW(purity_from_sigma(s), InvalidInput);
}

TEST(SchmidtMeasure, Values) {
  EXPECT_DOUBLE_EQ(schmidt_measure(2), 1.0);
  EXPECT_DOUBLE_EQ(schmidt_measure(1), 0.0);
  EXPECT_EQ(m_of(1), 0);
  EXPECT_NEAR(schmidt_measure(5), 2.321928094887362, 1e-12);
  EXPECT_EQ(m_of(5), 3);
  EXPECT_EQ(m_of(4), 2);
  EXPECT_EQ(m_of(2), 1);
  EXPECT_THROW(schmidt_measure(0), InvalidInput);
  EXPECT_THROW(m_of(0), InvalidInput);
}

TEST(MeyerWallach, ProductGhzW) {
  Rng rng(3);
  EXPECT_NEAR(meyer_wallach(random_product_state(5, rng)), 0.0, 1e-12);
  EXPECT_NEAR(meyer_wallach(test::ghz3()), 1.0, 1e-12);
  EXPECT_NEAR(meyer_wallach(test::w3()), 8.0 / 9.0, 1e-12);
  EXPECT_THROW(meyer_wallach(StateVector::basis(1, 0)), InvalidInput);
}

TEST(MeyerWallach, InvariantUnderLocalUnitaries) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto psi = random_symmetric_state(n, rng);
    const auto q0 = meyer_wallach(psi);
    EXPECT_GE(q0, 0.0);
    EXPECT_LE(q0, 1.0);
    CVector v = psi.amplitudes();
    for (int q = 0; q < n; ++q) v = test::apply_local(random_unitary(2, rng), q, v);
    EXPECT_NEAR(meyer_wallach(StateVector::normalized(v)), q0, 1e-9);
  }
}

TEST(Fidelity, BasicCases) {
  Rng rng(7);
  const auto psi = random_state(3, rng);
  EXPECT_NEAR(fidelity(psi, psi), 1.0, 1e-14);
  EXPECT_EQ(fidelity(StateVector::basis(1, 0), StateVector::basis(1, 1)), 0.0);
  EXPECT_THROW(fidelity(StateVector::basis(1, 0), StateVector::basis(2, 0)), InvalidInput);
}

TEST(Fidelity, SymmetricAndPhaseBlind) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_symmetric_state(4, rng);
    const auto b = random_symmetric_state(4, rng);
    const Complex ph = std::polar(1.0, 2 * std::numbers::pi * uniform01(rng));
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-15);
    EXPECT_NEAR(fidelity(StateVector(ph * a.amplitudes()), StateVector(ph * b.amplitudes())), fidelity(a, b), 1e-14);
  }
}

TEST(Fidelity, TruncatedReconstructionLosesExactlyTheTail) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = random_symmetric_state(4, rng);
    const auto sd = schmidt_decompose(psi, Bipartition::half_split(4));
    for (int r = 1; r <= 4; ++r) {
      EXPECT_NEAR(fidelity(psi, reconstruct(sd, r)), 1.0 - truncate(sd, r).loss, 1e-12);
    }
  }
}

TEST(MeasureProperties, PurityBoundsAndTruncationMonotonicity) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const auto sd = schmidt_decompose(random_symmetric_state(n, rng), Bipartition::half_split(n));
    const double p = purity_from_sigma(sd.sigma);
    EXPECT_GE(p, 1.0 / sd.rank - 1e-12);
    EXPECT_LE(p, 1.0 + 1e-12);
    EXPECT_LT(p, 1.0 - 1e-9);  // generic states are entangled across the cut
    double prev_loss = 2.0;
    for (int r = 1; r <= sd.rank; ++r) {
      const auto t = truncate(sd, r);
      EXPECT_LE(t.loss, prev_loss);
      prev_loss = t.loss;
      EXPECT_GE(purity_from_sigma(t.sigma_prime), p - 1e-12);
    }
  }
  EXPECT_NEAR(purity_from_sigma(schmidt_decompose(random_product_state(4, rng), Bipartition::half_split(4)).kept_sigma()),
              1.0, 1e-12);
}

TEST(Measure, ReportForBell) {
  const auto r = measure(test::bell(), Bipartition({0}, {1}));
  EXPECT_EQ(r.schmidt_rank, 2);
  EXPECT_DOUBLE_EQ(r.schmidt_measure, 1.0);
  EXPECT_EQ(r.m_qubits, 1);
  EXPECT_NEAR(r.purity, 0.5, 1e-12);
  EXPECT_NEAR(r.meyer_wallach, 1.0, 1e-12);
}
