// SPDX-License-Identifier: Apache-2.0
#include "rzk/quantum.h"

#include <gtest/gtest.h>

#include <cmath>

#include "rzk/errors.h"

namespace rzk {
namespace {

Vector ket(int dim, int i) { return Vector::Unit(dim, i); }

Vector plus() {
  Vector v(2);
  v << 1.0, 1.0;
  return v / std::sqrt(2.0);
}

TEST(MeasureProjective, PlusStateInComputationalBasis) {
  const auto family = ProjectorFamily::computational_basis(2);
  const Matrix rho = density(plus());
  for (int s = 0; s < 2; ++s) {
    const auto branch = measure_branch(rho, family, s);
    EXPECT_NEAR(branch.probability, 0.5, 1e-12);
    EXPECT_LT((branch.post_state - density(ket(2, s))).norm(), 1e-12);
  }
  Rng rng(1);
  int zeros = 0;
  for (int i = 0; i < 4000; ++i) zeros += measure_projective(rho, family, rng).outcome == 0;
  EXPECT_NEAR(zeros, 2000, 5 * std::sqrt(1000.0));
}

TEST(MeasureProjective, EigenstateIsUndisturbed) {
  const auto family = ProjectorFamily::computational_basis(3);
  Rng rng(2);
  const auto r = measure_projective(density(ket(3, 1)), family, rng);
  EXPECT_EQ(r.outcome, 1);
  EXPECT_NEAR(r.probability, 1.0, 1e-12);
  EXPECT_LT((r.post_state - density(ket(3, 1))).norm(), 1e-12);
  const auto v = measure_projective(ket(3, 2), family, rng);
  EXPECT_EQ(v.outcome, 2);
}

TEST(MeasureProjective, ProbabilitiesSumToOne) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform_below(7));
    const auto family = random_family(d, 1 + static_cast<int>(rng.uniform_below(d)), true, rng);
    const Matrix rho = random_density(d, rng);
    double total = 0.0;
    for (int s = 0; s < family.size(); ++s) total += (family[s] * rho).trace().real();
    ASSERT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(MeasureProjective, Errors) {
  const auto family = ProjectorFamily::computational_basis(2);
  EXPECT_THROW(measure_branch(density(ket(2, 0)), family, 1), DomainError);
  Rng rng(4);
  const ProjectorFamily partial({density(ket(2, 0))});
  EXPECT_THROW(measure_projective(density(ket(2, 0)), partial, rng), ConfigError);
}

TEST(TraceNormDistance, Examples) {
  EXPECT_NEAR(trace_norm_distance(density(plus()), density(plus())), 0.0, 1e-12);
  EXPECT_NEAR(trace_norm_distance(density(ket(2, 0)), density(ket(2, 1))), 2.0, 1e-12);
  Matrix mixed = identity(2) / 2.0;
  EXPECT_NEAR(trace_norm_distance(density(ket(2, 0)), mixed), 1.0, 1e-12);
}

TEST(ProjectorFamily, RejectsInvalidMembers) {
  Matrix half = identity(2) * 0.5;
  EXPECT_THROW(ProjectorFamily({half}), ConfigError);
  EXPECT_THROW(ProjectorFamily({density(ket(2, 0)), density(plus())}), ConfigError);
  Matrix nonhermitian = Matrix::Zero(2, 2);
  nonhermitian(0, 1) = 1.0;
  EXPECT_THROW(ProjectorFamily({nonhermitian}), ConfigError);
  EXPECT_THROW(ProjectorFamily({density(ket(2, 0)), density(ket(3, 1))}), ConfigError);
}

TEST(RandomFamily, AlwaysSatisfiesInvariants) {
  Rng rng(5);
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform_below(7));
    const int outcomes = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(std::min(4, d))));
    const bool complete = rng.coin();
    const auto family = random_family(d, outcomes, complete, rng);
    ASSERT_NO_THROW(family.validate());
    ASSERT_EQ(family.size(), outcomes);
    const Matrix total = family.total();
    ASSERT_LT((total * total - total).norm(), kStructuralTolerance);
    if (complete) ASSERT_TRUE(family.is_complete());
  }
}

TEST(RandomGenerators, ProduceValidObjects) {
  Rng rng(6);
  for (int d = 1; d <= 8; ++d) {
    EXPECT_TRUE(is_unitary(haar_unitary(d, rng)));
    EXPECT_NEAR(random_state(d, rng).norm(), 1.0, 1e-12);
    EXPECT_TRUE(is_density(random_density(d, rng)));
    EXPECT_TRUE(is_effect(random_effect(d, rng)));
  }
}

TEST(RandomSymmetricState, InvariantUnderSwaps) {
  Rng rng(7);
  const int d = 3;
  const Vector psi = random_symmetric_state(d, rng);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        const Complex v = psi((i * d + j) * d + k);
        EXPECT_LT(std::abs(v - psi((j * d + i) * d + k)), 1e-12);
        EXPECT_LT(std::abs(v - psi((i * d + k) * d + j)), 1e-12);
      }
    }
  }
}

TEST(TensorHelpers, ApplyLocalMatchesEmbed) {
  Rng rng(8);
  const std::vector<int> dims = {2, 3, 2};
  const Vector psi = random_state(12, rng);
  for (int site = 0; site < 3; ++site) {
    const Matrix u = haar_unitary(dims[static_cast<std::size_t>(site)], rng);
    EXPECT_LT((apply_local(psi, u, dims, site) - embed(u, dims, site) * psi).norm(), 1e-12);
  }
}

TEST(TensorHelpers, PartialTraceOfProductState) {
  Rng rng(9);
  const Matrix a = random_density(2, rng);
  const Matrix b = random_density(3, rng);
  const Matrix c = random_density(2, rng);
  const Matrix abc = kron(kron(a, b), c);
  const std::vector<int> dims = {2, 3, 2};
  EXPECT_LT((partial_trace(abc, dims, {0}) - a).norm(), 1e-12);
  EXPECT_LT((partial_trace(abc, dims, {1}) - b).norm(), 1e-12);
  EXPECT_LT((partial_trace(abc, dims, {0, 2}) - kron(a, c)).norm(), 1e-12);
  EXPECT_LT((partial_trace(abc, dims, {0, 1, 2}) - abc).norm(), 1e-12);
}

TEST(PsdSqrt, SquaresBack) {
  Rng rng(10);
  const Matrix x = random_effect(5, rng);
  const Matrix r = psd_sqrt(x);
  EXPECT_LT((r * r - x).norm(), 1e-10);
}

}  // namespace
}  // namespace rzk
