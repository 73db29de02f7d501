// SPDX-License-Identifier: Apache-2.0
#include "rzk/verifiers.h"

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

ProjectorFamily single(const Vector& v) { return ProjectorFamily({density(v)}); }

TEST(TwoMeasBound, IdenticalFamilies) {
  const auto r = check_two_meas_bound(single(ket(2, 0)), single(ket(2, 0)), density(ket(2, 0)));
  EXPECT_NEAR(r.f1, 1.0, 1e-12);
  EXPECT_NEAR(r.f2, 1.0, 1e-12);
  EXPECT_NEAR(r.rhs, 0.5, 1e-12);
  EXPECT_TRUE(r.applicable);
  EXPECT_TRUE(r.holds);
}

TEST(TwoMeasBound, ZeroAndPlus) {
  // Hand computation: F1 = (1 + 1/2)/2, F2 = (1/2 + 1/4)/2.
  const auto r = check_two_meas_bound(single(ket(2, 0)), single(plus()), density(ket(2, 0)));
  EXPECT_NEAR(r.f1, 0.75, 1e-12);
  EXPECT_NEAR(r.f2, 0.375, 1e-12);
  EXPECT_NEAR(r.rhs, 0.125, 1e-12);
  EXPECT_TRUE(r.holds);
}

TEST(TwoMeasBound, VacuousAtOneHalf) {
  const auto r = check_two_meas_bound(single(ket(2, 0)), single(ket(2, 1)), density(ket(2, 0)));
  EXPECT_NEAR(r.f1, 0.5, 1e-12);
  EXPECT_FALSE(r.applicable);
  EXPECT_TRUE(r.holds);
}

TEST(TwoMeasBound, RejectsBrokenFamilies) {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 1.5;
  EXPECT_THROW(check_two_meas_bound(ProjectorFamily::unchecked({bad}), single(ket(2, 0)),
                                    density(ket(2, 0))),
               ConfigError);
}

TEST(ChaBound, IdenticalFamiliesAndTwoMeasExample) {
  const auto same = check_cha_bound({single(ket(2, 0)), single(ket(2, 0)), single(ket(2, 0))},
                                    density(ket(2, 0)));
  EXPECT_NEAR(same.f1, 1.0, 1e-12);
  EXPECT_NEAR(same.f2, 1.0, 1e-12);
  EXPECT_TRUE(same.holds);
  const auto r = check_cha_bound({single(ket(2, 0)), single(plus())}, density(ket(2, 0)));
  EXPECT_NEAR(r.f2, 0.375, 1e-12);
  EXPECT_NEAR(r.rhs, 0.25 * 0.25 * 0.25 / 64.0, 1e-15);
  EXPECT_NEAR(r.rhs, 2.44e-4, 1e-6);
  EXPECT_TRUE(r.holds);
}

TEST(DonBound, Examples) {
  const Matrix w0 = density(ket(2, 0));
  const auto equal = check_don_bound({w0, w0, w0}, ket(2, 0), 3);
  EXPECT_NEAR(equal.f2, 1.0, 1e-12);
  EXPECT_NEAR(equal.rhs, 1.0, 1e-12);
  EXPECT_TRUE(equal.holds);
  const auto r = check_don_bound({w0, density(plus())}, ket(2, 0), 2);
  EXPECT_NEAR(r.f1, 0.75, 1e-12);
  EXPECT_NEAR(r.f2, 9.0 / 16.0, 1e-12);
  EXPECT_NEAR(r.rhs, 0.421875, 1e-12);
  EXPECT_TRUE(r.holds);
  Rng rng(1);
  const Vector psi = random_state(4, rng);
  const auto f = random_family(4, 2, false, rng);
  const auto t1 = check_don_bound({f[0], f[1]}, psi, 1);
  EXPECT_NEAR(t1.f2, t1.f1, 1e-12);
}

TEST(Gentle, Examples) {
  Rng rng(2);
  const Matrix sigma = random_density(3, rng);
  const auto full = check_gentle(sigma, identity(3));
  EXPECT_NEAR(full.lhs, 0.0, 1e-10);
  EXPECT_NEAR(full.rhs, 0.0, 1e-6);
  EXPECT_TRUE(full.holds);
  const auto orth = check_gentle(density(ket(2, 0)), density(ket(2, 1)));
  EXPECT_NEAR(orth.rhs, 2.0, 1e-12);
  EXPECT_NEAR(orth.lhs, 1.0, 1e-12);
  EXPECT_TRUE(orth.holds);
  EXPECT_THROW(check_gentle(sigma, 2.0 * identity(3)), ConfigError);
}

TEST(Claim20, InvariantStateHasZeroDisturbance) {
  const int d = 3;
  Vector ghz = Vector::Zero(27);
  for (int k = 0; k < d; ++k) ghz((k * d + k) * d + k) = 1.0;
  ghz /= ghz.norm();
  const auto r = check_claim20(ghz, d, ProjectorFamily::computational_basis(d));
  EXPECT_NEAR(r.pi_12, 1.0, 1e-12);
  EXPECT_NEAR(r.rhs, 0.0, 1e-6);
  EXPECT_NEAR(r.lhs, 0.0, 1e-12);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.tight_holds);
  // |000> is left alone by any measurement diagonal in its basis.
  const auto product = check_claim20(Vector::Unit(27, 0), d, ProjectorFamily::computational_basis(d));
  EXPECT_NEAR(product.lhs, 0.0, 1e-12);
}

TEST(Claim20, RandomSymmetricStatesSatisfyBothBounds) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto r = random_claim20_instance(rng);
    ASSERT_TRUE(r.holds);
    ASSERT_TRUE(r.tight_holds);
  }
}

TEST(Coupling, FixedAnswerAlwaysWins) {
  GameSpec g;
  g.num_x = 1;
  g.num_a = 2;
  g.num_b = 2;
  g.wins.assign(8, false);
  for (int a = 0; a < 2; ++a) {
    for (int y = 0; y < 2; ++y) g.wins[static_cast<std::size_t>(((a * 2 + 0) * 1 + 0) * 2 + y)] = true;
  }
  g.alice_dim = 2;
  g.bob_dim = 2;
  g.state = Vector::Unit(4, 0);
  g.alice = {ProjectorFamily::computational_basis(2)};
  g.bob = {ProjectorFamily::computational_basis(2), ProjectorFamily::computational_basis(2)};
  const auto r = coupling_game_eval(g);
  EXPECT_NEAR(r.omega, 1.0, 1e-12);
  EXPECT_NEAR(r.omega_coup, 1.0, 1e-12);
  EXPECT_EQ(r.s_max, 1);
  EXPECT_NEAR(r.rhs, 0.5, 1e-12);
  EXPECT_TRUE(r.holds);
}

TEST(Coupling, HalfValueIsVacuous) {
  GameSpec g;
  g.num_x = 1;
  g.num_a = 2;
  g.num_b = 2;
  g.wins.assign(8, false);
  // Bob wins iff b = 0 when y = 0; never when y = 1.
  for (int a = 0; a < 2; ++a) g.wins[static_cast<std::size_t>(((a * 2 + 0) * 1 + 0) * 2 + 0)] = true;
  g.alice_dim = 2;
  g.bob_dim = 2;
  g.state = Vector::Unit(4, 0);
  g.alice = {ProjectorFamily::computational_basis(2)};
  g.bob = {ProjectorFamily::computational_basis(2), ProjectorFamily::computational_basis(2)};
  const auto r = coupling_game_eval(g);
  EXPECT_NEAR(r.omega, 0.5, 1e-12);
  EXPECT_FALSE(r.applicable);
  EXPECT_TRUE(r.holds);
}

TEST(Suites, SmallRunsHaveNoViolations) {
  for (Theorem t : all_theorems()) {
    for (const auto& row : run_suite(t, 50, 17)) ASSERT_TRUE(row.holds) << row.instance_id;
  }
}

TEST(Suites, CorruptionIsDetected) {
  for (Theorem t : all_theorems()) {
    const auto rows = run_suite(t, 2, 1, true);
    EXPECT_FALSE(rows[0].holds);
    EXPECT_TRUE(rows[1].holds);
  }
}

TEST(Suites, RowsAreReproducible) {
  const auto a = run_suite(Theorem::coupling, 5, 99);
  const auto b = run_suite(Theorem::coupling, 5, 99);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].seed, b[i].seed);
    EXPECT_EQ(a[i].f1, b[i].f1);
    EXPECT_EQ(a[i].f2_or_ft, b[i].f2_or_ft);
  }
}

TEST(Suites, TwoMeasDominatesChaAtTwoFamilies) {
  // Logged rather than asserted per instance: count how often the
  // two-measurement bound is the larger one in the improvement regime.
  Rng rng(5);
  int regime = 0, dominated = 0;
  for (int i = 0; i < 500; ++i) {
    const int d = 2 + static_cast<int>(rng.uniform_below(7));
    const auto f1 = random_family(d, 1 + static_cast<int>(rng.uniform_below(std::min(4, d))), false, rng);
    const auto f2 = random_family(d, 1 + static_cast<int>(rng.uniform_below(std::min(4, d))), false, rng);
    const Matrix sigma = random_density(d, rng);
    const auto two = check_two_meas_bound(f1, f2, sigma);
    if (two.f1 <= 0.6) continue;
    ++regime;
    const auto cha = check_cha_bound({f1, f2}, sigma);
    if (two.rhs >= cha.rhs) ++dominated;
  }
  RecordProperty("regime", regime);
  RecordProperty("dominated", dominated);
  EXPECT_EQ(regime, dominated);
}

}  // namespace
}  // namespace rzk
