#include "unital/quantumness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "unital/errors.hpp"
#include "unital/states.hpp"

using namespace unital;
using unital::testing::matrices_near;

namespace {

DensityMatrix reduced_w_system() {
  const std::vector<std::size_t> dims{2, 2, 2}, keep{0, 1};
  return partial_trace(w_unitary().state, dims, keep);
}

DensityMatrix reduced_w_environment() {
  const std::vector<std::size_t> dims{2, 2, 2}, keep{2};
  return partial_trace(w_unitary().state, dims, keep);
}

DensityMatrix plus_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_ket(r * (ket("0") + ket("1")));
}

// Exact values from the eigenvalues (2/3, 1/3, 0, 0) of rho_W^S.
const double kEntropyWs = std::log2(3.0) - 2.0 / 3.0;
const double kReqWs = 2.0 - kEntropyWs;

}  // namespace

TEST(von_neumann_entropy, examples) {
  EXPECT_NEAR(von_neumann_entropy(ghz_unitary().state), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(reduced_w_system()), kEntropyWs, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(reduced_w_system()), 0.918296, 1e-6);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(8)), 3.0, 1e-12);
}

TEST(von_neumann_entropy, bounded_by_log_dim) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 7;
    const double s = von_neumann_entropy(unital::testing::random_density(d, rng));
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, std::log2(static_cast<double>(d)) + 1e-12);
  }
}

TEST(relative_entropy, examples) {
  EXPECT_NEAR(relative_entropy(ghz_unitary().state, DensityMatrix::maximally_mixed(8)), 3.0, 1e-9);
  EXPECT_NEAR(relative_entropy(plus_state(), DensityMatrix::maximally_mixed(2)), 1.0, 1e-12);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = unital::testing::random_density(2 + trial % 4, rng);
    EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-9);
  }
}

TEST(relative_entropy, klein_inequality) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const auto rho = unital::testing::random_density(d, rng);
    const auto sigma = unital::testing::random_density(d, rng);
    EXPECT_GE(relative_entropy(rho, sigma), -1e-9);
  }
}

TEST(relative_entropy, support_violation_is_infinite) {
  const auto zero = DensityMatrix::from_ket(ket("0"));
  EXPECT_TRUE(std::isinf(relative_entropy(DensityMatrix::maximally_mixed(2), zero)));
  // Inside the support stays finite: S(|0><0| || I/2) = 1.
  EXPECT_NEAR(relative_entropy(zero, DensityMatrix::maximally_mixed(2)), 1.0, 1e-12);
  EXPECT_THROW(relative_entropy(zero, DensityMatrix::maximally_mixed(3)), DimensionMismatch);
}

TEST(dephase, examples) {
  std::vector<double> d{0.75, 0.25};
  const DensityMatrix diag_state(diagonal(d));
  EXPECT_TRUE(matrices_near(dephase(diag_state, Basis::computational(2)).matrix(), diag_state.matrix(), 0.0));
  EXPECT_TRUE(matrices_near(dephase(plus_state(), Basis::computational(2)).matrix(),
                            DensityMatrix::maximally_mixed(2).matrix(), 1e-15));
  std::vector<double> w{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0};
  EXPECT_TRUE(matrices_near(dephase(reduced_w_system(), Basis::computational(4)).matrix(), diagonal(w), 1e-15));
}

TEST(dephase, in_rotated_basis) {
  const Basis pm(standard_gate("H"));
  EXPECT_TRUE(matrices_near(dephase(plus_state(), pm).matrix(), plus_state().matrix(), 1e-15));
}

TEST(req, paper_values) {
  const auto w = req(w_unitary().state, Basis::computational(8));
  EXPECT_NEAR(w.value, 3.0, 1e-9);
  EXPECT_EQ(w.rule_applied, ReqRule::maximally_mixed_rule);

  const auto ws = req(reduced_w_system(), Basis::computational(4));
  EXPECT_NEAR(ws.value, kReqWs, 1e-12);
  EXPECT_NEAR(ws.value, 1.0817, 1e-4);
  EXPECT_NEAR(ws.value, 1.08, 0.005);

  const auto we = req(reduced_w_environment(), Basis::computational(2));
  EXPECT_EQ(we.value, 0.0);
  EXPECT_EQ(we.rule_applied, ReqRule::diagonal_rule);
  EXPECT_EQ(we.reference_state.matrix(), reduced_w_environment().matrix());

  const auto plus = req(plus_state(), Basis(standard_gate("H")));
  EXPECT_EQ(plus.value, 0.0);
  EXPECT_EQ(plus.rule_applied, ReqRule::diagonal_rule);

  EXPECT_NEAR(req(plus_state(), Basis::computational(2)).value, 1.0, 1e-12);
  EXPECT_NEAR(req(ghz_unitary().state, Basis::computational(8)).value, 3.0, 1e-9);
}

TEST(req, diagonal_tolerance_is_a_parameter) {
  const auto ws = reduced_w_system();
  EXPECT_EQ(req(ws, Basis::computational(4), 1.0).rule_applied, ReqRule::diagonal_rule);
}

TEST(req, non_diagonal_branch_equals_log_dim_minus_entropy) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 6;
    const auto rho = unital::testing::random_density(d, rng);
    const auto r = req(rho, Basis::computational(d));
    ASSERT_EQ(r.rule_applied, ReqRule::maximally_mixed_rule);
    EXPECT_NEAR(r.value, std::log2(static_cast<double>(d)) - von_neumann_entropy(rho), 1e-10);
    EXPECT_GT(r.value, 0.0);
  }
}

TEST(req, invariant_under_basis_aligned_permutation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + trial % 5;
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ComplexMatrix p(d, d);
    for (std::size_t i = 0; i < d; ++i) p(perm[i], i) = 1.0;

    const auto basis = Basis(unital::testing::random_unitary(d, rng));
    // Relabeling the basis vectors alone.
    const Basis relabeled(basis.matrix() * p);
    const auto rho = unital::testing::random_density(d, rng);
    const auto a = req(rho, basis);
    const auto b = req(rho, relabeled);
    EXPECT_EQ(a.rule_applied, b.rule_applied);
    EXPECT_NEAR(a.value, b.value, 1e-12);

    // Permuting a diagonal state together with the computational basis.
    std::vector<double> w(d);
    std::exponential_distribution<double> ex(1.0);
    double total = 0.0;
    for (auto& x : w) total += (x = ex(rng));
    for (auto& x : w) x /= total;
    const DensityMatrix diag_state(diagonal(w));
    const DensityMatrix permuted(p * diag_state.matrix() * p.adjoint());
    EXPECT_EQ(req(permuted, Basis::computational(d)).rule_applied, ReqRule::diagonal_rule);
  }
}

TEST(req, quantumness_narrative) {
  const std::vector<std::size_t> dims{2, 2, 2}, keep{0, 1};
  const auto ghz_s = partial_trace(ghz_unitary().state, dims, keep);
  const auto initial_00 = DensityMatrix::from_ket(ket("00"));
  EXPECT_EQ(req(ghz_s, Basis::computational(4)).value, 0.0);
  EXPECT_EQ(req(initial_00, Basis::computational(4)).value, 0.0);

  const auto initial_10 = DensityMatrix::from_ket(ket("10"));
  EXPECT_GT(req(reduced_w_system(), Basis::computational(4)).value,
            req(initial_10, Basis::computational(4)).value);
}
