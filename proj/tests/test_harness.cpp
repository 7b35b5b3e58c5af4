#include "unital/harness.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "unital/channels.hpp"
#include "unital/errors.hpp"

using namespace unital;
using unital::testing::matrices_near;

TEST(sample_haar_unitary, scalar_case) {
  const auto u = sample_haar_unitary(1, std::uint64_t{9});
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
}

TEST(sample_haar_unitary, deterministic_and_unitary) {
  for (std::size_t d : {2u, 3u, 8u, 16u, 64u}) {
    const auto a = sample_haar_unitary(d, std::uint64_t{1234});
    const auto b = sample_haar_unitary(d, std::uint64_t{1234});
    EXPECT_EQ(a, b);
    EXPECT_LE(unitarity_defect(a), 1e-10) << d;
  }
  EXPECT_NE(sample_haar_unitary(2, std::uint64_t{1}), sample_haar_unitary(2, std::uint64_t{2}));
}

TEST(sample_haar_unitary, haar_moments_at_d2) {
  // E|U00|^2 = 1/d and E|U00|^4 = 2/(d(d+1)) under the Haar measure.
  std::mt19937_64 rng(77);
  const int n = 10000;
  double m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = std::norm(sample_haar_unitary(2, rng)(0, 0));
    m2 += p;
    m4 += p * p;
  }
  EXPECT_NEAR(m2 / n, 0.5, 0.02);
  EXPECT_NEAR(m4 / n, 1.0 / 3.0, 0.02);
}

TEST(sample_controlled_unitary, block_diagonal_in_environment_index) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t ds = 2 + seed % 3, de = 2 + seed % 2;
    const auto u = sample_controlled_unitary(ds, de, seed);
    EXPECT_LE(unitarity_defect(u), 1e-10);
    for (std::size_t r = 0; r < ds * de; ++r)
      for (std::size_t c = 0; c < ds * de; ++c)
        if (r % de != c % de) EXPECT_EQ(u(r, c), Complex{}) << r << "," << c;
  }
}

TEST(sample_controlled_unitary, identity_blocks_give_identity) {
  const std::vector<ComplexMatrix> blocks(3, ComplexMatrix::identity(2));
  EXPECT_EQ(controlled_unitary(blocks, Basis::computational(3)), ComplexMatrix::identity(6));
}

TEST(sample_controlled_unitary, system_channel_is_random_unitary) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = sample_controlled_unitary(3, 2, rng);
    const auto env = sample_state(2, StateSpec::random_diagonal, rng);
    const auto k = extract_system_kraus(u, 3, 2, env).pruned();
    ASSERT_EQ(k.size(), 2u);
    double total = 0.0;
    for (const auto& op : k.operators()) {
      const double p = std::norm(op.frobenius_norm()) / 3.0;  // ||sqrt(p) U||_F^2 = p d
      total += p;
      EXPECT_LE(unitarity_defect((1.0 / std::sqrt(p)) * op), 1e-10);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(sample_state, specs_produce_valid_states) {
  std::mt19937_64 rng(4);
  for (auto spec : {StateSpec::pure_basis, StateSpec::random_diagonal, StateSpec::random_mixed}) {
    for (int i = 0; i < 20; ++i) {
      const auto rho = sample_state(4, spec, rng);
      EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
      if (spec == StateSpec::pure_basis) EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
      if (spec != StateSpec::random_mixed) {
        for (std::size_t r = 0; r < 4; ++r)
          for (std::size_t c = 0; c < 4; ++c)
            if (r != c) EXPECT_EQ(rho.matrix()(r, c), Complex{});
      }
    }
  }
}

TEST(classify, rule) {
  EXPECT_EQ(classify(0.0, 1e-11, 1e-10), Classification::both_unital);
  EXPECT_EQ(classify(1e-10, 1e-10, 1e-10), Classification::both_unital);
  EXPECT_EQ(classify(0.3, 0.5, 1e-10), Classification::both_nonunital);
  EXPECT_EQ(classify(0.0, 0.5, 1e-10), Classification::mixed_anomaly);
  EXPECT_EQ(classify(0.5, 0.0, 1e-10), Classification::mixed_anomaly);
  EXPECT_TRUE(is_borderline(5e-10, 1e-10));
  EXPECT_TRUE(is_borderline(2e-11, 1e-10));
  EXPECT_FALSE(is_borderline(1e-15, 1e-10));
  EXPECT_FALSE(is_borderline(0.4, 1e-10));
}

TEST(trial_seed, order_independent_mixing) {
  EXPECT_EQ(trial_seed(42, 7), trial_seed(42, 7));
  EXPECT_NE(trial_seed(42, 7), trial_seed(42, 8));
  EXPECT_NE(trial_seed(42, 7), trial_seed(43, 7));
}

TEST(run_trial, paper_fixtures) {
  TrialConfig config;
  config.family = Family::paper_fixture;
  config.fixture = "bell";
  EXPECT_EQ(run_trial(config, 0).classification, Classification::both_unital);
  config.fixture = "ghz";
  EXPECT_EQ(run_trial(config, 0).classification, Classification::both_unital);
  config.fixture = "w";
  const auto w = run_trial(config, 0);
  EXPECT_EQ(w.classification, Classification::both_nonunital);
  EXPECT_NEAR(w.sys_unitality_defect, std::sqrt(20.0) / 3.0, 1e-12);
  EXPECT_NEAR(w.env_unitality_defect, std::sqrt(2.0) / 3.0, 1e-12);
}

TEST(run_trial, controlled_family_any_seed) {
  TrialConfig config;
  config.family = Family::controlled;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    config.seed = seed;
    const auto rec = run_trial(config, seed);
    EXPECT_EQ(rec.classification, Classification::both_unital);
    EXPECT_LE(rec.sys_unitality_defect, 1e-9);
    EXPECT_LE(rec.env_unitality_defect, 1e-9);
  }
}

TEST(run_campaign, controlled_has_no_anomalies) {
  TrialConfig config;
  config.family = Family::controlled;
  const auto report = run_campaign(config, 1000);
  EXPECT_EQ(report.mixed_anomaly, 0u);
  EXPECT_EQ(report.both_nonunital, 0u);
  EXPECT_EQ(report.both_unital, 1000u);
  EXPECT_LE(report.max_sys_unitality_defect, 1e-9);
  EXPECT_LE(report.max_env_unitality_defect, 1e-9);
}

TEST(run_campaign, haar_pure_basis_has_no_anomalies) {
  TrialConfig config;
  config.family = Family::haar;
  const auto report = run_campaign(config, 1000);
  EXPECT_EQ(report.mixed_anomaly, 0u) << "anomalies must be investigated, not suppressed";
  EXPECT_EQ(report.failed, 0u);
  EXPECT_TRUE(report.anomalies.empty());
}

TEST(run_campaign, completeness_holds_in_every_family) {
  for (auto family : {Family::controlled, Family::haar}) {
    for (auto spec : {StateSpec::pure_basis, StateSpec::random_diagonal, StateSpec::random_mixed}) {
      TrialConfig config;
      config.family = family;
      config.dim_s = 3;
      config.dim_e = 2;
      config.env_state_spec = spec;
      config.sys_state_spec = spec;
      const auto report = run_campaign(config, 100);
      EXPECT_EQ(report.failed, 0u);
      EXPECT_LE(report.max_sys_completeness_defect, 1e-9);
      EXPECT_LE(report.max_env_completeness_defect, 1e-9);
      EXPECT_EQ(report.both_unital + report.both_nonunital + report.mixed_anomaly + report.failed,
                report.trials);
      if (family == Family::controlled) EXPECT_EQ(report.both_unital, report.trials);
    }
  }
}

TEST(run_campaign, deterministic_regardless_of_thread_count) {
  TrialConfig config;
  config.family = Family::haar;
  config.env_state_spec = StateSpec::random_mixed;
  const auto serial = run_campaign(config, 200, 1);
  const auto parallel = run_campaign(config, 200, 4);
  ASSERT_EQ(serial.records.size(), parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    EXPECT_EQ(serial.records[i].trial_seed, parallel.records[i].trial_seed);
    EXPECT_EQ(serial.records[i].sys_unitality_defect, parallel.records[i].sys_unitality_defect);
    EXPECT_EQ(serial.records[i].env_unitality_defect, parallel.records[i].env_unitality_defect);
  }
  EXPECT_EQ(serial.max_sys_unitality_defect, parallel.max_sys_unitality_defect);
}

TEST(run_campaign, single_trial_echoes_record) {
  TrialConfig config;
  config.family = Family::haar;
  const auto report = run_campaign(config, 1);
  ASSERT_EQ(report.records.size(), 1u);
  const auto rec = run_trial(config, 0);
  EXPECT_EQ(report.records[0].sys_unitality_defect, rec.sys_unitality_defect);
  EXPECT_EQ(report.records[0].classification, rec.classification);
  EXPECT_EQ(report.max_env_unitality_defect, rec.env_unitality_defect);
}

TEST(run_campaign, anomaly_bundles_reproduce) {
  // A tolerance between the two W defects forces a (synthetic) mixed verdict.
  TrialConfig config;
  config.family = Family::paper_fixture;
  config.fixture = "w";
  config.unitality_tol = 1.0;
  const auto report = run_campaign(config, 3);
  EXPECT_EQ(report.mixed_anomaly, 3u);
  ASSERT_EQ(report.anomalies.size(), 3u);
  const auto& bundle = report.anomalies[1];
  EXPECT_EQ(bundle.record.trial_index, 1u);
  const auto again = evaluate_trial(bundle.instance, config, 1);
  EXPECT_EQ(again.sys_unitality_defect, bundle.record.sys_unitality_defect);
}

TEST(trial_config, validation) {
  TrialConfig config;
  config.dim_s = 1;
  EXPECT_THROW(config.validate(), InvalidArgument);
  config.dim_s = 2;
  config.unitality_tol = 0.0;
  EXPECT_THROW(config.validate(), InvalidArgument);
  config.unitality_tol = 1e-10;
  config.family = Family::paper_fixture;
  config.fixture = "nope";
  EXPECT_THROW(config.validate(), InvalidArgument);
  EXPECT_THROW(run_campaign(TrialConfig{}, 0), InvalidArgument);
}
