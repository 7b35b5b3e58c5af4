#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "unital/linalg.hpp"

namespace unital {

enum class Family { controlled, haar, paper_fixture };
enum class StateSpec { pure_basis, random_diagonal, random_mixed };
enum class Classification { both_unital, both_nonunital, mixed_anomaly };

std::string_view to_string(Family f);
std::string_view to_string(StateSpec s);
std::string_view to_string(Classification c);
Family parse_family(std::string_view text);
StateSpec parse_state_spec(std::string_view text);

struct TrialConfig {
  std::size_t dim_s = 2;
  std::size_t dim_e = 2;
  Family family = Family::controlled;
  std::uint64_t seed = 42;
  StateSpec env_state_spec = StateSpec::pure_basis;
  StateSpec sys_state_spec = StateSpec::pure_basis;
  double unitality_tol = 1e-10;
  /// Fixture name for Family::paper_fixture; dims and states then come from it.
  std::string fixture = "bell";

  /// Throws InvalidArgument on dims < 2, non-positive tol or unknown fixture.
  void validate() const;
};

/// One sampled (U, rho_S, rho_E) instance, with U on system (x) environment.
struct TrialInstance {
  ComplexMatrix unitary;
  std::size_t dim_s;
  std::size_t dim_e;
  DensityMatrix sys_state;
  DensityMatrix env_state;
};

struct TrialRecord {
  std::size_t trial_index;
  std::uint64_t trial_seed;
  double sys_unitality_defect;
  double env_unitality_defect;
  double sys_completeness_defect;
  double env_completeness_defect;
  Classification classification;
  /// Some unitality defect lies within a factor of 10 of the tolerance.
  bool borderline;
};

struct ReproductionBundle {
  TrialRecord record;
  TrialInstance instance;
};

struct TrialFailure {
  std::size_t trial_index;
  std::uint64_t trial_seed;
  std::string message;
};

struct CampaignReport {
  TrialConfig config;
  std::size_t trials = 0;
  std::size_t both_unital = 0;
  std::size_t both_nonunital = 0;
  std::size_t mixed_anomaly = 0;
  std::size_t failed = 0;
  std::size_t borderline = 0;
  double max_sys_unitality_defect = 0.0;
  double max_env_unitality_defect = 0.0;
  double max_sys_completeness_defect = 0.0;
  double max_env_completeness_defect = 0.0;
  /// Successful trials in trial-index order.
  std::vector<TrialRecord> records;
  std::vector<ReproductionBundle> anomalies;
  std::vector<TrialFailure> failures;
};

/// Public mixing function used to derive per-trial seeds (splitmix64).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t campaign_seed, std::uint64_t trial_index);

/// Haar-distributed unitary: Ginibre matrix, Gram-Schmidt on the columns,
/// which leaves a triangular factor with positive real diagonal.
ComplexMatrix sample_haar_unitary(std::size_t d, std::mt19937_64& rng);
ComplexMatrix sample_haar_unitary(std::size_t d, std::uint64_t seed);

/// sum_j U_j (x) |j><j| with independent Haar blocks U_j.
ComplexMatrix sample_controlled_unitary(std::size_t dim_s, std::size_t dim_e, std::mt19937_64& rng);
ComplexMatrix sample_controlled_unitary(std::size_t dim_s, std::size_t dim_e, std::uint64_t seed);

DensityMatrix sample_state(std::size_t d, StateSpec spec, std::mt19937_64& rng);

Classification classify(double sys_unitality_defect, double env_unitality_defect, double tol);
bool is_borderline(double defect, double tol);

TrialInstance sample_trial(const TrialConfig& config, std::size_t trial_index);
/// Extracts both channels in indexed mode and classifies the pair.
TrialRecord evaluate_trial(const TrialInstance& instance, const TrialConfig& config,
                           std::size_t trial_index);
TrialRecord run_trial(const TrialConfig& config, std::size_t trial_index);

/// Runs trials 0..n_trials-1, on up to `threads` workers (0 = hardware
/// concurrency). The report does not depend on the thread count.
CampaignReport run_campaign(const TrialConfig& config, std::size_t n_trials, unsigned threads = 0);

}  // namespace unital
