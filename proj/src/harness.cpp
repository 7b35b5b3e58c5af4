#include "unital/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <utility>
#include <variant>

#include "unital/channels.hpp"
#include "unital/errors.hpp"
#include "unital/states.hpp"

namespace unital {

namespace {

Complex standard_complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return Complex{re, im} / std::sqrt(2.0);
}

// Dirichlet(1, ..., 1) via normalized exponentials.
std::vector<double> dirichlet_weights(std::size_t d, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(d);
  double total = 0.0;
  for (auto& x : w) {
    x = expo(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

// Normalizes the trace exactly; the Hermitian part is taken by DensityMatrix.
DensityMatrix to_state(ComplexMatrix m) {
  const double tr = m.trace().real();
  m *= 1.0 / tr;
  return DensityMatrix(std::move(m));
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::controlled: return "controlled";
    case Family::haar: return "haar";
    case Family::paper_fixture: return "paper_fixture";
  }
  return "?";
}

std::string_view to_string(StateSpec s) {
  switch (s) {
    case StateSpec::pure_basis: return "pure_basis";
    case StateSpec::random_diagonal: return "random_diagonal";
    case StateSpec::random_mixed: return "random_mixed";
  }
  return "?";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::both_unital: return "both_unital";
    case Classification::both_nonunital: return "both_nonunital";
    case Classification::mixed_anomaly: return "mixed_anomaly";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  if (text == "controlled") return Family::controlled;
  if (text == "haar") return Family::haar;
  if (text == "paper_fixture") return Family::paper_fixture;
  throw InvalidArgument("unknown family '" + std::string(text) + "'");
}

StateSpec parse_state_spec(std::string_view text) {
  if (text == "pure_basis") return StateSpec::pure_basis;
  if (text == "random_diagonal") return StateSpec::random_diagonal;
  if (text == "random_mixed") return StateSpec::random_mixed;
  throw InvalidArgument("unknown state spec '" + std::string(text) + "'");
}

void TrialConfig::validate() const {
  if (family == Family::paper_fixture) {
    if (fixture != "bell" && fixture != "ghz" && fixture != "w") {
      throw InvalidArgument("unknown fixture '" + fixture + "'");
    }
  } else if (dim_s < 2 || dim_e < 2) {
    throw InvalidArgument("trial dims must be at least 2");
  }
  if (dim_s * dim_e > 64) throw InvalidArgument("joint dimension above 64 is not supported");
  if (!(unitality_tol > 0.0)) throw InvalidArgument("unitality tolerance must be positive");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t campaign_seed, std::uint64_t trial_index) {
  return splitmix64(campaign_seed ^ splitmix64(trial_index + 1));
}

ComplexMatrix sample_haar_unitary(std::size_t d, std::mt19937_64& rng) {
  if (d == 0) throw InvalidArgument("sample_haar_unitary: d must be positive");
  ComplexMatrix q(d, d);
  for (auto& z : q.entries()) z = standard_complex_normal(rng);

  // Modified Gram-Schmidt, two passes per column. Dividing by the positive
  // norm is exactly the phase fix R_jj > 0 of the QR factorization.
  for (std::size_t j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex dot = 0.0;
        for (std::size_t r = 0; r < d; ++r) dot += std::conj(q(r, k)) * q(r, j);
        for (std::size_t r = 0; r < d; ++r) q(r, j) -= dot * q(r, k);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += std::norm(q(r, j));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) q(r, j) /= norm;
  }
  return q;
}

ComplexMatrix sample_haar_unitary(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_haar_unitary(d, rng);
}

ComplexMatrix sample_controlled_unitary(std::size_t dim_s, std::size_t dim_e, std::mt19937_64& rng) {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(dim_e);
  for (std::size_t j = 0; j < dim_e; ++j) blocks.push_back(sample_haar_unitary(dim_s, rng));
  return controlled_unitary(blocks, Basis::computational(dim_e));
}

ComplexMatrix sample_controlled_unitary(std::size_t dim_s, std::size_t dim_e, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_controlled_unitary(dim_s, dim_e, rng);
}

DensityMatrix sample_state(std::size_t d, StateSpec spec, std::mt19937_64& rng) {
  switch (spec) {
    case StateSpec::pure_basis: {
      std::uniform_int_distribution<std::size_t> pick(0, d - 1);
      return DensityMatrix::from_ket(ComplexMatrix::identity(d).column(pick(rng)));
    }
    case StateSpec::random_diagonal: {
      const auto w = dirichlet_weights(d, rng);
      return to_state(diagonal(w));
    }
    case StateSpec::random_mixed: {
      const auto w = dirichlet_weights(d, rng);
      const ComplexMatrix v = sample_haar_unitary(d, rng);
      return to_state(v * diagonal(w) * v.adjoint());
    }
  }
  throw InvalidArgument("unknown state spec");
}

Classification classify(double sys_unitality_defect, double env_unitality_defect, double tol) {
  const bool sys_unital = sys_unitality_defect <= tol;
  const bool env_unital = env_unitality_defect <= tol;
  if (sys_unital && env_unital) return Classification::both_unital;
  if (!sys_unital && !env_unital) return Classification::both_nonunital;
  return Classification::mixed_anomaly;
}

bool is_borderline(double defect, double tol) { return defect > tol / 10.0 && defect <= tol * 10.0; }

TrialInstance sample_trial(const TrialConfig& config, std::size_t trial_index) {
  config.validate();
  if (config.family == Family::paper_fixture) {
    auto view = system_environment_view(fixture(config.fixture));
    return TrialInstance{std::move(view.unitary), view.dim_s, view.dim_e,
                         std::move(view.system_initial), std::move(view.environment_initial)};
  }
  std::mt19937_64 rng(trial_seed(config.seed, trial_index));
  ComplexMatrix u = config.family == Family::controlled
                        ? sample_controlled_unitary(config.dim_s, config.dim_e, rng)
                        : sample_haar_unitary(config.dim_s * config.dim_e, rng);
  DensityMatrix env = sample_state(config.dim_e, config.env_state_spec, rng);
  DensityMatrix sys = sample_state(config.dim_s, config.sys_state_spec, rng);
  return TrialInstance{std::move(u), config.dim_s, config.dim_e, std::move(sys), std::move(env)};
}

TrialRecord evaluate_trial(const TrialInstance& instance, const TrialConfig& config,
                           std::size_t trial_index) {
  const auto sys_kraus =
      extract_system_kraus(instance.unitary, instance.dim_s, instance.dim_e, instance.env_state);
  const auto env_kraus =
      extract_env_kraus(instance.unitary, instance.dim_s, instance.dim_e, instance.sys_state);
  const auto sys = channel_report(sys_kraus, config.unitality_tol);
  const auto env = channel_report(env_kraus, config.unitality_tol);
  const double tol = config.unitality_tol;
  return TrialRecord{
      trial_index,
      config.family == Family::paper_fixture ? 0 : trial_seed(config.seed, trial_index),
      sys.unitality_defect,
      env.unitality_defect,
      sys.completeness_defect,
      env.completeness_defect,
      classify(sys.unitality_defect, env.unitality_defect, tol),
      is_borderline(sys.unitality_defect, tol) || is_borderline(env.unitality_defect, tol),
  };
}

TrialRecord run_trial(const TrialConfig& config, std::size_t trial_index) {
  return evaluate_trial(sample_trial(config, trial_index), config, trial_index);
}

CampaignReport run_campaign(const TrialConfig& config, std::size_t n_trials, unsigned threads) {
  config.validate();
  if (n_trials == 0) throw InvalidArgument("run_campaign: n_trials must be at least 1");

  using Outcome = std::variant<TrialRecord, TrialFailure>;
  std::vector<std::optional<Outcome>> outcomes(n_trials);

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < n_trials; i += stride) {
      try {
        outcomes[i] = run_trial(config, i);
      } catch (const std::exception& e) {
        outcomes[i] = TrialFailure{i, trial_seed(config.seed, i), e.what()};
      }
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_trials));
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  // Reduce in trial-index order.
  CampaignReport report;
  report.config = config;
  report.trials = n_trials;
  for (auto& slot : outcomes) {
    if (auto* failure = std::get_if<TrialFailure>(&*slot)) {
      ++report.failed;
      report.failures.push_back(std::move(*failure));
      continue;
    }
    const auto& rec = std::get<TrialRecord>(*slot);
    switch (rec.classification) {
      case Classification::both_unital: ++report.both_unital; break;
      case Classification::both_nonunital: ++report.both_nonunital; break;
      case Classification::mixed_anomaly: ++report.mixed_anomaly; break;
    }
    if (rec.borderline) ++report.borderline;
    report.max_sys_unitality_defect = std::max(report.max_sys_unitality_defect, rec.sys_unitality_defect);
    report.max_env_unitality_defect = std::max(report.max_env_unitality_defect, rec.env_unitality_defect);
    report.max_sys_completeness_defect =
        std::max(report.max_sys_completeness_defect, rec.sys_completeness_defect);
    report.max_env_completeness_defect =
        std::max(report.max_env_completeness_defect, rec.env_completeness_defect);
    if (rec.classification == Classification::mixed_anomaly) {
      report.anomalies.push_back(ReproductionBundle{rec, sample_trial(config, rec.trial_index)});
    }
    report.records.push_back(rec);
  }
  return report;
}

}  // namespace unital
