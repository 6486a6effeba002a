#pragma once

#include "latsurj/ensembles.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace latsurj {

enum class ExperimentKind { corank_dist, trivial_cokernel, square_never, singularity, exposure, symmetric };

const char* to_string(ExperimentKind kind);
/// Accepts the canonical names and the CLI aliases corank, trivial, square.
ExperimentKind parse_experiment_kind(const std::string& name);

enum class SingularityMode { mod_p, integer };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::corank_dist;
  std::size_t n = 10;
  std::optional<std::size_t> u;  // extra columns; kind-specific default when empty
  std::string dist = "uniform01";
  std::uint64_t trials = 100;
  std::uint64_t master_seed = 1;
  std::uint64_t p = 2;                // corank and mod-p singularity
  std::vector<std::uint64_t> primes;  // finite prime set for trivial_cokernel
  double B = 1.0;
  double confidence = 0.95;
  unsigned threads = 0;  // 0 = hardware concurrency; never affects results
  std::optional<double> tolerance;
  std::optional<double> max_freq;
  std::optional<std::uint64_t> max_count;
  std::optional<double> min_freq;
  std::vector<double> c_grid;
  bool control = true;
  SingularityMode singular_mode = SingularityMode::mod_p;
  std::optional<std::size_t> cap;  // exposure extra-column cap
  std::string invocation;
};

/// Throws std::invalid_argument on inconsistent parameters.
void validate(const ExperimentConfig& cfg);

/// Extra columns actually used by the config (resolves kind defaults).
std::size_t resolved_u(const ExperimentConfig& cfg);

enum class CheckKind { none, within, at_most, at_least, count_at_most, below };

const char* to_string(CheckKind kind);

struct Outcome {
  std::string label;
  std::uint64_t count = 0;
  std::uint64_t total = 0;
  double freq = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::optional<double> prediction;
  std::optional<double> tail_bound;
  CheckKind check = CheckKind::none;
  double threshold = 0.0;
  bool pass = true;
};

/// One row of the exposure experiment.
struct ExposureRow {
  std::uint64_t seed = 0;
  std::vector<std::string> primes;
  std::vector<std::size_t> initial_coranks;
  std::size_t batches = 0;
  std::size_t total_extra_columns = 0;
  bool achieved = false;
  bool monotone = true;
  bool certified = false;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::uint64_t trials = 0;
  std::vector<Outcome> outcomes;
  std::vector<ExposureRow> runs;
  std::vector<std::string> notes;
  double runtime_ms = 0.0;
  bool passed = true;
};

/// Two-sided Wilson score interval for count/total.
std::pair<double, double> wilson_interval(std::uint64_t count, std::uint64_t total, double confidence);

/// Seed of trial `index`; the trial's matrix is sample_matrix with this seed.
std::uint64_t trial_seed(const ExperimentConfig& cfg, std::uint64_t index);
EnsembleSpec trial_spec(const ExperimentConfig& cfg, std::uint64_t index);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace latsurj
