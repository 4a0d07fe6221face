#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seriation/graphon.hpp"

namespace seriation {

enum class AlgorithmChoice { Spectral, Postprocessed, Both };

std::string algorithm_name(AlgorithmChoice a);

struct ExperimentConfig {
  std::string graphon_spec;     // e.g. "affine 0.8 1", "banded 3"
  std::vector<int> n_list;      // strictly increasing
  int trials = 1;
  double rho_exponent = 0.0;    // rho = n^-tau, 0 <= tau < 1
  AlgorithmChoice algorithm = AlgorithmChoice::Spectral;
  bool learn_parameters = false;
  double alpha = 0.05;
  double beta = 0.31;
  double gamma = 1.1;           // reporting exponent for the linf scale
  std::uint64_t seed = 1;
  std::string output_path;      // CSV; .summary/.timing siblings derive from it
  int parallelism = 1;

  void validate() const;  // throws std::invalid_argument on a bad field
};

// "key = value" lines; '#' comments; keys documented in the README.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig read_experiment_config(const std::string& path);

struct TrialRecord {
  int n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  double l1_sym = 0.0;
  double linf_sym = 0.0;
  double l1_raw = 0.0;
  double linf_raw = 0.0;
  std::int64_t kendall = 0;
  double l1_over_n2 = 0.0;
  double linf_over_n = 0.0;
  double linf_over_scale = 0.0;  // linf_sym / sqrt(n log^gamma n)
  int disconnected_resamples = 0;
  bool degenerate = false;
  std::string status = "ok";  // or "failed:<reason>" with zeroed metrics
  double wall_seconds = 0.0;  // written to the .timing file only
};

// Pure function of its arguments; n_list order never affects a trial.
std::uint64_t trial_seed(std::uint64_t master, int n, int trial,
                         AlgorithmChoice algorithm);

// Least-squares slope of log(value) against log(n).
double fit_slope(const std::vector<std::pair<double, double>>& points);

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::string csv_path;
  std::string summary_path;
  std::string timing_path;
};

// Runs every (n, trial, algorithm) cell, writes the CSV (deterministic for a
// fixed config), a .summary with per-n medians and fitted slopes, and a
// .timing file with wall times.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

double median(std::vector<double> values);

}  // namespace seriation
