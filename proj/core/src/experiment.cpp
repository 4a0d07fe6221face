#include "seriation/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "seriation/graph.hpp"
#include "seriation/ordering.hpp"
#include "seriation/postproc.hpp"
#include "seriation/rng.hpp"
#include "seriation/spectral.hpp"

namespace seriation {

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kMaxSampleRetries = 64;

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

std::string algorithm_name(AlgorithmChoice a) {
  switch (a) {
    case AlgorithmChoice::Spectral:
      return "spectral";
    case AlgorithmChoice::Postprocessed:
      return "postprocessed";
    case AlgorithmChoice::Both:
      return "both";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (graphon_spec.empty()) {
    throw std::invalid_argument("config: graphon spec is required");
  }
  if (n_list.empty() ||
      !std::is_sorted(n_list.begin(), n_list.end(), std::less_equal<int>())) {
    throw std::invalid_argument("config: n_list must be strictly increasing");
  }
  if (n_list.front() < 2) {
    throw std::invalid_argument("config: sizes must be >= 2");
  }
  if (trials < 1) {
    throw std::invalid_argument("config: trials must be >= 1");
  }
  if (rho_exponent < 0.0 || rho_exponent >= 1.0) {
    throw std::invalid_argument("config: tau must lie in [0, 1)");
  }
  if (algorithm != AlgorithmChoice::Spectral && rho_exponent > 0.0) {
    throw std::invalid_argument(
        "config: the refinement pipeline is only supported at tau = 0");
  }
  if (gamma <= 1.0) {
    throw std::invalid_argument("config: gamma must be > 1");
  }
  if (!learn_parameters && !(0.0 < alpha && alpha < beta && beta < 0.5)) {
    throw std::invalid_argument("config: need 0 < alpha < beta < 0.5");
  }
  if (output_path.empty()) {
    throw std::invalid_argument("config: output path is required");
  }
  if (parallelism < 1) {
    throw std::invalid_argument("config: parallelism must be >= 1");
  }
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  const auto fail = [&](const std::string& what) {
    throw std::invalid_argument("config parse error at line " +
                                std::to_string(line_number) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) fail("empty value for key '" + key + "'");
    try {
      if (key == "graphon") {
        cfg.graphon_spec = value;
      } else if (key == "n_list") {
        cfg.n_list.clear();
        std::istringstream vs(value);
        std::string token;
        while (std::getline(vs, token, ',')) {
          cfg.n_list.push_back(std::stoi(token));
        }
      } else if (key == "trials") {
        cfg.trials = std::stoi(value);
      } else if (key == "tau") {
        cfg.rho_exponent = std::stod(value);
      } else if (key == "algorithm") {
        if (value == "spectral") {
          cfg.algorithm = AlgorithmChoice::Spectral;
        } else if (value == "postprocessed") {
          cfg.algorithm = AlgorithmChoice::Postprocessed;
        } else if (value == "both") {
          cfg.algorithm = AlgorithmChoice::Both;
        } else {
          fail("unknown algorithm '" + value + "'");
        }
      } else if (key == "params") {
        if (value == "learn") {
          cfg.learn_parameters = true;
        } else {
          fail("params only accepts 'learn'");
        }
      } else if (key == "alpha") {
        cfg.alpha = std::stod(value);
      } else if (key == "beta") {
        cfg.beta = std::stod(value);
      } else if (key == "gamma") {
        cfg.gamma = std::stod(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "output") {
        cfg.output_path = value;
      } else if (key == "parallelism") {
        cfg.parallelism = std::stoi(value);
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).rfind("config parse error", 0) == 0) throw;
      fail("bad value '" + value + "' for key '" + key + "'");
    } catch (const std::out_of_range&) {
      fail("value '" + value + "' out of range for key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig read_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

std::uint64_t trial_seed(std::uint64_t master, int n, int trial,
                         AlgorithmChoice algorithm) {
  std::uint64_t s = rng::derive(master, static_cast<std::uint64_t>(n));
  s = rng::derive(s, static_cast<std::uint64_t>(trial));
  return rng::derive(s, static_cast<std::uint64_t>(algorithm) + 17);
}

double fit_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    throw std::invalid_argument("slope fit needs at least 3 points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    if (x <= 0.0 || y <= 0.0) {
      throw std::invalid_argument("slope fit needs positive coordinates");
    }
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(points.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty list");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid]
                                : 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

struct TrialTask {
  int n;
  int trial;
  AlgorithmChoice algorithm;  // Spectral or Postprocessed, never Both
  SplitConfig split{0.05, 0.31};
};

TrialRecord run_trial(const ExperimentConfig& cfg, const TrialTask& task) {
  const auto started = std::chrono::steady_clock::now();
  TrialRecord record;
  record.n = task.n;
  record.trial = task.trial;
  record.algorithm = algorithm_name(task.algorithm);
  record.seed = trial_seed(cfg.seed, task.n, task.trial, task.algorithm);

  try {
    const Graphon graphon = resolve_graphon_spec(cfg.graphon_spec, task.n);
    const double rho = std::pow(task.n, -cfg.rho_exponent);

    Ordering estimate = Ordering::identity(1);
    bool done = false;
    for (int attempt = 0; attempt < kMaxSampleRetries && !done; ++attempt) {
      const std::uint64_t sample_seed =
          attempt == 0 ? record.seed
                       : rng::derive(record.seed,
                                     1000 + static_cast<std::uint64_t>(attempt));
      const SampledGraph g =
          SampledGraph::sample(graphon, task.n, rho, sample_seed);
      try {
        if (task.algorithm == AlgorithmChoice::Spectral) {
          const SpectralResult spec =
              fiedler_pair(laplacian(g.dense_adjacency()));
          record.degenerate = spec.degenerate;
          std::map<int, double> values;
          for (int i = 0; i < task.n; ++i) values[i] = spec.fiedler[i];
          estimate = Ordering::from_values(values);
        } else {
          estimate = full_postprocess(g, task.split,
                                      rng::derive(record.seed, 7));
        }
        done = true;
      } catch (const DisconnectedGraphError&) {
        ++record.disconnected_resamples;
      }
    }
    if (!done) {
      record.status = "failed:disconnected";
      return record;
    }

    const Ordering identity = Ordering::identity(task.n);
    record.l1_raw = l1_distance(estimate, identity, false);
    record.linf_raw = linf_distance(estimate, identity, false);
    record.l1_sym = l1_distance(estimate, identity, true);
    record.linf_sym = linf_distance(estimate, identity, true);
    record.kendall = kendall_tau(estimate);
    const double n = task.n;
    record.l1_over_n2 = record.l1_sym / (n * n);
    record.linf_over_n = record.linf_sym / n;
    record.linf_over_scale =
        record.linf_sym / std::sqrt(n * std::pow(std::log(n), cfg.gamma));
  } catch (const std::exception& e) {
    std::string reason = e.what();
    for (char& c : reason) {
      if (c == ',' || c == '\n') c = ';';
    }
    record.status = "failed:" + reason;
  }
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return record;
}

std::string record_to_csv(const TrialRecord& r) {
  std::ostringstream out;
  out << kSchemaVersion << ',' << r.n << ',' << r.trial << ',' << r.seed << ','
      << r.algorithm << ',' << format_double(r.l1_sym) << ','
      << format_double(r.linf_sym) << ',' << format_double(r.l1_raw) << ','
      << format_double(r.linf_raw) << ',' << r.kendall << ','
      << format_double(r.l1_over_n2) << ',' << format_double(r.linf_over_n)
      << ',' << format_double(r.linf_over_scale) << ','
      << r.disconnected_resamples << ',' << (r.degenerate ? 1 : 0) << ','
      << r.status;
  return out.str();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  ExperimentResult result;
  result.csv_path = cfg.output_path;
  result.summary_path = cfg.output_path + ".summary";
  result.timing_path = cfg.output_path + ".timing";

  std::ofstream csv(result.csv_path);
  if (!csv) {
    throw std::runtime_error("cannot open output file: " + result.csv_path);
  }

  std::vector<AlgorithmChoice> algorithms;
  if (cfg.algorithm != AlgorithmChoice::Postprocessed) {
    algorithms.push_back(AlgorithmChoice::Spectral);
  }
  if (cfg.algorithm != AlgorithmChoice::Spectral) {
    algorithms.push_back(AlgorithmChoice::Postprocessed);
  }

  // Trial parameters are fully decided up front so that the worker pool's
  // schedule can never influence the results.
  std::vector<TrialTask> tasks;
  for (int n : cfg.n_list) {
    for (AlgorithmChoice algorithm : algorithms) {
      SplitConfig split{cfg.alpha, cfg.beta};
      if (algorithm == AlgorithmChoice::Postprocessed &&
          cfg.learn_parameters) {
        const Graphon graphon = resolve_graphon_spec(cfg.graphon_spec, n);
        const SampledGraph probe = SampledGraph::sample(
            graphon, n, 1.0, rng::derive(cfg.seed, 0x6C6561726EULL + n));
        const auto learned =
            learn_alpha_beta(probe, default_learning_grid(), 0.01,
                             rng::derive(cfg.seed, 0x677269640ULL + n));
        if (learned) split = *learned;
      }
      for (int trial = 0; trial < cfg.trials; ++trial) {
        tasks.push_back({n, trial, algorithm, split});
      }
    }
  }

  std::vector<TrialRecord> records(tasks.size());
  const int width = std::min<int>(cfg.parallelism,
                                  static_cast<int>(tasks.size()));
  if (width <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      records[i] = run_trial(cfg, tasks[i]);
    }
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < width; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < tasks.size();
             i += static_cast<std::size_t>(width)) {
          records[i] = run_trial(cfg, tasks[i]);
        }
      });
    }
    for (auto& worker : workers) worker.join();
  }

  csv << "schema,n,trial,seed,algorithm,l1_sym,linf_sym,l1_raw,linf_raw,"
         "kendall_tau,l1_over_n2,linf_over_n,linf_over_scale,"
         "disconnected_resamples,degenerate,status\n";
  for (const TrialRecord& r : records) csv << record_to_csv(r) << '\n';
  csv.close();

  std::ofstream timing(result.timing_path);
  timing << "n,trial,algorithm,wall_seconds\n";
  for (const TrialRecord& r : records) {
    timing << r.n << ',' << r.trial << ',' << r.algorithm << ','
           << format_double(r.wall_seconds) << '\n';
  }
  timing.close();

  std::ofstream summary(result.summary_path);
  summary << "metric,algorithm,n,value\n";
  for (AlgorithmChoice algorithm : algorithms) {
    const std::string name = algorithm_name(algorithm);
    std::vector<std::pair<double, double>> l1_points;
    std::vector<std::pair<double, double>> linf_points;
    for (int n : cfg.n_list) {
      std::vector<double> l1, linf, l1n2, linfn;
      for (const TrialRecord& r : records) {
        if (r.n != n || r.algorithm != name || r.status != "ok") continue;
        l1.push_back(r.l1_sym);
        linf.push_back(r.linf_sym);
        l1n2.push_back(r.l1_over_n2);
        linfn.push_back(r.linf_over_n);
      }
      if (l1.empty()) continue;
      const double med_l1 = median(l1);
      const double med_linf = median(linf);
      summary << "median_l1_sym," << name << ',' << n << ','
              << format_double(med_l1) << '\n'
              << "median_linf_sym," << name << ',' << n << ','
              << format_double(med_linf) << '\n'
              << "median_l1_over_n2," << name << ',' << n << ','
              << format_double(median(l1n2)) << '\n'
              << "median_linf_over_n," << name << ',' << n << ','
              << format_double(median(linfn)) << '\n';
      if (med_l1 > 0.0) l1_points.emplace_back(n, med_l1);
      if (med_linf > 0.0) linf_points.emplace_back(n, med_linf);
    }
    if (l1_points.size() >= 3 && l1_points.size() == cfg.n_list.size()) {
      summary << "slope_median_l1," << name << ",,"
              << format_double(fit_slope(l1_points)) << '\n';
    }
    if (linf_points.size() >= 3 && linf_points.size() == cfg.n_list.size()) {
      summary << "slope_median_linf," << name << ",,"
              << format_double(fit_slope(linf_points)) << '\n';
    }
  }
  summary.close();

  result.records = std::move(records);
  return result;
}

}  // namespace seriation
