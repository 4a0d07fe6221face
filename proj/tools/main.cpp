// Command-line front end: sample graphs, seriate edge lists, check model
// assumptions, run experiment sweeps, and learn split parameters.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "seriation/experiment.hpp"
#include "seriation/graph.hpp"
#include "seriation/graphon.hpp"
#include "seriation/ordering.hpp"
#include "seriation/postproc.hpp"
#include "seriation/spectral.hpp"
#include "seriation/validate.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << text;
}

int run(int argc, char** argv) {
  CLI::App app{"Latent-order recovery for graphon-sampled graphs"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Sample a graph, emit an edge list");
  std::string sample_graphon, sample_output = "-";
  int sample_n = 0;
  double sample_tau = 0.0;
  std::uint64_t sample_seed = 1;
  sample->add_option("--graphon", sample_graphon,
                     "Kernel spec, e.g. 'affine 0.8 1', 'rbf 0.5', "
                     "'step 0.6 0.5', 'banded 3'")->required();
  sample->add_option("--n", sample_n, "Number of vertices")->required();
  sample->add_option("--tau", sample_tau, "Sparsity exponent, rho = n^-tau");
  sample->add_option("--seed", sample_seed, "Sampling seed");
  sample->add_option("--output,-o", sample_output, "Edge-list path ('-' = stdout)");

  // seriate
  auto* seriate = app.add_subcommand("seriate", "Order the vertices of an edge list");
  std::string seriate_input, seriate_output = "-", seriate_algorithm = "spectral";
  double seriate_alpha = 0.05, seriate_beta = 0.31;
  std::uint64_t seriate_seed = 1;
  seriate->add_option("--input,-i", seriate_input, "Edge-list path")->required();
  seriate->add_option("--algorithm", seriate_algorithm,
                      "spectral or postprocessed")
      ->check(CLI::IsMember({"spectral", "postprocessed"}));
  seriate->add_option("--alpha", seriate_alpha, "Extreme-set fraction");
  seriate->add_option("--beta", seriate_beta, "Cutoff quantile");
  seriate->add_option("--seed", seriate_seed, "Partition seed (postprocessed)");
  seriate->add_option("--output,-o", seriate_output,
                      "Ordering path ('-' = stdout)");

  // validate
  auto* validate = app.add_subcommand(
      "validate", "Check the model assumptions for a kernel");
  std::string validate_graphon;
  double validate_alpha = 0.05, validate_beta = 0.31;
  int validate_resolution = 1000;
  validate->add_option("--graphon", validate_graphon, "Kernel spec")->required();
  validate->add_option("--alpha", validate_alpha, "Extreme-set fraction");
  validate->add_option("--beta", validate_beta, "Cutoff quantile");
  validate->add_option("--resolution", validate_resolution, "Grid size (>= 100)");

  // experiment
  auto* experiment = app.add_subcommand(
      "experiment", "Run a seeded error-rate sweep from a config file");
  std::string experiment_config;
  experiment->add_option("--config,-c", experiment_config,
                         "Config file (key = value lines)")->required();

  // learn-params
  auto* learn = app.add_subcommand(
      "learn-params", "Search the (alpha, beta) grid on a sampled graph");
  std::string learn_graphon;
  int learn_n = 0;
  double learn_delta = 0.01;
  std::uint64_t learn_seed = 1;
  learn->add_option("--graphon", learn_graphon, "Kernel spec")->required();
  learn->add_option("--n", learn_n, "Number of vertices")->required();
  learn->add_option("--delta", learn_delta, "Test margin");
  learn->add_option("--seed", learn_seed, "Sampling and split seed");

  CLI11_PARSE(app, argc, argv);

  if (sample->parsed()) {
    const seriation::Graphon graphon =
        seriation::resolve_graphon_spec(sample_graphon, sample_n);
    const double rho = std::pow(sample_n, -sample_tau);
    const seriation::SampledGraph g =
        seriation::SampledGraph::sample(graphon, sample_n, rho, sample_seed);
    std::ostringstream out;
    seriation::write_edge_list(out, g);
    write_text(sample_output, out.str());
    return 0;
  }

  if (seriate->parsed()) {
    const seriation::SampledGraph g = seriation::read_edge_list_file(seriate_input);
    seriation::Ordering ordering =
        seriate_algorithm == "spectral"
            ? seriation::spectral_seriation(g)
            : seriation::full_postprocess(
                  g, seriation::SplitConfig(seriate_alpha, seriate_beta),
                  seriate_seed);
    write_text(seriate_output, seriation::ordering_to_line(ordering) + "\n");
    return 0;
  }

  if (validate->parsed()) {
    const seriation::Graphon graphon =
        seriation::parse_graphon_spec(validate_graphon);
    const seriation::AssumptionReport report = seriation::check_assumptions(
        graphon, seriation::SplitConfig(validate_alpha, validate_beta),
        validate_resolution);
    std::cout << report.to_kv();
    if (!report.all_ok()) {
      std::cerr << "error: assumption failure for '" << validate_graphon
                << "'\n";
      return 2;
    }
    return 0;
  }

  if (experiment->parsed()) {
    const seriation::ExperimentConfig cfg =
        seriation::read_experiment_config(experiment_config);
    const seriation::ExperimentResult result = seriation::run_experiment(cfg);
    std::cout << "csv " << result.csv_path << '\n'
              << "summary " << result.summary_path << '\n'
              << "timing " << result.timing_path << '\n';
    return 0;
  }

  if (learn->parsed()) {
    const seriation::Graphon graphon =
        seriation::resolve_graphon_spec(learn_graphon, learn_n);
    const seriation::SampledGraph g =
        seriation::SampledGraph::sample(graphon, learn_n, 1.0, learn_seed);
    const std::optional<seriation::SplitConfig> found =
        seriation::learn_alpha_beta(g, seriation::default_learning_grid(),
                                    learn_delta, learn_seed);
    if (found) {
      std::cout << "alpha " << found->alpha << "\nbeta " << found->beta << '\n';
      return 0;
    }
    std::cout << "none\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
