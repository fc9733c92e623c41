// epspy: sampling and validation experiments for epsilon-truncated
// Pitman-Yor processes.
//
//   epspy <experiment> [--alpha A] [--theta T1,T2] [--eps E1,E2] [--n N]
//                      [--seed S] [--out PATH] [--format csv|json] ...
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epspy/errors.hpp"
#include "epspy/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Fields of a JSON config file override the experiment defaults.
void apply_config_file(const std::string& path, epspy::ExperimentConfig& c) {
  std::ifstream in(path);
  if (!in) throw epspy::ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("theta")) c.thetas = j.at("theta").get<std::vector<double>>();
    if (j.contains("eps")) c.epsilons = j.at("eps").get<std::vector<double>>();
    if (j.contains("n")) c.replications = j.at("n").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("format")) c.format = epspy::parse_format(j.at("format").get<std::string>());
    if (j.contains("which")) c.functional = epspy::parse_functional(j.at("which").get<std::string>());
    if (j.contains("sampler")) c.sampler = epspy::parse_sampler(j.at("sampler").get<std::string>());
    if (j.contains("bins")) c.bins = j.at("bins").get<std::size_t>();
    if (j.contains("reference_truncation")) {
      c.reference_truncation = j.at("reference_truncation").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw epspy::ConfigError("config file '" + path + "': " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sample and validate epsilon-truncated Pitman-Yor processes"};

  std::string experiment;
  std::string config_path;
  std::optional<double> alpha;
  std::vector<double> thetas;
  std::vector<double> epsilons;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> which;
  std::optional<std::string> sampler;
  std::optional<std::size_t> bins;
  std::optional<double> reference_truncation;
  bool serial = false;

  app.add_option("experiment", experiment,
                 "fig1 | table1 | fig2 | table2 | table3 | tilted-stable | sample-exact | "
                 "sample-approx | tau-dist | functional")
      ->required();
  app.add_option("--config", config_path, "JSON config file (flags take precedence)");
  app.add_option("--alpha", alpha, "discount parameter");
  app.add_option("--theta", thetas, "concentration value(s)")->delimiter(',');
  app.add_option("--eps", epsilons, "truncation level(s)")->delimiter(',');
  app.add_option("--n", n, "replications");
  app.add_option("--seed", seed, "master seed (decimal 64-bit)");
  app.add_option("--out", out, "output path (default stdout)");
  app.add_option("--format", format, "csv | json");
  app.add_option("--which", which, "functional: F12 | F13 | mean");
  app.add_option("--sampler", sampler, "exact | approx (tau-dist, functional)");
  app.add_option("--bins", bins, "histogram bins (0: Freedman-Diaconis)");
  app.add_option("--reference-truncation", reference_truncation,
                 "remainder level of the untruncated reference (table3)");
  app.add_flag("--serial", serial, "disable the OpenMP replication kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    epspy::ExperimentConfig config = epspy::default_config(epspy::parse_experiment(experiment));
    if (!config_path.empty()) apply_config_file(config_path, config);
    if (alpha) config.alpha = *alpha;
    if (!thetas.empty()) config.thetas = thetas;
    if (!epsilons.empty()) config.epsilons = epsilons;
    if (n) config.replications = *n;
    if (seed) config.seed = *seed;
    if (out) config.out = *out;
    if (format) config.format = epspy::parse_format(*format);
    if (which) config.functional = epspy::parse_functional(*which);
    if (sampler) config.sampler = epspy::parse_sampler(*sampler);
    if (bins) config.bins = *bins;
    if (reference_truncation) config.reference_truncation = *reference_truncation;
    config.parallel = !serial;
    config.validate();

    if (config.alpha == 0.0 && config.experiment == epspy::Experiment::SampleApprox) {
      std::cerr << "note: alpha = 0 uses the exact Dirichlet sampler (tau - 1 is Poisson)\n";
    }

    if (config.out.empty()) {
      epspy::run_experiment(config, std::cout);
    } else {
      std::ofstream file(config.out);
      if (!file) throw epspy::ConfigError("cannot write '" + config.out + "'");
      epspy::run_experiment(config, file);
    }
  } catch (const epspy::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const epspy::ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const epspy::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
