#pragma once

// End-to-end experiments: stopping-time tables, functional tables and the
// density data behind the figures. Every (theta, eps) cell draws from its own
// sub-seeded streams, so output depends only on (config, seed).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epspy/epsilon_py.hpp"
#include "epspy/stats.hpp"

namespace epspy {

enum class Experiment {
  Fig1,
  Table1,
  Fig2,
  Table2,
  Table3,
  TiltedStable,
  SampleExact,
  SampleApprox,
  TauDist,
  Functional,
};

enum class OutputFormat { Csv, Json };
enum class FunctionalKind { FHalf, FThird, Mean };

Experiment parse_experiment(std::string_view name);
std::string_view experiment_name(Experiment e);
FunctionalKind parse_functional(std::string_view name);
OutputFormat parse_format(std::string_view name);
SamplerKind parse_sampler(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::Table1;
  double alpha = 0.5;
  std::vector<double> thetas{0.0, 1.0, 10.0};
  std::vector<double> epsilons{0.10, 0.05, 0.01};
  std::size_t replications = 10'000;
  std::uint64_t seed = 20190101;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  FunctionalKind functional = FunctionalKind::FThird;
  SamplerKind sampler = SamplerKind::Exact;
  std::size_t bins = 0;                 // 0: Freedman-Diaconis
  double reference_truncation = 1e-3;   // remainder level of the untruncated-process reference
  bool parallel = true;                 // OpenMP replication kernel

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// Defaults for an experiment: the table grids for tables, one cell otherwise.
ExperimentConfig default_config(Experiment e);

/// Key identifying a parameter cell independently of its position in the grid.
std::uint64_t cell_key(double alpha, double theta, double epsilon);

/// Seed of the stream family for (cell, purpose) under a master seed.
std::uint64_t cell_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t purpose);

/// n replicates of `draw`, serial or OpenMP depending on the config.
std::vector<double> replicate_values(const ExperimentConfig& config, std::uint64_t seed,
                                     const std::function<double(RngStream&)>& draw);

// --- stopping-time table ----------------------------------------------------

struct TauSamples {
  double theta;
  double epsilon;
  std::vector<double> exact;       // diversity-scaled tau from the exact sampler
  std::vector<double> asymptotic;  // diversity-scaled tau from the asymptotic law
};

/// Diversity-scaled stopping times per (theta, eps), in config order.
std::vector<TauSamples> tau_samples(const ExperimentConfig& config);

/// Columns As / Ex and distance dK (two-sample, As vs Ex).
std::vector<SummaryRow> run_table1(const ExperimentConfig& config);

// --- functional tables ------------------------------------------------------

struct FunctionalSamples {
  double theta;
  double epsilon;
  std::vector<double> f_third_exact;   // F_eps(1/3), exact sampler
  std::vector<double> f_third_approx;  // F_eps(1/3), approximate sampler
  std::vector<double> mean_exact;      // mu_eps, exact sampler
  std::vector<double> mean_approx;     // mu_eps, approximate sampler
};

FunctionalSamples functional_samples(const ExperimentConfig& config, double theta,
                                     double epsilon);

/// Untruncated-process sample of the mean functional (shared by all eps of a theta).
std::vector<double> reference_mean_sample(const ExperimentConfig& config, double theta);

struct FunctionalTables {
  std::vector<SummaryRow> f_third;  // Al1 / Al2 vs the closed-form F(1/3) law (alpha = 1/2)
  std::vector<SummaryRow> mean;     // Al1 / Al2 vs the high-truncation PY sample
};

FunctionalTables run_functional_tables(const ExperimentConfig& config, bool want_f_third,
                                       bool want_mean);
std::vector<SummaryRow> run_table2(const ExperimentConfig& config);
std::vector<SummaryRow> run_table3(const ExperimentConfig& config);

// --- density data -----------------------------------------------------------

struct Histogram {
  std::vector<double> edges;    // size bins + 1
  std::vector<double> density;  // size bins; integrates to 1
};

/// Density histogram; bins == 0 selects the Freedman-Diaconis rule.
Histogram make_histogram(std::span<const double> sample, std::size_t bins = 0);

struct DensityRow {
  std::string series;
  double alpha;
  double theta;
  double epsilon;
  double x_lo;
  double x_hi;
  double density;
};

struct DensitySeries {
  std::string series;
  double alpha;
  double theta;
  double epsilon;
  std::vector<double> sample;
};

/// tau draws from the asymptotic law for the three parameter sweeps
/// (series "eps", "alpha", "theta").
std::vector<DensitySeries> fig1_samples(const ExperimentConfig& config);
std::vector<DensityRow> run_fig1(const ExperimentConfig& config);

/// F_eps(1/2) draws for one cell, from the same realizations as functional_samples.
std::vector<double> f_half_samples(const ExperimentConfig& config, double theta, double epsilon,
                                   SamplerKind kind);
/// F_eps(1/2) draws under both samplers (series "Al1", "Al2") plus the
/// Beta(theta+1/2, theta+1/2) reference as cell-averaged density (series "PY").
std::vector<DensityRow> run_fig2(const ExperimentConfig& config);

/// Run `config.experiment` and write its output; returns rows written.
std::size_t run_experiment(const ExperimentConfig& config, std::ostream& out);

}  // namespace epspy
