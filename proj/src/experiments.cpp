#include "epspy/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <sstream>

#include "epspy/errors.hpp"
#include "epspy/functionals.hpp"
#include "epspy/output.hpp"
#include "epspy/replicate.hpp"
#include "epspy/tilted_stable.hpp"

namespace epspy {

namespace {

enum Purpose : std::uint64_t {
  kExactTau = 1,
  kAsymptoticTau = 2,
  kExactRealization = 3,
  kApproxRealization = 4,
  kReference = 5,
  kSingle = 6,
};

struct NamedExperiment {
  Experiment id;
  std::string_view name;
};

constexpr NamedExperiment kExperiments[] = {
    {Experiment::Fig1, "fig1"},
    {Experiment::Table1, "table1"},
    {Experiment::Fig2, "fig2"},
    {Experiment::Table2, "table2"},
    {Experiment::Table3, "table3"},
    {Experiment::TiltedStable, "tilted-stable"},
    {Experiment::SampleExact, "sample-exact"},
    {Experiment::SampleApprox, "sample-approx"},
    {Experiment::TauDist, "tau-dist"},
    {Experiment::Functional, "functional"},
};

bool single_cell(Experiment e) {
  switch (e) {
    case Experiment::TiltedStable:
    case Experiment::SampleExact:
    case Experiment::SampleApprox:
    case Experiment::TauDist:
    case Experiment::Functional:
      return true;
    default:
      return false;
  }
}

[[noreturn]] void config_error(const std::string& what) { throw ConfigError(what); }

}  // namespace

Experiment parse_experiment(std::string_view name) {
  for (const auto& e : kExperiments) {
    if (e.name == name) return e.id;
  }
  config_error("unknown experiment '" + std::string(name) + "'");
}

std::string_view experiment_name(Experiment e) {
  for (const auto& x : kExperiments) {
    if (x.id == e) return x.name;
  }
  return "?";
}

FunctionalKind parse_functional(std::string_view name) {
  if (name == "F12") return FunctionalKind::FHalf;
  if (name == "F13") return FunctionalKind::FThird;
  if (name == "mean") return FunctionalKind::Mean;
  config_error("unknown functional '" + std::string(name) + "' (expected F12, F13 or mean)");
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  config_error("unknown format '" + std::string(name) + "' (expected csv or json)");
}

SamplerKind parse_sampler(std::string_view name) {
  if (name == "exact") return SamplerKind::Exact;
  if (name == "approx" || name == "asymptotic") return SamplerKind::Approx;
  config_error("unknown sampler '" + std::string(name) + "' (expected exact or approx)");
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::Fig2:
      c.thetas = {0.0, 10.0};
      break;
    case Experiment::SampleExact:
    case Experiment::SampleApprox:
      c.thetas = {1.0};
      c.epsilons = {0.01};
      c.replications = 1;
      break;
    case Experiment::TiltedStable:
    case Experiment::TauDist:
    case Experiment::Functional:
      c.thetas = {1.0};
      c.epsilons = {0.01};
      break;
    default:
      break;
  }
  if (e == Experiment::TauDist) c.sampler = SamplerKind::Approx;
  return c;
}

void ExperimentConfig::validate() const {
  if (replications < 1) config_error("replications must be at least 1");
  if (thetas.empty()) config_error("theta list is empty");
  if (epsilons.empty()) config_error("eps list is empty");
  if (!(reference_truncation > 0.0 && reference_truncation < 1.0)) {
    config_error("reference truncation must lie in (0,1)");
  }
  if (bins > 1'000'000) config_error("too many histogram bins");
  if (single_cell(experiment) && (thetas.size() != 1 || epsilons.size() != 1)) {
    config_error(std::string(experiment_name(experiment)) + " takes a single theta and eps");
  }
  const bool needs_half = experiment == Experiment::Table2 || experiment == Experiment::Fig2 ||
                          (experiment == Experiment::Functional &&
                           functional != FunctionalKind::Mean);
  if (needs_half && alpha != 0.5) {
    config_error("closed-form F(1/2), F(1/3) laws need alpha = 0.5");
  }
  const bool needs_stable = experiment == Experiment::Table1 ||
                            experiment == Experiment::TiltedStable ||
                            (experiment == Experiment::TauDist && sampler == SamplerKind::Approx);
  if (needs_stable && !(alpha > 0.0)) {
    config_error("the asymptotic stopping-time law needs alpha > 0");
  }
  if (experiment == Experiment::Fig1) return;  // fixed sweeps
  for (double theta : thetas) {
    for (double eps : epsilons) {
      try {
        PYParams{alpha, theta, eps}.validate();
      } catch (const ParameterError& e) {
        config_error(e.what());
      }
    }
  }
}

std::uint64_t cell_key(double alpha, double theta, double epsilon) {
  std::uint64_t k = RngStream::mix(std::bit_cast<std::uint64_t>(alpha));
  k = RngStream::mix(k ^ std::bit_cast<std::uint64_t>(theta));
  return RngStream::mix(k ^ std::bit_cast<std::uint64_t>(epsilon));
}

std::uint64_t cell_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t purpose) {
  return RngStream(master).split(cell).split(purpose).seed();
}

std::vector<double> replicate_values(const ExperimentConfig& config, std::uint64_t seed,
                                     const std::function<double(RngStream&)>& draw) {
  return config.parallel ? replicate_parallel(config.replications, seed, draw)
                         : replicate_serial(config.replications, seed, draw);
}

// --- stopping-time table ----------------------------------------------------

std::vector<TauSamples> tau_samples(const ExperimentConfig& config) {
  config.validate();
  std::vector<TauSamples> out;
  for (double theta : config.thetas) {
    for (double eps : config.epsilons) {
      const PYParams params{config.alpha, theta, eps};
      const ZolotarevEnvelope env(params.stable());
      const std::uint64_t key = cell_key(config.alpha, theta, eps);
      TauSamples cell{theta, eps, {}, {}};
      cell.exact = replicate_values(config, cell_seed(config.seed, key, kExactTau),
                                    [&](RngStream& rng) {
                                      return diversity_scale(params.alpha, eps,
                                                             sample_tau_exact(params, rng));
                                    });
      cell.asymptotic = replicate_values(
          config, cell_seed(config.seed, key, kAsymptoticTau), [&](RngStream& rng) {
            return diversity_scale(params.alpha, eps, sample_tau_asymptotic(params, env, rng));
          });
      out.push_back(std::move(cell));
    }
  }
  return out;
}

std::vector<SummaryRow> run_table1(const ExperimentConfig& config) {
  std::vector<SummaryRow> rows;
  for (auto& cell : tau_samples(config)) {
    const EmpiricalDistribution as(std::move(cell.asymptotic));
    const EmpiricalDistribution ex(std::move(cell.exact));
    const LabeledSample samples[] = {{"As", &as}, {"Ex", &ex}};
    const DistancePair pairs[] = {{"Ex_As", 0, 1}};
    rows.push_back(summarize(config.alpha, cell.theta, cell.epsilon, samples, pairs));
  }
  return rows;
}

// --- functional tables ------------------------------------------------------

namespace {

struct FunctionalPair {
  double f_third = 0.0;
  double mean = 0.0;
};

std::vector<FunctionalPair> functional_draws(const ExperimentConfig& config, const PYParams& params,
                                             SamplerKind kind, std::uint64_t seed) {
  const BaseMeasure base = BaseMeasure::uniform01();
  const bool dirichlet = params.is_dirichlet();
  const ZolotarevEnvelope env(dirichlet ? StableParams{0.5, 0.0} : params.stable());
  auto draw = [&](RngStream& rng) {
    EpsilonPYRealization r;
    if (kind == SamplerKind::Exact || dirichlet) {
      r = sample_exact(params, base, rng);
    } else {
      r = sample_approx_given(params, sample_tilted_stable(env, rng), base, rng);
    }
    return FunctionalPair{cdf_eval(r, 1.0 / 3.0), mean_functional(r)};
  };
  return config.parallel ? replicate_parallel(config.replications, seed, draw)
                         : replicate_serial(config.replications, seed, draw);
}

}  // namespace

FunctionalSamples functional_samples(const ExperimentConfig& config, double theta,
                                     double epsilon) {
  const PYParams params{config.alpha, theta, epsilon};
  params.validate();
  const std::uint64_t key = cell_key(config.alpha, theta, epsilon);
  FunctionalSamples out{theta, epsilon, {}, {}, {}, {}};
  for (const auto& d :
       functional_draws(config, params, SamplerKind::Exact, cell_seed(config.seed, key, kExactRealization))) {
    out.f_third_exact.push_back(d.f_third);
    out.mean_exact.push_back(d.mean);
  }
  for (const auto& d :
       functional_draws(config, params, SamplerKind::Approx, cell_seed(config.seed, key, kApproxRealization))) {
    out.f_third_approx.push_back(d.f_third);
    out.mean_approx.push_back(d.mean);
  }
  return out;
}

std::vector<double> reference_mean_sample(const ExperimentConfig& config, double theta) {
  const BaseMeasure base = BaseMeasure::uniform01();
  const std::uint64_t key = cell_key(config.alpha, theta, config.reference_truncation);
  return replicate_values(config, cell_seed(config.seed, key, kReference), [&](RngStream& rng) {
    return reference_mean_functional(config.alpha, theta, config.reference_truncation, base, 0.5,
                                     rng);
  });
}

FunctionalTables run_functional_tables(const ExperimentConfig& config, bool want_f_third,
                                       bool want_mean) {
  config.validate();
  if (want_f_third && config.alpha != 0.5) {
    throw ConfigError("the F(1/3) table needs alpha = 0.5");
  }
  FunctionalTables tables;
  for (double theta : config.thetas) {
    std::vector<double> reference;
    if (want_mean) reference = reference_mean_sample(config, theta);
    const EmpiricalDistribution py_mean(reference.empty() ? std::vector<double>{0.0} : reference);

    for (double eps : config.epsilons) {
      FunctionalSamples s = functional_samples(config, theta, eps);
      if (want_f_third) {
        const ReferenceLaw law = ref_F_third(theta);
        const EmpiricalDistribution al1(std::move(s.f_third_exact));
        const EmpiricalDistribution al2(std::move(s.f_third_approx));
        const LabeledSample samples[] = {{"Al1", &al1}, {"Al2", &al2}};
        SummaryRow row = summarize(config.alpha, theta, eps, samples, {});
        auto cdf = [&law](double w) { return law.cdf(w); };
        row.distances.push_back({"Al1", ks_one_sample(al1, cdf)});
        row.distances.push_back({"Al2", ks_one_sample(al2, cdf)});
        row.samples.push_back(
            {"PY", law.mean(), law.quantile(0.25), law.quantile(0.5), law.quantile(0.75)});
        tables.f_third.push_back(std::move(row));
      }
      if (want_mean) {
        const EmpiricalDistribution al1(std::move(s.mean_exact));
        const EmpiricalDistribution al2(std::move(s.mean_approx));
        const LabeledSample samples[] = {{"Al1", &al1}, {"Al2", &al2}, {"PY", &py_mean}};
        const DistancePair pairs[] = {{"Al1", 0, 2}, {"Al2", 1, 2}};
        tables.mean.push_back(summarize(config.alpha, theta, eps, samples, pairs));
      }
    }
  }
  return tables;
}

std::vector<SummaryRow> run_table2(const ExperimentConfig& config) {
  return run_functional_tables(config, true, false).f_third;
}

std::vector<SummaryRow> run_table3(const ExperimentConfig& config) {
  return run_functional_tables(config, false, true).mean;
}

// --- density data -----------------------------------------------------------

Histogram make_histogram(std::span<const double> sample, std::size_t bins) {
  if (sample.empty()) throw ParameterError("histogram of an empty sample");
  const EmpiricalDistribution dist(std::vector<double>(sample.begin(), sample.end()));
  double lo = dist.min();
  double hi = dist.max();
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  if (bins == 0) {
    const double iqr = dist.quantile(0.75) - dist.quantile(0.25);
    const double n = static_cast<double>(sample.size());
    if (iqr > 0.0) {
      const double width = 2.0 * iqr / std::cbrt(n);
      bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    } else {
      bins = static_cast<std::size_t>(std::ceil(std::sqrt(n)));
    }
    bins = std::clamp<std::size_t>(bins, 1, 10'000);
  }
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  h.edges.back() = hi;
  std::vector<double> counts(bins, 0.0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : sample) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    counts[std::min(b, bins - 1)] += 1.0;
  }
  h.density.resize(bins);
  const double n = static_cast<double>(sample.size());
  for (std::size_t i = 0; i < bins; ++i) {
    h.density[i] = counts[i] / (n * (h.edges[i + 1] - h.edges[i]));
  }
  return h;
}

namespace {

void append_histogram(std::vector<DensityRow>& rows, const std::string& series, double alpha,
                      double theta, double eps, std::span<const double> sample, std::size_t bins) {
  const Histogram h = make_histogram(sample, bins);
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    rows.push_back({series, alpha, theta, eps, h.edges[i], h.edges[i + 1], h.density[i]});
  }
}

}  // namespace

std::vector<DensitySeries> fig1_samples(const ExperimentConfig& config) {
  struct Sweep {
    const char* series;
    double alpha;
    double theta;
    double eps;
  };
  static constexpr Sweep kSweeps[] = {
      {"eps", 0.4, 1.0, 0.10},    {"eps", 0.4, 1.0, 0.05},   {"eps", 0.4, 1.0, 0.01},
      {"alpha", 0.4, 1.0, 0.10},  {"alpha", 0.5, 1.0, 0.10}, {"alpha", 0.6, 1.0, 0.10},
      {"theta", 0.25, 0.0, 0.05}, {"theta", 0.25, 1.0, 0.05}, {"theta", 0.25, 10.0, 0.05},
  };
  std::vector<DensitySeries> out;
  for (const auto& s : kSweeps) {
    const PYParams params{s.alpha, s.theta, s.eps};
    const ZolotarevEnvelope env(params.stable());
    const std::uint64_t key = cell_key(s.alpha, s.theta, s.eps);
    out.push_back({s.series, s.alpha, s.theta, s.eps,
                   replicate_values(config, cell_seed(config.seed, key, kAsymptoticTau),
                                    [&](RngStream& rng) {
                                      return static_cast<double>(
                                          sample_tau_asymptotic(params, env, rng));
                                    })});
  }
  return out;
}

std::vector<DensityRow> run_fig1(const ExperimentConfig& config) {
  config.validate();
  std::vector<DensityRow> rows;
  for (const auto& s : fig1_samples(config)) {
    append_histogram(rows, s.series, s.alpha, s.theta, s.epsilon, s.sample, config.bins);
  }
  return rows;
}

std::vector<double> f_half_samples(const ExperimentConfig& config, double theta, double epsilon,
                                   SamplerKind kind) {
  const PYParams params{config.alpha, theta, epsilon};
  params.validate();
  const BaseMeasure base = BaseMeasure::uniform01();
  const std::uint64_t key = cell_key(config.alpha, theta, epsilon);
  if (kind == SamplerKind::Exact) {
    return replicate_values(config, cell_seed(config.seed, key, kExactRealization),
                            [&](RngStream& rng) { return cdf_eval(sample_exact(params, base, rng), 0.5); });
  }
  // same stream layout as functional_draws, including the Dirichlet fallback
  const bool dirichlet = params.is_dirichlet();
  const ZolotarevEnvelope env(dirichlet ? StableParams{0.5, 0.0} : params.stable());
  return replicate_values(config, cell_seed(config.seed, key, kApproxRealization),
                          [&](RngStream& rng) {
                            if (dirichlet) return cdf_eval(sample_exact(params, base, rng), 0.5);
                            const double t = sample_tilted_stable(env, rng);
                            return cdf_eval(sample_approx_given(params, t, base, rng), 0.5);
                          });
}

std::vector<DensityRow> run_fig2(const ExperimentConfig& config) {
  config.validate();
  constexpr std::size_t kReferenceCells = 400;
  std::vector<DensityRow> rows;
  for (double theta : config.thetas) {
    for (double eps : config.epsilons) {
      const auto exact = f_half_samples(config, theta, eps, SamplerKind::Exact);
      const auto approx = f_half_samples(config, theta, eps, SamplerKind::Approx);
      append_histogram(rows, "Al1", config.alpha, theta, eps, exact, config.bins);
      append_histogram(rows, "Al2", config.alpha, theta, eps, approx, config.bins);
    }
    const ReferenceLaw law = ref_F_half(theta);
    for (std::size_t i = 0; i < kReferenceCells; ++i) {
      const double lo = static_cast<double>(i) / kReferenceCells;
      const double hi = static_cast<double>(i + 1) / kReferenceCells;
      rows.push_back({"PY", config.alpha, theta, 0.0, lo, hi,
                      (law.cdf(hi) - law.cdf(lo)) / (hi - lo)});
    }
  }
  return rows;
}

// --- dispatch ---------------------------------------------------------------

namespace {

std::size_t write_table(const ExperimentConfig& config, const std::vector<SummaryRow>& rows,
                        std::ostream& out) {
  if (config.format == OutputFormat::Json) {
    write_summary_json(out, rows);
  } else {
    write_summary_csv(out, rows);
  }
  return rows.size();
}

std::size_t write_values(const ExperimentConfig& config, const std::vector<std::string>& columns,
                         const std::vector<std::vector<double>>& rows, std::ostream& out) {
  if (config.format == OutputFormat::Json) {
    write_values_json(out, columns, rows);
  } else {
    write_values_csv(out, columns, rows);
  }
  return rows.size();
}

std::size_t write_density(const ExperimentConfig& config, const std::vector<DensityRow>& rows,
                          std::ostream& out) {
  if (config.format == OutputFormat::Json) {
    write_density_json(out, rows);
  } else {
    write_density_csv(out, rows);
  }
  return rows.size();
}

}  // namespace

std::size_t run_experiment(const ExperimentConfig& config, std::ostream& out) {
  config.validate();
  const double theta = config.thetas.front();
  const double eps = config.epsilons.front();
  const std::uint64_t single_seed =
      cell_seed(config.seed, cell_key(config.alpha, theta, eps), kSingle);
  const BaseMeasure base = BaseMeasure::uniform01();

  switch (config.experiment) {
    case Experiment::Table1:
      return write_table(config, run_table1(config), out);
    case Experiment::Table2:
      return write_table(config, run_table2(config), out);
    case Experiment::Table3:
      return write_table(config, run_table3(config), out);
    case Experiment::Fig1:
      return write_density(config, run_fig1(config), out);
    case Experiment::Fig2:
      return write_density(config, run_fig2(config), out);

    case Experiment::TiltedStable: {
      const ZolotarevEnvelope env(StableParams{config.alpha, theta});
      const auto t = replicate_values(config, single_seed,
                                      [&](RngStream& rng) { return sample_tilted_stable(env, rng); });
      std::vector<std::vector<double>> rows;
      for (double v : t) rows.push_back({v});
      return write_values(config, {"t"}, rows, out);
    }

    case Experiment::TauDist: {
      const PYParams params{config.alpha, theta, eps};
      const bool asymptotic = config.sampler == SamplerKind::Approx;
      const ZolotarevEnvelope env(asymptotic ? params.stable() : StableParams{0.5, 0.0});
      const auto taus = replicate_values(config, single_seed, [&](RngStream& rng) {
        return static_cast<double>(asymptotic ? sample_tau_asymptotic(params, env, rng)
                                              : sample_tau_exact(params, rng));
      });
      std::vector<std::vector<double>> rows;
      for (double t : taus) {
        const double scaled = params.alpha > 0.0
                                  ? diversity_scale(params.alpha, eps, static_cast<std::uint64_t>(t))
                                  : t - 1.0;
        rows.push_back({t, scaled});
      }
      return write_values(config, {"tau", "scaled"}, rows, out);
    }

    case Experiment::Functional: {
      const PYParams params{config.alpha, theta, eps};
      const auto values = replicate_values(config, single_seed, [&](RngStream& rng) {
        const EpsilonPYRealization r = config.sampler == SamplerKind::Exact
                                           ? sample_exact(params, base, rng)
                                           : sample_approx(params, base, rng);
        switch (config.functional) {
          case FunctionalKind::FHalf:
            return cdf_eval(r, 0.5);
          case FunctionalKind::FThird:
            return cdf_eval(r, 1.0 / 3.0);
          case FunctionalKind::Mean:
            break;
        }
        return mean_functional(r);
      });
      std::vector<std::vector<double>> rows;
      for (double v : values) rows.push_back({v});
      return write_values(config, {"value"}, rows, out);
    }

    case Experiment::SampleExact:
    case Experiment::SampleApprox: {
      const PYParams params{config.alpha, theta, eps};
      const bool exact = config.experiment == Experiment::SampleExact;
      auto draws = replicate_serial(config.replications, single_seed, [&](RngStream& rng) {
        return exact ? sample_exact(params, base, rng) : sample_approx(params, base, rng);
      });
      if (config.format == OutputFormat::Json) {
        write_realization_json(out, draws);
      } else {
        write_realization_csv(out, draws);
      }
      return draws.size();
    }
  }
  return 0;
}

}  // namespace epspy
