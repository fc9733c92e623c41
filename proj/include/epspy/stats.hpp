#pragma once

// Empirical distributions, Kolmogorov distances and table summaries.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace epspy {

class EmpiricalDistribution {
 public:
  /// Sorts the sample. Throws ParameterError on an empty or non-finite sample.
  explicit EmpiricalDistribution(std::vector<double> sample);

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double min() const { return values_.front(); }
  [[nodiscard]] double max() const { return values_.back(); }

  /// Fraction of the sample <= x.
  [[nodiscard]] double ecdf(double x) const;
  /// Type-7 (linear interpolation) quantile; p in [0,1] else ParameterError.
  [[nodiscard]] double quantile(double p) const;
  [[nodiscard]] double mean() const;
  /// Unbiased sample variance (0 for a single point).
  [[nodiscard]] double variance() const;
  /// Standard error of the mean.
  [[nodiscard]] double standard_error() const;

 private:
  std::vector<double> values_;
};

/// sup_x |F_a(x) - F_b(x)|, exact: all tied values are consumed before the gap is read.
double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// max_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|) over the sorted sample.
double ks_one_sample(const EmpiricalDistribution& a, const std::function<double(double)>& cdf);

/// Asymptotic critical value of the one-sample statistic, c(level) / sqrt(n)
/// with c from the Kolmogorov distribution (e.g. 1.628 at level 0.01).
double ks_critical_one_sample(std::size_t n, double level);
/// Two-sample counterpart, c(level) * sqrt((n + m) / (n m)).
double ks_critical_two_sample(std::size_t n, std::size_t m, double level);

struct ChiSquareResult {
  double statistic;
  int degrees_of_freedom;
  double p_value;
};

/// Pearson goodness of fit of non-negative integer data to Poisson(lambda).
/// Cells are pooled from both tails until each expects at least `min_expected`.
ChiSquareResult chi_square_poisson(std::span<const std::uint64_t> data, double lambda,
                                   double min_expected = 5.0);

struct SampleSummary {
  std::string label;
  double mean = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
};

SampleSummary describe(std::string label, const EmpiricalDistribution& sample);

struct NamedDistance {
  std::string label;
  double value;  // full precision; tables show 100 x value
};

/// One row of a results table: a (theta, eps) cell with Kolmogorov distances
/// and per-column summaries.
struct SummaryRow {
  double alpha = 0.0;
  double theta = 0.0;
  double epsilon = 0.0;
  std::vector<NamedDistance> distances;
  std::vector<SampleSummary> samples;

  [[nodiscard]] const SampleSummary& sample(const std::string& label) const;
  [[nodiscard]] double distance(const std::string& label) const;
};

struct LabeledSample {
  std::string label;
  const EmpiricalDistribution* sample;
};

struct DistancePair {
  std::string label;
  std::size_t first;   // index into samples
  std::size_t second;
};

/// Summaries for each sample and two-sample distances for the requested pairs.
SummaryRow summarize(double alpha, double theta, double epsilon,
                     std::span<const LabeledSample> samples,
                     std::span<const DistancePair> pairs);

}  // namespace epspy
