#include "epspy/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "epspy/errors.hpp"

namespace epspy {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> sample)
    : values_(std::move(sample)) {
  if (values_.empty()) throw ParameterError("empirical distribution needs at least one value");
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("empirical distribution got a non-finite value");
  }
  std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::ecdf(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "quantile level must lie in [0,1], got " << p;
    throw ParameterError(msg.str());
  }
  const double h = p * static_cast<double>(values_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values_.size()) return values_.back();
  return values_[lo] + (h - static_cast<double>(lo)) * (values_[lo + 1] - values_[lo]);
}

double EmpiricalDistribution::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

double EmpiricalDistribution::variance() const {
  if (values_.size() < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double v : values_) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values_.size() - 1);
}

double EmpiricalDistribution::standard_error() const {
  return std::sqrt(variance() / static_cast<double>(values_.size()));
}

double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  const auto xs = a.values();
  const auto ys = b.values();
  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() || j < ys.size()) {
    double v;
    if (j == ys.size() || (i < xs.size() && xs[i] <= ys[j])) {
      v = xs[i];
    } else {
      v = ys[j];
    }
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return d;
}

double ks_one_sample(const EmpiricalDistribution& a, const std::function<double(double)>& cdf) {
  const auto xs = a.values();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f),
                  std::abs(static_cast<double>(i) / n - f)});
  }
  return d;
}

namespace {

// Kolmogorov limiting distribution P(K <= x) = 1 - 2 sum_k (-1)^(k-1) exp(-2 k^2 x^2).
double kolmogorov_cdf(double x) {
  if (x <= 0.0) return 0.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return 1.0 - 2.0 * s;
}

double kolmogorov_upper_quantile(double level) {
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("significance level must lie in (0,1)");
  double lo = 0.2;
  double hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (1.0 - kolmogorov_cdf(mid) > level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double ks_critical_one_sample(std::size_t n, double level) {
  if (n == 0) throw ParameterError("critical value needs a non-empty sample");
  return kolmogorov_upper_quantile(level) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(std::size_t n, std::size_t m, double level) {
  if (n == 0 || m == 0) throw ParameterError("critical value needs non-empty samples");
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return kolmogorov_upper_quantile(level) * std::sqrt((nn + mm) / (nn * mm));
}

ChiSquareResult chi_square_poisson(std::span<const std::uint64_t> data, double lambda,
                                   double min_expected) {
  if (data.empty()) throw ParameterError("chi-square test needs data");
  if (!(lambda > 0.0)) throw ParameterError("Poisson mean must be positive");
  const boost::math::poisson_distribution<double> law(lambda);
  const double total = static_cast<double>(data.size());

  // Cells [0, lo], lo+1, ..., hi-1, [hi, inf).
  std::uint64_t lo = 0;
  while (boost::math::cdf(law, static_cast<double>(lo)) * total < min_expected) ++lo;
  std::uint64_t hi = lo + 1;
  while (boost::math::cdf(boost::math::complement(law, static_cast<double>(hi))) * total >=
         min_expected) {
    ++hi;
  }
  if (hi <= lo + 1) throw ParameterError("too few observations for a chi-square test");

  const std::size_t cells = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> observed(cells, 0.0);
  for (std::uint64_t x : data) {
    const std::uint64_t c = std::clamp(x, lo, hi);
    observed[static_cast<std::size_t>(c - lo)] += 1.0;
  }
  std::vector<double> expected(cells);
  expected.front() = boost::math::cdf(law, static_cast<double>(lo));
  for (std::uint64_t k = lo + 1; k < hi; ++k) {
    expected[static_cast<std::size_t>(k - lo)] = boost::math::pdf(law, static_cast<double>(k));
  }
  expected.back() = boost::math::cdf(boost::math::complement(law, static_cast<double>(hi - 1)));

  double stat = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double e = expected[c] * total;
    stat += (observed[c] - e) * (observed[c] - e) / e;
  }
  const int dof = static_cast<int>(cells) - 1;
  const boost::math::chi_squared_distribution<double> chi(dof);
  return {stat, dof, boost::math::cdf(boost::math::complement(chi, stat))};
}

SampleSummary describe(std::string label, const EmpiricalDistribution& sample) {
  return {std::move(label), sample.mean(), sample.quantile(0.25), sample.quantile(0.5),
          sample.quantile(0.75)};
}

const SampleSummary& SummaryRow::sample(const std::string& label) const {
  for (const auto& s : samples) {
    if (s.label == label) return s;
  }
  throw std::out_of_range("no sample column '" + label + "'");
}

double SummaryRow::distance(const std::string& label) const {
  for (const auto& d : distances) {
    if (d.label == label) return d.value;
  }
  throw std::out_of_range("no distance column '" + label + "'");
}

SummaryRow summarize(double alpha, double theta, double epsilon,
                     std::span<const LabeledSample> samples,
                     std::span<const DistancePair> pairs) {
  SummaryRow row;
  row.alpha = alpha;
  row.theta = theta;
  row.epsilon = epsilon;
  for (const auto& s : samples) row.samples.push_back(describe(s.label, *s.sample));
  for (const auto& p : pairs) {
    row.distances.push_back(
        {p.label, ks_two_sample(*samples[p.first].sample, *samples[p.second].sample)});
  }
  return row;
}

}  // namespace epspy
