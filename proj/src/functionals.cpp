#include "epspy/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "epspy/errors.hpp"

namespace epspy {

double cdf_eval(const EpsilonPYRealization& realization, double x) {
  double f = 0.0;
  for (std::size_t i = 0; i < realization.tau(); ++i) {
    if (realization.atoms[i] <= x) f += realization.weights[i];
  }
  if (realization.extra_atom <= x) f += realization.remainder;
  return std::min(f, 1.0);
}

RealizationCdf::RealizationCdf(const EpsilonPYRealization& realization) {
  const std::size_t n = realization.tau();
  std::vector<std::size_t> order(n + 1);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto atom = [&](std::size_t i) { return i < n ? realization.atoms[i] : realization.extra_atom; };
  auto weight = [&](std::size_t i) { return i < n ? realization.weights[i] : realization.remainder; };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return atom(a) < atom(b); });
  atoms_.reserve(n + 1);
  cumulative_.reserve(n + 1);
  double running = 0.0;
  for (std::size_t i : order) {
    running += weight(i);
    atoms_.push_back(atom(i));
    cumulative_.push_back(running);
  }
}

double RealizationCdf::operator()(double x) const {
  const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return std::min(cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1], 1.0);
}

double mean_functional(const EpsilonPYRealization& realization) {
  double mu = realization.remainder * realization.extra_atom;
  for (std::size_t i = 0; i < realization.tau(); ++i) {
    mu += realization.weights[i] * realization.atoms[i];
  }
  return mu;
}

double reference_mean_functional(double alpha, double theta, double truncation,
                                 const BaseMeasure& base, double remainder_location,
                                 RngStream& rng) {
  const PYParams params{alpha, theta, truncation};
  params.validate();
  const double a = 1.0 - alpha;
  double remainder = 1.0;
  double mu = 0.0;
  for (std::uint64_t i = 1; remainder >= truncation; ++i) {
    if (i > kMaxSticks) throw NumericalFailure("reference truncation exceeded the stick cap");
    const BetaDraw v = beta_draw(a, theta + static_cast<double>(i) * alpha, rng);
    mu += v.value * remainder * base(rng);
    remainder *= v.complement;
  }
  return mu + remainder * remainder_location;
}

namespace {

constexpr double kPi = std::numbers::pi;

void check_theta(double theta) {
  if (!(theta > -0.5) || !std::isfinite(theta)) {
    std::ostringstream msg;
    msg << "reference laws at alpha = 1/2 need theta > -1/2, got " << theta;
    throw ParameterError(msg.str());
  }
}

double third_log_constant(double theta) {
  return std::log(2.0 / std::sqrt(kPi)) + theta * std::log(9.0) + std::lgamma(theta + 1.0) -
         std::lgamma(theta + 0.5);
}

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  return ts;
}

constexpr double kQuadTolerance = 1e-13;

// Integrand after w = sin^2 u: 2 C (sin u cos u)^(2 theta) / (1 + 3 sin^2 u)^(theta + 1),
// optionally times w.
double third_integral(double theta, double log_c, double u_hi, bool first_moment) {
  if (u_hi <= 0.0) return 0.0;
  auto f = [=](double u) {
    const double s = std::sin(u);
    const double c = std::cos(u);
    const double s2 = s * s;
    double v = std::exp(log_c + std::log(2.0) + 2.0 * theta * std::log(s * c) -
                        (theta + 1.0) * std::log1p(3.0 * s2));
    return first_moment ? v * s2 : v;
  };
  return integrator().integrate(f, 0.0, u_hi, kQuadTolerance);
}

}  // namespace

ReferenceLaw::ReferenceLaw(Kind kind, double theta) : kind_(kind), theta_(theta) {
  check_theta(theta);
  if (kind_ == Kind::FThirdDensity) log_constant_ = third_log_constant(theta);
}

ReferenceLaw ref_F_half(double theta) { return ReferenceLaw(ReferenceLaw::Kind::FHalfBeta, theta); }

ReferenceLaw ref_F_third(double theta) {
  return ReferenceLaw(ReferenceLaw::Kind::FThirdDensity, theta);
}

double ReferenceLaw::density(double w) const {
  if (!(w > 0.0 && w < 1.0)) {
    std::ostringstream msg;
    msg << "reference density is evaluated on (0,1), got " << w;
    throw DomainError(msg.str());
  }
  if (kind_ == Kind::FHalfBeta) {
    return boost::math::pdf(boost::math::beta_distribution<double>(theta_ + 0.5, theta_ + 0.5), w);
  }
  return ref_F_third_density(theta_, w);
}

double ReferenceLaw::cdf(double w) const {
  if (w <= 0.0) return 0.0;
  if (w >= 1.0) return 1.0;
  if (kind_ == Kind::FHalfBeta) {
    return boost::math::cdf(boost::math::beta_distribution<double>(theta_ + 0.5, theta_ + 0.5), w);
  }
  return std::clamp(ref_F_third_cdf(theta_, w), 0.0, 1.0);
}

double ReferenceLaw::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("quantile level must lie in [0,1]");
  if (kind_ == Kind::FHalfBeta) {
    return boost::math::quantile(boost::math::beta_distribution<double>(theta_ + 0.5, theta_ + 0.5),
                                 p);
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ReferenceLaw::mean() const {
  if (kind_ == Kind::FHalfBeta) return 0.5;
  return third_integral(theta_, log_constant_, 0.5 * kPi, true);
}

double ref_F_third_density(double theta, double w) {
  check_theta(theta);
  if (!(w > 0.0 && w < 1.0)) {
    std::ostringstream msg;
    msg << "F(1/3) density is defined for 0 < w < 1, got " << w;
    throw DomainError(msg.str());
  }
  return std::exp(third_log_constant(theta) + (theta - 0.5) * std::log(w * (1.0 - w)) -
                  (theta + 1.0) * std::log1p(3.0 * w));
}

double ref_F_third_cdf(double theta, double w) {
  check_theta(theta);
  if (w <= 0.0) return 0.0;
  const double u = w >= 1.0 ? 0.5 * kPi : std::asin(std::sqrt(w));
  return third_integral(theta, third_log_constant(theta), u, false);
}

}  // namespace epspy
