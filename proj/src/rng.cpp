#include "epspy/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "epspy/errors.hpp"

namespace epspy {

namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

void check_shape(double shape, const char* what) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw ParameterError(std::string(what) + " must be positive and finite, got " +
                         std::to_string(shape));
  }
}

// Marsaglia & Tsang (2000) squeeze method; shape >= 1. Returns log G.
double log_gamma_large(double shape, RngStream& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
  }
}

// Clamp into the open unit interval.
double open_unit(double x) {
  constexpr double lo = std::numeric_limits<double>::denorm_min();
  constexpr double hi = 1.0 - kTwoPow53Inv;
  return std::clamp(x, lo, hi);
}

}  // namespace

double uniform(RngStream& rng) {
  // 53 random bits placed at the centre of their cell: strictly inside (0,1).
  return (static_cast<double>(rng.next() >> 11) + 0.5) * kTwoPow53Inv;
}

double normal(RngStream& rng) {
  for (;;) {
    const double u = 2.0 * uniform(rng) - 1.0;
    const double v = 2.0 * uniform(rng) - 1.0;
    const double s = u * u + v * v;
    if (s < 1.0 && s > 0.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double exponential(RngStream& rng) { return -std::log(uniform(rng)); }

double log_gamma_variate(double shape, RngStream& rng) {
  check_shape(shape, "gamma shape");
  if (shape >= 1.0) return log_gamma_large(shape, rng);
  // G_a = G_{a+1} * U^{1/a}
  const double boost = std::log(uniform(rng)) / shape;
  return log_gamma_large(shape + 1.0, rng) + boost;
}

double gamma(double shape, RngStream& rng) {
  const double g = std::exp(log_gamma_variate(shape, rng));
  return std::max(g, std::numeric_limits<double>::denorm_min());
}

BetaDraw beta_draw(double a, double b, RngStream& rng) {
  check_shape(a, "beta parameter a");
  check_shape(b, "beta parameter b");
  const double la = log_gamma_variate(a, rng);
  const double lb = log_gamma_variate(b, rng);
  const double lse = std::max(la, lb) + std::log1p(std::exp(-std::abs(la - lb)));
  const double log_c = lb - lse;
  return BetaDraw{open_unit(std::exp(la - lse)), open_unit(std::exp(log_c)), log_c};
}

double beta(double a, double b, RngStream& rng) { return beta_draw(a, b, rng).value; }

}  // namespace epspy
