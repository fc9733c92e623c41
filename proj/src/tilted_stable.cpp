#include "epspy/tilted_stable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "epspy/errors.hpp"

namespace epspy {

namespace {

constexpr double kPi = std::numbers::pi;
// Below this x the 0/0 form of B is replaced by its analytic limit.
constexpr double kSmallX = 1e-10;

double log_b_at_zero(double alpha) {
  return -alpha * std::log(alpha) - (1.0 - alpha) * std::log1p(-alpha);
}

// lim_{x -> pi} log((pi - x) / B(x)).
double log_reflected_limit(double alpha) {
  return alpha * std::log(std::sin(alpha * kPi)) +
         (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * kPi));
}

// log B(pi - y) evaluated from the gap y, so it stays accurate when pi - y
// rounds to pi.
double log_b_from_gap(double y, double alpha) {
  if (y > 0.5 * kPi) return zolotarev_log_b(kPi - y, alpha);
  return std::log(std::sin(y)) - alpha * std::log(std::sin(alpha * (kPi - y))) -
         (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * (kPi - y)));
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << "stable index alpha must lie in (0,1), got " << alpha;
    throw ParameterError(msg.str());
  }
}

}  // namespace

void StableParams::validate() const {
  check_alpha(alpha);
  if (!(theta > -alpha) || !std::isfinite(theta)) {
    std::ostringstream msg;
    msg << "tilting parameter theta must exceed -alpha = " << -alpha << ", got " << theta;
    throw ParameterError(msg.str());
  }
}

double zolotarev_log_b(double x, double alpha) {
  check_alpha(alpha);
  if (!(x >= 0.0 && x < kPi)) {
    std::ostringstream msg;
    msg << "Zolotarev function needs 0 <= x < pi, got " << x;
    throw DomainError(msg.str());
  }
  if (x < kSmallX) return log_b_at_zero(alpha);
  return std::log(std::sin(x)) - alpha * std::log(std::sin(alpha * x)) -
         (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * x));
}

double zolotarev_a(double x, double alpha) {
  return std::exp(-zolotarev_log_b(x, alpha) / (1.0 - alpha));
}

double zolotarev_b(double x, double alpha) { return std::exp(zolotarev_log_b(x, alpha)); }

ZolotarevEnvelope::ZolotarevEnvelope(const StableParams& params)
    : params_(params), b_(0.0), sigma_(0.0), log_b0_(0.0), proposal_(Proposal::Uniform) {
  params_.validate();
  const double alpha = params_.alpha;
  b_ = params_.b();
  log_b0_ = log_b_at_zero(alpha);

  if (b_ > 0.0) {
    sigma_ = 1.0 / std::sqrt(b_ * alpha * (1.0 - alpha));
    proposal_ = sigma_ >= std::sqrt(2.0 * kPi) ? Proposal::Uniform : Proposal::HalfNormal;
  } else if (b_ == 0.0) {
    sigma_ = std::numeric_limits<double>::infinity();
    proposal_ = Proposal::Uniform;
  } else {
    sigma_ = std::numeric_limits<double>::infinity();
    proposal_ = Proposal::Reflected;
    // g(x) = (pi - x) / B(x) is smooth and positive on [0, pi]; bound it on a
    // fine grid and pad by 1%.
    constexpr int kGrid = 4096;
    double best = log_reflected_limit(alpha);
    for (int i = 0; i < kGrid; ++i) {
      const double x = kPi * i / kGrid;
      best = std::max(best, std::log(kPi - x) - zolotarev_log_b(x, alpha));
    }
    log_reflected_bound_ = best + std::log(1.01);
  }
}

double ZolotarevEnvelope::log_normalizer() const {
  const double alpha = params_.alpha;
  return std::lgamma(1.0 + b_ * alpha) + std::lgamma(1.0 + b_ * (1.0 - alpha)) -
         std::log(kPi) - std::lgamma(1.0 + b_);
}

ZolotarevDraw sample_zolotarev(const ZolotarevEnvelope& env, RngStream& rng) {
  const double alpha = env.alpha();
  const double b = env.b();
  const double below_pi = std::nextafter(kPi, 0.0);

  if (b == 0.0) {
    const double x = std::min(kPi * uniform(rng), below_pi);
    return {x, zolotarev_log_b(x, alpha)};
  }

  for (long iter = 0; iter < kRejectionCap; ++iter) {
    switch (env.proposal()) {
      case ZolotarevEnvelope::Proposal::Uniform: {
        const double x = std::min(kPi * uniform(rng), below_pi);
        const double log_v = std::log(uniform(rng));
        const double log_w = zolotarev_log_b(x, alpha);
        if (log_v <= b * (log_w - env.log_b0())) return {x, log_w};
        break;
      }
      case ZolotarevEnvelope::Proposal::HalfNormal: {
        const double n = normal(rng);
        const double log_v = std::log(uniform(rng));
        const double x = env.sigma() * std::abs(n);
        if (x >= kPi) break;
        const double log_w = zolotarev_log_b(x, alpha);
        if (log_v - 0.5 * n * n <= b * (log_w - env.log_b0())) return {x, log_w};
        break;
      }
      case ZolotarevEnvelope::Proposal::Reflected: {
        // pi - X has density proportional to y^b on (0, pi).
        const double y = kPi * std::pow(uniform(rng), 1.0 / (1.0 + b));
        const double log_v = std::log(uniform(rng));
        // near b = -1 a visible share of the mass lies within one ulp of pi
        const double log_w = log_b_from_gap(y, alpha);
        const double log_g = std::log(y) - log_w;
        if (log_v <= -b * (log_g - env.log_reflected_bound())) {
          return {std::clamp(kPi - y, 0.0, below_pi), log_w};
        }
        break;
      }
    }
  }
  std::ostringstream msg;
  msg << "Zolotarev rejection sampler hit the iteration cap (" << kRejectionCap
      << ") at alpha = " << alpha << ", b = " << b;
  throw NumericalFailure(msg.str());
}

ZolotarevDraw sample_zolotarev(const StableParams& params, RngStream& rng) {
  return sample_zolotarev(ZolotarevEnvelope(params), rng);
}

double sample_tilted_stable(const ZolotarevEnvelope& env, RngStream& rng) {
  const double alpha = env.alpha();
  const double theta = env.params().theta;
  const ZolotarevDraw z = sample_zolotarev(env, rng);
  const double log_g = log_gamma_variate(1.0 + theta * (1.0 - alpha) / alpha, rng);
  return std::exp(-(z.log_w + (1.0 - alpha) * log_g) / alpha);
}

double sample_tilted_stable(const StableParams& params, RngStream& rng) {
  return sample_tilted_stable(ZolotarevEnvelope(params), rng);
}

double tilted_stable_moment(const StableParams& params, double r) {
  params.validate();
  const double alpha = params.alpha;
  const double theta = params.theta;
  const double shift = r - theta;
  if (!(shift < alpha)) {
    std::ostringstream msg;
    msg << "E(T^r) is infinite for r - theta >= alpha (r = " << r << ", theta = " << theta
        << ", alpha = " << alpha << ")";
    throw DomainError(msg.str());
  }
  return std::exp(std::lgamma(theta + 1.0) - std::lgamma(theta / alpha + 1.0) +
                  std::lgamma(1.0 - shift / alpha) - std::lgamma(1.0 - shift));
}

}  // namespace epspy
