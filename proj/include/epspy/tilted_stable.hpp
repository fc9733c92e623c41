#pragma once

// Positive stable variable T_alpha (Laplace transform exp(-s^alpha)) and its
// polynomially tilted version T_{alpha,theta} with density proportional to
// t^{-theta} f_alpha(t). Generation goes through Zolotarev's integral
// representation: one gamma variate and one Zolotarev variate drawn by
// rejection.

#include <cmath>

#include "epspy/rng.hpp"

namespace epspy {

struct StableParams {
  double alpha;  // in (0,1)
  double theta;  // > -alpha

  /// Throws ParameterError unless 0 < alpha < 1 and theta > -alpha.
  void validate() const;
  /// Exponent of the Zolotarev density, b = theta / alpha > -1.
  [[nodiscard]] double b() const { return theta / alpha; }
};

/// log B(x) with B(x) = sin x / (sin(alpha x)^alpha sin((1-alpha)x)^(1-alpha)).
/// Throws DomainError unless 0 <= x < pi.
double zolotarev_log_b(double x, double alpha);

/// Zolotarev function A(x) = B(x)^(-1/(1-alpha)); A(0) = alpha^(alpha/(1-alpha)) (1-alpha).
double zolotarev_a(double x, double alpha);

/// B(x) = A(x)^(-(1-alpha)); decreasing on [0,pi) from B(0) to 0.
double zolotarev_b(double x, double alpha);

/// Rejection set-up for the Zolotarev density C * B(x)^b on [0,pi].
class ZolotarevEnvelope {
 public:
  enum class Proposal {
    Uniform,    // b == 0 (exact), or b > 0 with sigma >= sqrt(2 pi)
    HalfNormal, // b > 0 with sigma < sqrt(2 pi)
    Reflected,  // -1 < b < 0: density blows up at pi, proposal ~ (pi - x)^b
  };

  explicit ZolotarevEnvelope(const StableParams& params);

  [[nodiscard]] const StableParams& params() const { return params_; }
  [[nodiscard]] double alpha() const { return params_.alpha; }
  [[nodiscard]] double b() const { return b_; }
  /// sigma^2 = 1 / (b alpha (1-alpha)); +infinity when b <= 0.
  [[nodiscard]] double sigma() const { return sigma_; }
  /// B(0) = alpha^-alpha (1-alpha)^-(1-alpha).
  [[nodiscard]] double b0() const { return std::exp(log_b0_); }
  [[nodiscard]] double log_b0() const { return log_b0_; }
  [[nodiscard]] Proposal proposal() const { return proposal_; }
  /// For the reflected proposal: log of sup_x (pi - x) / B(x), with margin.
  [[nodiscard]] double log_reflected_bound() const { return log_reflected_bound_; }

  /// log C, the normalizer of C * B(x)^b.
  [[nodiscard]] double log_normalizer() const;

 private:
  StableParams params_;
  double b_;
  double sigma_;
  double log_b0_;
  double log_reflected_bound_ = 0.0;
  Proposal proposal_;
};

struct ZolotarevDraw {
  double x;      // in [0, pi)
  double log_w;  // log B(x)
};

/// Maximum rejection-loop iterations before NumericalFailure is thrown.
inline constexpr long kRejectionCap = 1'000'000;

/// Variate with density proportional to B(x)^b on [0,pi], b = theta/alpha.
ZolotarevDraw sample_zolotarev(const ZolotarevEnvelope& env, RngStream& rng);
ZolotarevDraw sample_zolotarev(const StableParams& params, RngStream& rng);

/// T_{alpha,theta} = 1 / (W G^(1-alpha))^(1/alpha) with W = B(Z) and
/// G ~ Gamma(1 + theta (1-alpha) / alpha).
double sample_tilted_stable(const ZolotarevEnvelope& env, RngStream& rng);
double sample_tilted_stable(const StableParams& params, RngStream& rng);

/// Closed-form E(T_{alpha,theta}^r)
///   = Gamma(theta+1)/Gamma(theta/alpha+1) * Gamma(1-(r-theta)/alpha)/Gamma(1-(r-theta)).
/// Throws DomainError when r - theta >= alpha (the moment is infinite).
double tilted_stable_moment(const StableParams& params, double r);

}  // namespace epspy
