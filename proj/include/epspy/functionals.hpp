#pragma once

// Functionals of a realization (F(x), the mean) and the closed-form laws of
// F(1/2) and F(1/3) under the alpha = 1/2 Pitman-Yor process with uniform P0.

#include <cstdint>
#include <vector>

#include "epspy/epsilon_py.hpp"

namespace epspy {

/// F_eps(x) = sum_{xi_i <= x} p_i + R_tau 1{xi_0 <= x}; linear scan.
double cdf_eval(const EpsilonPYRealization& realization, double x);

/// Right-continuous CDF of a realization with atoms sorted once and prefix
/// sums cached, for repeated queries.
class RealizationCdf {
 public:
  explicit RealizationCdf(const EpsilonPYRealization& realization);
  double operator()(double x) const;

 private:
  std::vector<double> atoms_;
  std::vector<double> cumulative_;
};

/// mu_eps = sum_i p_i xi_i + R_tau xi_0.
double mean_functional(const EpsilonPYRealization& realization);

/// Mean functional of the untruncated process, approximated by breaking sticks
/// until the remainder is below `truncation` and charging the remainder at
/// `remainder_location` (the mean of P0, which is the conditional expectation
/// of the tail's contribution). alpha = 0 is allowed.
double reference_mean_functional(double alpha, double theta, double truncation,
                                 const BaseMeasure& base, double remainder_location,
                                 RngStream& rng);

/// Reference law of F(w0) on [0,1] at alpha = 1/2 with uniform P0.
class ReferenceLaw {
 public:
  enum class Kind { FHalfBeta, FThirdDensity };

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double theta() const { return theta_; }

  [[nodiscard]] double density(double w) const;
  /// CDF on the real line (0 below 0, 1 above 1).
  [[nodiscard]] double cdf(double w) const;
  [[nodiscard]] double quantile(double p) const;
  [[nodiscard]] double mean() const;

 private:
  friend ReferenceLaw ref_F_half(double theta);
  friend ReferenceLaw ref_F_third(double theta);
  ReferenceLaw(Kind kind, double theta);

  Kind kind_;
  double theta_;
  double log_constant_ = 0.0;  // F(1/3): log of the density's leading constant
};

/// F(1/2) ~ Beta(theta + 1/2, theta + 1/2). Throws ParameterError for theta <= -1/2.
ReferenceLaw ref_F_half(double theta);

/// F(1/3) with density
///   (2/sqrt(pi)) 9^theta Gamma(theta+1)/Gamma(theta+1/2) (w(1-w))^(theta-1/2) / (1+3w)^(theta+1).
ReferenceLaw ref_F_third(double theta);

/// Pointwise F(1/3) density; DomainError unless 0 < w < 1.
double ref_F_third_density(double theta, double w);

/// Integral of the F(1/3) density over [0, w] by tanh-sinh quadrature after the
/// substitution w = sin^2 u, which removes the endpoint singularities.
double ref_F_third_cdf(double theta, double w);

}  // namespace epspy
