#pragma once

// Samplers for the epsilon-truncated Pitman-Yor process
//
//   P_eps = sum_{i <= tau} p_i delta_{xi_i} + R_tau delta_{xi_0},
//
// where p_i = V_i prod_{j<i} (1 - V_j), V_j ~ Beta(1 - alpha, theta + j alpha),
// R_n = prod_{j<=n} (1 - V_j) and tau = tau(eps) = min{n >= 1 : R_n < eps}.

#include <cstdint>
#include <functional>
#include <vector>

#include "epspy/rng.hpp"
#include "epspy/tilted_stable.hpp"

namespace epspy {

struct PYParams {
  double alpha;    // discount, in [0,1)
  double theta;    // concentration, > -alpha (> 0 when alpha == 0)
  double epsilon;  // truncation level, in (0,1)

  /// Throws ParameterError when any field is out of range.
  void validate() const;
  [[nodiscard]] bool is_dirichlet() const { return alpha == 0.0; }
  [[nodiscard]] StableParams stable() const { return {alpha, theta}; }
};

/// Atom-generating distribution P0. Atoms are i.i.d. and independent of the weights.
struct BaseMeasure {
  std::function<double(RngStream&)> sampler;

  /// P0 = Uniform[0,1].
  static BaseMeasure uniform01();
  double operator()(RngStream& rng) const { return sampler(rng); }
};

struct EpsilonPYRealization {
  std::vector<double> weights;  // p_1 .. p_tau
  std::vector<double> atoms;    // xi_1 .. xi_tau
  double remainder = 1.0;       // R_tau
  double extra_atom = 0.0;      // xi_0, carries the remainder
  bool exact = true;            // stopping rule enforced (false for the asymptotic sampler)

  [[nodiscard]] std::size_t tau() const { return weights.size(); }
  /// sum of weights plus remainder (1 up to rounding).
  [[nodiscard]] double total_mass() const;
};

/// Upper limit on the number of sticks in one realization; NumericalFailure beyond it.
inline constexpr std::uint64_t kMaxSticks = std::uint64_t{1} << 26;

/// Exact sampler: break sticks until the remainder drops below epsilon.
/// alpha == 0 delegates to sample_dirichlet_exact.
EpsilonPYRealization sample_exact(const PYParams& params, const BaseMeasure& base, RngStream& rng);

/// Approximate sampler: draw tau from the asymptotic law, then break tau sticks
/// unconditionally. The remainder is not guaranteed to be below epsilon.
/// alpha == 0 is routed to the exact Dirichlet sampler (whose tau - 1 is
/// exactly Poisson).
EpsilonPYRealization sample_approx(const PYParams& params, const BaseMeasure& base, RngStream& rng);

/// Same as sample_approx with a caller-supplied T_{alpha,theta} value.
EpsilonPYRealization sample_approx_given(const PYParams& params, double tilted_stable_draw,
                                         const BaseMeasure& base, RngStream& rng);

/// Dirichlet process (alpha = 0, theta > 0): V_i ~ Beta(1, theta); tau - 1 ~ Poisson(theta log 1/eps).
EpsilonPYRealization sample_dirichlet_exact(const PYParams& params, const BaseMeasure& base,
                                            RngStream& rng);

/// tau = 1 + floor((eps T / alpha)^(-alpha/(1-alpha))) for a given T > 0.
std::uint64_t tau_from_tilted_stable(double alpha, double epsilon, double tilted_stable_draw);

/// Stopping time from the asymptotic law (steps 1-2 of the approximate sampler).
std::uint64_t sample_tau_asymptotic(const PYParams& params, RngStream& rng);
std::uint64_t sample_tau_asymptotic(const PYParams& params, const ZolotarevEnvelope& env,
                                    RngStream& rng);

/// Stopping time of the exact sampler without materializing weights or atoms.
/// Consumes the stream exactly as sample_exact does up to the atom draws.
std::uint64_t sample_tau_exact(const PYParams& params, RngStream& rng);

/// (eps/alpha)^alpha (tau - 1)^(1-alpha): tau at the scale of the alpha-diversity.
double diversity_scale(double alpha, double epsilon, std::uint64_t tau);

/// Unique latent values and their multiplicities.
struct ClusterSummary {
  std::vector<double> values;
  std::vector<std::uint64_t> counts;

  [[nodiscard]] std::size_t k() const { return values.size(); }
  [[nodiscard]] std::uint64_t n() const;
  /// Throws ParameterError for size mismatch or non-positive counts.
  void validate(double alpha) const;
};

enum class SamplerKind { Exact, Approx };

/// Draw from P | X_{1:n} = sum_j q_j delta_{X*_j} + q_{k+1} P*_eps.
struct PosteriorRealization {
  std::vector<double> fixed_atoms;    // X*_1 .. X*_k
  std::vector<double> fixed_weights;  // q_1 .. q_k
  double inner_mass = 1.0;            // q_{k+1}
  EpsilonPYRealization inner;         // P*_eps with parameters (alpha, theta + alpha k)

  [[nodiscard]] double total_mass() const;
  /// Collapse into one weighted atom list; inner weights are scaled by q_{k+1}.
  [[nodiscard]] EpsilonPYRealization flatten() const;
};

/// (q_1..q_{k+1}) ~ Dirichlet(n*_1 - alpha, .., n*_k - alpha, theta + alpha k) and
/// P*_eps an eps-PY with concentration theta + alpha k.
PosteriorRealization posterior_sample(const PYParams& params, const ClusterSummary& clusters,
                                      const BaseMeasure& base, RngStream& rng,
                                      SamplerKind kind = SamplerKind::Exact);

}  // namespace epspy
