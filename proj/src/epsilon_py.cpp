#include "epspy/epsilon_py.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "epspy/errors.hpp"

namespace epspy {

namespace {

[[noreturn]] void too_many_sticks(const PYParams& params) {
  std::ostringstream msg;
  msg << "truncation exceeded " << kMaxSticks << " sticks (alpha = " << params.alpha
      << ", theta = " << params.theta << ", eps = " << params.epsilon << ")";
  throw NumericalFailure(msg.str());
}

// Neumaier summation: the error stays O(ulp) however many sticks there are.
double compensated_sum(const std::vector<double>& xs, double start) {
  double sum = start;
  double carry = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + carry;
}

// The product recursion loses about one ulp of R per stick; with millions of
// sticks that adds up, so the realization is rescaled to unit mass.
void renormalize(EpsilonPYRealization& out) {
  const double total = compensated_sum(out.weights, out.remainder);
  for (double& w : out.weights) w /= total;
  out.remainder /= total;
}

void draw_atoms(EpsilonPYRealization& out, const BaseMeasure& base, RngStream& rng) {
  out.atoms.resize(out.weights.size());
  for (double& atom : out.atoms) atom = base(rng);
  out.extra_atom = base(rng);
}

// Sticks until the remainder drops below epsilon; shared by the exact and
// Dirichlet samplers. Beta(1 - alpha, theta + i alpha) covers both.
void break_until_below(const PYParams& params, EpsilonPYRealization& out, RngStream& rng) {
  const double a = 1.0 - params.alpha;
  double remainder = 1.0;
  std::uint64_t i = 1;
  while (remainder >= params.epsilon) {
    if (i > kMaxSticks) too_many_sticks(params);
    const BetaDraw v = beta_draw(a, params.theta + static_cast<double>(i) * params.alpha, rng);
    out.weights.push_back(v.value * remainder);
    remainder *= v.complement;
    ++i;
  }
  out.remainder = remainder;
  renormalize(out);
}

}  // namespace

void PYParams::validate() const {
  std::ostringstream msg;
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    msg << "discount alpha must lie in [0,1), got " << alpha;
  } else if (!(epsilon > 0.0 && epsilon < 1.0)) {
    msg << "truncation level eps must lie in (0,1), got " << epsilon;
  } else if (!std::isfinite(theta)) {
    msg << "concentration theta must be finite, got " << theta;
  } else if (alpha == 0.0 && !(theta > 0.0)) {
    msg << "Dirichlet case (alpha = 0) needs theta > 0, got " << theta;
  } else if (!(theta > -alpha)) {
    msg << "concentration theta must exceed -alpha = " << -alpha << ", got " << theta;
  } else {
    return;
  }
  throw ParameterError(msg.str());
}

BaseMeasure BaseMeasure::uniform01() {
  return BaseMeasure{[](RngStream& rng) { return uniform(rng); }};
}

double EpsilonPYRealization::total_mass() const {
  return compensated_sum(weights, remainder);
}

EpsilonPYRealization sample_exact(const PYParams& params, const BaseMeasure& base,
                                  RngStream& rng) {
  params.validate();
  if (params.is_dirichlet()) return sample_dirichlet_exact(params, base, rng);
  EpsilonPYRealization out;
  break_until_below(params, out, rng);
  draw_atoms(out, base, rng);
  out.exact = true;
  return out;
}

EpsilonPYRealization sample_dirichlet_exact(const PYParams& params, const BaseMeasure& base,
                                            RngStream& rng) {
  params.validate();
  if (!params.is_dirichlet()) {
    throw ParameterError("sample_dirichlet_exact requires alpha = 0");
  }
  EpsilonPYRealization out;
  break_until_below(params, out, rng);
  draw_atoms(out, base, rng);
  out.exact = true;
  return out;
}

std::uint64_t tau_from_tilted_stable(double alpha, double epsilon, double tilted_stable_draw) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("tau_from_tilted_stable needs 0 < alpha < 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("tau_from_tilted_stable needs 0 < eps < 1");
  if (!(tilted_stable_draw > 0.0) || !std::isfinite(tilted_stable_draw)) {
    throw ParameterError("tilted stable draw must be positive and finite");
  }
  const double count =
      std::pow(epsilon * tilted_stable_draw / alpha, -alpha / (1.0 - alpha));
  if (!(count < static_cast<double>(kMaxSticks))) {
    std::ostringstream msg;
    msg << "asymptotic stopping time " << count << " exceeds " << kMaxSticks << " sticks";
    throw NumericalFailure(msg.str());
  }
  return 1 + static_cast<std::uint64_t>(std::floor(count));
}

std::uint64_t sample_tau_asymptotic(const PYParams& params, const ZolotarevEnvelope& env,
                                    RngStream& rng) {
  return tau_from_tilted_stable(params.alpha, params.epsilon, sample_tilted_stable(env, rng));
}

std::uint64_t sample_tau_asymptotic(const PYParams& params, RngStream& rng) {
  params.validate();
  if (params.is_dirichlet()) {
    throw ParameterError("asymptotic stopping time needs alpha > 0");
  }
  return sample_tau_asymptotic(params, ZolotarevEnvelope(params.stable()), rng);
}

std::uint64_t sample_tau_exact(const PYParams& params, RngStream& rng) {
  params.validate();
  const double a = 1.0 - params.alpha;
  double remainder = 1.0;
  std::uint64_t i = 1;
  while (remainder >= params.epsilon) {
    if (i > kMaxSticks) too_many_sticks(params);
    remainder *= beta_draw(a, params.theta + static_cast<double>(i) * params.alpha, rng).complement;
    ++i;
  }
  return i - 1;
}

EpsilonPYRealization sample_approx_given(const PYParams& params, double tilted_stable_draw,
                                         const BaseMeasure& base, RngStream& rng) {
  params.validate();
  const std::uint64_t tau = tau_from_tilted_stable(params.alpha, params.epsilon, tilted_stable_draw);
  EpsilonPYRealization out;
  out.weights.resize(tau);
  const double a = 1.0 - params.alpha;
  double remainder = 1.0;
  for (std::uint64_t i = 1; i <= tau; ++i) {
    const BetaDraw v = beta_draw(a, params.theta + static_cast<double>(i) * params.alpha, rng);
    out.weights[i - 1] = v.value * remainder;
    remainder *= v.complement;
  }
  out.remainder = remainder;
  renormalize(out);
  draw_atoms(out, base, rng);
  out.exact = false;
  return out;
}

EpsilonPYRealization sample_approx(const PYParams& params, const BaseMeasure& base,
                                   RngStream& rng) {
  params.validate();
  if (params.is_dirichlet()) return sample_dirichlet_exact(params, base, rng);
  const double t = sample_tilted_stable(params.stable(), rng);
  return sample_approx_given(params, t, base, rng);
}

double diversity_scale(double alpha, double epsilon, std::uint64_t tau) {
  return std::pow(epsilon / alpha, alpha) *
         std::pow(static_cast<double>(tau - 1), 1.0 - alpha);
}

std::uint64_t ClusterSummary::n() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

void ClusterSummary::validate(double alpha) const {
  if (values.size() != counts.size()) {
    throw ParameterError("cluster values and counts differ in length");
  }
  for (std::uint64_t c : counts) {
    if (!(static_cast<double>(c) > alpha)) {
      std::ostringstream msg;
      msg << "cluster count " << c << " must exceed alpha = " << alpha;
      throw ParameterError(msg.str());
    }
  }
}

double PosteriorRealization::total_mass() const {
  return compensated_sum(fixed_weights, inner_mass * inner.total_mass());
}

EpsilonPYRealization PosteriorRealization::flatten() const {
  EpsilonPYRealization out;
  out.exact = inner.exact;
  out.weights = fixed_weights;
  out.atoms = fixed_atoms;
  out.weights.reserve(fixed_weights.size() + inner.tau());
  out.atoms.reserve(fixed_atoms.size() + inner.tau());
  for (std::size_t i = 0; i < inner.tau(); ++i) {
    out.weights.push_back(inner_mass * inner.weights[i]);
    out.atoms.push_back(inner.atoms[i]);
  }
  out.remainder = inner_mass * inner.remainder;
  out.extra_atom = inner.extra_atom;
  return out;
}

PosteriorRealization posterior_sample(const PYParams& params, const ClusterSummary& clusters,
                                      const BaseMeasure& base, RngStream& rng,
                                      SamplerKind kind) {
  params.validate();
  clusters.validate(params.alpha);
  const std::size_t k = clusters.k();
  const double k_real = static_cast<double>(k);

  PosteriorRealization out;
  out.fixed_atoms = clusters.values;
  out.fixed_weights.resize(k);
  if (k > 0) {
    // Dirichlet vector via normalized gammas, in log space.
    std::vector<double> logs(k + 1);
    for (std::size_t j = 0; j < k; ++j) {
      logs[j] = log_gamma_variate(static_cast<double>(clusters.counts[j]) - params.alpha, rng);
    }
    logs[k] = log_gamma_variate(params.theta + params.alpha * k_real, rng);
    const double top = *std::max_element(logs.begin(), logs.end());
    double total = 0.0;
    for (double l : logs) total += std::exp(l - top);
    const double log_total = top + std::log(total);
    for (std::size_t j = 0; j < k; ++j) out.fixed_weights[j] = std::exp(logs[j] - log_total);
    out.inner_mass = std::exp(logs[k] - log_total);
  }

  const PYParams inner{params.alpha, params.theta + params.alpha * k_real, params.epsilon};
  out.inner = kind == SamplerKind::Exact ? sample_exact(inner, base, rng)
                                         : sample_approx(inner, base, rng);
  return out;
}

}  // namespace epspy
