#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "test_support.hpp"
#include "epspy/errors.hpp"
#include "epspy/stats.hpp"
#include "epspy/tilted_stable.hpp"

using namespace epspy;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> tilted(const StableParams& p, std::size_t n, std::uint64_t seed) {
  const ZolotarevEnvelope env(p);
  RngStream rng(seed);
  std::vector<double> out(n);
  for (auto& t : out) t = sample_tilted_stable(env, rng);
  return out;
}

double mean_of(const std::vector<double>& xs, auto&& f, double* se) {
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back(f(x));
  const EmpiricalDistribution d(ys);
  *se = d.standard_error();
  return d.mean();
}

// Midpoint rule for the smooth (b >= 0) Zolotarev densities.
double integrate_b_power(double alpha, double b, int n) {
  double sum = 0.0;
  const double h = kPi / n;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * h;  // midpoint rule
    sum += std::exp(b * zolotarev_log_b(x, alpha)) * h;
  }
  return sum;
}

}  // namespace

TEST_CASE("Zolotarev A and B closed-form values") {
  CHECK(zolotarev_a(kPi / 2, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(zolotarev_a(0.0, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(zolotarev_a(1e-12, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(zolotarev_a(kPi - 1e-8, 0.5) > 1e6);
  CHECK(zolotarev_b(0.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(zolotarev_b(kPi / 2, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // the small-x limit joins the direct formula continuously
  for (double alpha : {0.1, 0.5, 0.9}) {
    CHECK(zolotarev_b(1e-9, alpha) == doctest::Approx(zolotarev_b(0.0, alpha)).epsilon(1e-9));
  }
}

TEST_CASE("Zolotarev function domain errors") {
  CHECK_THROWS_AS(zolotarev_a(kPi, 0.5), DomainError);
  CHECK_THROWS_AS(zolotarev_b(4.0, 0.5), DomainError);
  CHECK_THROWS_AS(zolotarev_b(-0.1, 0.5), DomainError);
  CHECK_THROWS_AS(zolotarev_b(1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(zolotarev_b(1.0, 0.0), ParameterError);
}

TEST_CASE("B is decreasing and bounded by B(0)") {
  for (double alpha : {0.05, 0.25, 0.5, 0.75, 0.95}) {
    double prev = zolotarev_b(0.0, alpha);
    const double b0 = prev;
    for (int i = 1; i < 1000; ++i) {
      const double x = kPi * i / 1000.0;
      const double b = zolotarev_b(x, alpha);
      REQUIRE(b <= b0 * (1.0 + 1e-12));
      REQUIRE(b <= prev * (1.0 + 1e-12));
      prev = b;
    }
  }
}

TEST_CASE("Gaussian envelope dominates the Zolotarev density") {
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (double theta : {0.1, 1.0, 10.0, 50.0}) {
      const ZolotarevEnvelope env({alpha, theta});
      const double b = env.b();
      const double s2 = env.sigma() * env.sigma();
      CHECK(s2 == doctest::Approx(1.0 / (b * alpha * (1.0 - alpha))));
      for (int i = 0; i < 1000; ++i) {
        const double x = kPi * i / 1000.0;
        const double lhs = b * zolotarev_log_b(x, alpha);
        const double rhs = b * env.log_b0() - x * x / (2.0 * s2);
        REQUIRE(lhs <= rhs + 1e-12);
      }
    }
  }
}

TEST_CASE("envelope picks its proposal from sigma") {
  CHECK(ZolotarevEnvelope({0.5, 0.0}).proposal() == ZolotarevEnvelope::Proposal::Uniform);
  CHECK(ZolotarevEnvelope({0.5, 0.01}).proposal() == ZolotarevEnvelope::Proposal::Uniform);
  CHECK(ZolotarevEnvelope({0.5, 10.0}).proposal() == ZolotarevEnvelope::Proposal::HalfNormal);
  CHECK(ZolotarevEnvelope({0.5, -0.2}).proposal() == ZolotarevEnvelope::Proposal::Reflected);
  CHECK(std::isinf(ZolotarevEnvelope({0.5, 0.0}).sigma()));
  CHECK(std::isfinite(ZolotarevEnvelope({0.5, 2.0}).sigma()));
  CHECK(ZolotarevEnvelope({0.5, 1.0}).b0() == doctest::Approx(2.0));
  CHECK_THROWS_AS((ZolotarevEnvelope({0.5, -0.5})), ParameterError);
  CHECK_THROWS_AS((ZolotarevEnvelope({1.0, 1.0})), ParameterError);
}

TEST_CASE("reflected bound dominates (pi - x) / B(x)") {
  for (double alpha : {0.1, 0.5, 0.9}) {
    const ZolotarevEnvelope env({alpha, -0.5 * alpha});
    for (int i = 0; i < 100'000; ++i) {
      const double x = kPi * i / 100'000.0;
      REQUIRE(std::log(kPi - x) - zolotarev_log_b(x, alpha) <= env.log_reflected_bound());
    }
  }
}

TEST_CASE("Zolotarev normalizer matches numerical integration") {
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (double theta : {0.0, 1.0, 10.0}) {
      const ZolotarevEnvelope env({alpha, theta});
      const double integral = integrate_b_power(alpha, env.b(), 200'000);
      CHECK(std::exp(env.log_normalizer()) * integral == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("b = 0 gives an exactly uniform Zolotarev variate") {
  RngStream rng(5);
  std::vector<double> xs(10'000);
  for (auto& x : xs) x = sample_zolotarev(StableParams{0.5, 0.0}, rng).x;
  const EmpiricalDistribution d(xs);
  CHECK(ks_one_sample(d, [](double x) { return std::clamp(x / kPi, 0.0, 1.0); }) <
        ks_critical_one_sample(d.size(), kKsLevel));
}

TEST_CASE("Zolotarev draws follow C B(x)^b for every proposal branch") {
  // Compare with the CDF from midpoint integration of C B(x)^b.
  struct Case {
    double alpha, theta;
  };
  for (Case c : {Case{0.5, 0.02}, Case{0.5, 1.0}, Case{0.25, 10.0}, Case{0.75, -0.5},
                 Case{0.5, -0.25}}) {
    CAPTURE(c.alpha);
    CAPTURE(c.theta);
    const ZolotarevEnvelope env({c.alpha, c.theta});
    RngStream rng(11);
    std::vector<double> xs(10'000);
    for (auto& x : xs) {
      const ZolotarevDraw z = sample_zolotarev(env, rng);
      REQUIRE(z.x >= 0.0);
      REQUIRE(z.x < kPi);
      REQUIRE(z.log_w <= env.log_b0() + 1e-12);
      x = z.x;
    }
    // Tail mass on [x, pi) integrated in v = ((pi - x)/pi)^k with k = 1 + min(b, 0),
    // where the integrand B(x)^b (pi - x)^(1-k) is bounded.
    const double b = env.b();
    const double k = 1.0 + std::min(b, 0.0);
    const int grid = 20'000;
    std::vector<double> tail(grid + 1, 0.0);
    for (int j = 0; j < grid; ++j) {
      const double v = (j + 0.5) / grid;
      // (pi - x) / B(x) is flat near pi, so a tiny gap can be evaluated at 1e-9
      const double y = std::max(kPi * std::pow(v, 1.0 / k), 1e-9);
      tail[j + 1] = tail[j] + std::exp(b * zolotarev_log_b(kPi - y, c.alpha) + (1.0 - k) * std::log(y));
    }
    const double total = tail.back();
    auto cdf_fn = [&](double x) {
      if (x <= 0.0) return 0.0;
      if (x >= kPi) return 1.0;
      const double pos = std::pow((kPi - x) / kPi, k) * grid;
      const int j = std::min(static_cast<int>(pos), grid - 1);
      return 1.0 - (tail[j] + (pos - j) * (tail[j + 1] - tail[j])) / total;
    };
    const EmpiricalDistribution d(xs);
    CHECK(ks_one_sample(d, cdf_fn) < ks_critical_one_sample(d.size(), kKsLevel));
  }
}

TEST_CASE("Zolotarev density vanishes near pi for b > 0") {
  RngStream rng(6);
  const ZolotarevEnvelope env({0.5, 1.0});
  int near_pi = 0;
  for (int i = 0; i < 100'000; ++i) {
    if (sample_zolotarev(env, rng).x > kPi - 0.05) ++near_pi;
  }
  // density C B(x)^2 ~ C (pi - x)^2 there: expected mass below 1e-4
  CHECK(near_pi < 10);
}

TEST_CASE("moment formula special values") {
  CHECK(tilted_stable_moment({0.5, 0.0}, 0.0) == doctest::Approx(1.0));
  CHECK(tilted_stable_moment({0.3, 2.0}, 0.0) == doctest::Approx(1.0));
  CHECK(tilted_stable_moment({0.5, 0.0}, -0.5) == doctest::Approx(2.0 / std::sqrt(kPi)));
  CHECK(tilted_stable_moment({0.5, 1.0}, -0.5) ==
        doctest::Approx(3.0 / std::tgamma(2.5)).epsilon(1e-12));
  CHECK(tilted_stable_moment({0.5, 1.0}, -0.5) == doctest::Approx(2.2567583).epsilon(1e-7));
  CHECK(tilted_stable_moment({0.5, 10.0}, -0.5) == doctest::Approx(6.4040752).epsilon(1e-7));
  CHECK_THROWS_AS((tilted_stable_moment({0.5, 0.0}, 0.5)), DomainError);
  CHECK_THROWS_AS((tilted_stable_moment({0.5, 1.0}, 1.6)), DomainError);
  CHECK_NOTHROW((tilted_stable_moment({0.5, 1.0}, 1.4)));
}

TEST_CASE("tilted stable sample moments match the closed form") {
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (double theta : {0.0, 1.0, 10.0}) {
      const auto ts = tilted({alpha, theta}, 10'000, 100 + static_cast<std::uint64_t>(theta));
      for (double r : {-alpha, -alpha / 2}) {
        CAPTURE(alpha);
        CAPTURE(theta);
        CAPTURE(r);
        double se = 0.0;
        const double m = mean_of(ts, [r](double t) { return std::pow(t, r); }, &se);
        CHECK(std::abs(m - tilted_stable_moment({alpha, theta}, r)) < 3.0 * se);
      }
    }
  }
}

TEST_CASE("negative tilting parameters are sampled correctly") {
  // b = -0.9 puts a few percent of the Zolotarev mass within one ulp of pi
  for (double alpha : {0.3, 0.7}) {
    for (double theta : {-0.5 * alpha, -0.9 * alpha}) {
      const auto ts = tilted({alpha, theta}, 10'000, 77);
      double se = 0.0;
      const double r = -alpha;
      const double m = mean_of(ts, [r](double t) { return std::pow(t, r); }, &se);
      CHECK(std::abs(m - tilted_stable_moment({alpha, theta}, r)) < 3.0 * se);
    }
  }
}

TEST_CASE("Laplace transform of the untilted stable law") {
  for (double alpha : {0.25, 0.5, 0.75}) {
    const auto ts = tilted({alpha, 0.0}, 10'000, 200);
    for (double s : {0.5, 1.0, 2.0}) {
      double se = 0.0;
      const double m = mean_of(ts, [s](double t) { return std::exp(-s * t); }, &se);
      CHECK(std::abs(m - std::exp(-std::pow(s, alpha))) < 3.0 * se);
    }
  }
}

TEST_CASE("tilting decreases T stochastically") {
  const double alpha = 0.5;
  // E(T) is infinite at theta = 0; compare means of T^(alpha/2), finite for all theta.
  double prev = std::numeric_limits<double>::infinity();
  double prev_se = 0.0;
  for (double theta : {0.0, 1.0, 10.0}) {
    const auto ts = tilted({alpha, theta}, 10'000, 300);
    double se = 0.0;
    const double m = mean_of(ts, [](double t) { return std::pow(t, 0.25); }, &se);
    CHECK(m < prev + 3.0 * std::hypot(se, prev_se));
    prev = m;
    prev_se = se;
  }
  // and the sample means of T themselves, for theta where E(T) < infinity
  double se1 = 0.0;
  double se2 = 0.0;
  const double m1 = mean_of(tilted({alpha, 1.0}, 10'000, 301), [](double t) { return t; }, &se1);
  const double m2 = mean_of(tilted({alpha, 10.0}, 10'000, 302), [](double t) { return t; }, &se2);
  CHECK(m2 < m1);
}

TEST_CASE("sampler rejects invalid parameters") {
  RngStream rng(1);
  CHECK_THROWS_AS((sample_tilted_stable(StableParams{0.5, -0.6}, rng)), ParameterError);
  CHECK_THROWS_AS((sample_tilted_stable(StableParams{0.0, 1.0}, rng)), ParameterError);
  CHECK_THROWS_AS((sample_zolotarev(StableParams{1.2, 1.0}, rng)), ParameterError);
}
