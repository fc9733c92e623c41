#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "epspy/errors.hpp"
#include "epspy/functionals.hpp"
#include "epspy/stats.hpp"

using namespace epspy;

namespace {

constexpr double kPi = std::numbers::pi;

EpsilonPYRealization toy() {
  EpsilonPYRealization r;
  r.weights = {0.5, 0.3, 0.15};
  r.atoms = {0.6, 0.2, 0.9};
  r.remainder = 0.05;
  r.extra_atom = 0.4;
  return r;
}

// Integral of g(w) * F(1/3) density over [0, w1] by the midpoint rule in
// u with w = sin^2 u.
double third_midpoint(double theta, double w1, auto&& g, int n = 200'000) {
  const double u1 = std::asin(std::sqrt(w1));
  const double h = u1 / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) * h;
    const double w = std::sin(u) * std::sin(u);
    const double jac = 2.0 * std::sin(u) * std::cos(u);
    sum += g(w) * ref_F_third_density(theta, w) * jac * h;
  }
  return sum;
}

}  // namespace

TEST_CASE("realization CDF on a hand-built example") {
  const auto r = toy();
  CHECK(cdf_eval(r, -1.0) == 0.0);
  CHECK(cdf_eval(r, 0.1) == 0.0);
  CHECK(cdf_eval(r, 0.2) == doctest::Approx(0.3));
  CHECK(cdf_eval(r, 0.4) == doctest::Approx(0.35));
  CHECK(cdf_eval(r, 0.6) == doctest::Approx(0.85));
  CHECK(cdf_eval(r, 0.95) == doctest::Approx(1.0));
  CHECK(cdf_eval(r, 2.0) <= 1.0);
  CHECK(mean_functional(r) == doctest::Approx(0.5 * 0.6 + 0.3 * 0.2 + 0.15 * 0.9 + 0.05 * 0.4));
}

TEST_CASE("cached CDF agrees with the linear scan and is monotone") {
  RngStream rng(1);
  const auto base = BaseMeasure::uniform01();
  for (int rep = 0; rep < 50; ++rep) {
    const auto r = sample_exact({0.5, 1.0, 0.01}, base, rng);
    const RealizationCdf cdf(r);
    double prev = 0.0;
    for (int i = -5; i <= 105; ++i) {
      const double x = i / 100.0;
      const double v = cdf(x);
      REQUIRE(v == doctest::Approx(cdf_eval(r, x)).epsilon(1e-12));
      REQUIRE(v >= prev - 1e-15);
      REQUIRE(v <= 1.0);
      prev = v;
    }
    for (double a : r.atoms) REQUIRE(cdf(a) == doctest::Approx(cdf_eval(r, a)).epsilon(1e-12));
  }
}

TEST_CASE("equal atoms give that atom as the mean") {
  EpsilonPYRealization r;
  r.weights = {0.7, 0.25};
  r.atoms = {0.3, 0.3};
  r.remainder = 0.05;
  r.extra_atom = 0.3;
  CHECK(mean_functional(r) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("dropping the remainder moves F by less than epsilon") {
  RngStream rng(2);
  const auto base = BaseMeasure::uniform01();
  for (int rep = 0; rep < 200; ++rep) {
    const PYParams p{0.5, 1.0, 0.05};
    auto r = sample_exact(p, base, rng);
    for (double x : {0.1, 1.0 / 3.0, 0.5, 0.9}) {
      double partial = 0.0;
      for (std::size_t i = 0; i < r.tau(); ++i) {
        if (r.atoms[i] <= x) partial += r.weights[i];
      }
      REQUIRE(std::abs(cdf_eval(r, x) - partial) < p.epsilon);
    }
  }
}

TEST_CASE("F(1/3) density closed-form value") {
  CHECK(ref_F_third_density(0.0, 0.5) == doctest::Approx(1.6 / kPi).epsilon(1e-14));
  CHECK(ref_F_third_density(0.0, 0.5) == doctest::Approx(0.50930).epsilon(1e-5));
  CHECK_THROWS_AS(ref_F_third_density(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(ref_F_third_density(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(ref_F_third_density(-0.5, 0.5), ParameterError);
  CHECK_THROWS_AS(ref_F_third(-1.0), ParameterError);
  CHECK_THROWS_AS(ref_F_half(-0.5), ParameterError);
}

TEST_CASE("F(1/3) law is normalized with mean 1/3") {
  for (double theta : {0.0, 1.0, 10.0}) {
    CAPTURE(theta);
    CHECK(std::abs(ref_F_third_cdf(theta, 1.0) - 1.0) < 1e-8);
    CHECK(ref_F_third_cdf(theta, 0.0) == 0.0);
    const double mass = third_midpoint(theta, 1.0, [](double) { return 1.0; });
    CHECK(std::abs(mass - 1.0) < 1e-8);
    const double mean = third_midpoint(theta, 1.0, [](double w) { return w; });
    CHECK(std::abs(mean - 1.0 / 3.0) < 1e-8);
    CHECK(std::abs(ref_F_third(theta).mean() - 1.0 / 3.0) < 1e-8);
  }
}

TEST_CASE("F(1/3) CDF matches an independent quadrature") {
  for (double theta : {0.0, 1.0, 10.0}) {
    const ReferenceLaw law = ref_F_third(theta);
    for (double w : {0.01, 0.1, 0.25, 1.0 / 3.0, 0.6, 0.99}) {
      CAPTURE(theta);
      CAPTURE(w);
      const double oracle = third_midpoint(theta, w, [](double) { return 1.0; });
      CHECK(std::abs(law.cdf(w) - oracle) < 1e-9);
      CHECK(std::abs(law.cdf(law.quantile(oracle)) - oracle) < 1e-9);
    }
    CHECK(law.cdf(-0.5) == 0.0);
    CHECK(law.cdf(1.5) == 1.0);
  }
}

TEST_CASE("F(1/2) law is Beta(theta + 1/2, theta + 1/2)") {
  const ReferenceLaw uniform = ref_F_half(0.5);
  for (double w : {0.1, 0.3, 0.77}) CHECK(uniform.cdf(w) == doctest::Approx(w).epsilon(1e-13));
  const ReferenceLaw arcsine = ref_F_half(0.0);
  for (double w : {0.05, 0.3, 0.5, 0.9}) {
    CHECK(arcsine.cdf(w) == doctest::Approx(2.0 / kPi * std::asin(std::sqrt(w))).epsilon(1e-13));
    CHECK(arcsine.density(w) ==
          doctest::Approx(1.0 / (kPi * std::sqrt(w * (1.0 - w)))).epsilon(1e-13));
  }
  CHECK(ref_F_half(10.0).quantile(0.5) == doctest::Approx(0.5));
  CHECK(ref_F_half(10.0).mean() == 0.5);
  CHECK_THROWS_AS(static_cast<void>(ref_F_half(1.0).density(1.2)), DomainError);
}

TEST_CASE("reference mean functional has the exact variance") {
  const auto base = BaseMeasure::uniform01();
  for (double alpha : {0.0, 0.5}) {
    for (double theta : {1.0, 10.0}) {
      CAPTURE(alpha);
      CAPTURE(theta);
      RngStream rng(3);
      std::vector<double> mu(10'000);
      for (auto& m : mu) m = reference_mean_functional(alpha, theta, 1e-2, base, 0.5, rng);
      const EmpiricalDistribution d(mu);
      CHECK(std::abs(d.mean() - 0.5) < 3.0 * d.standard_error());
      double m4 = 0.0;
      for (double x : mu) m4 += std::pow(x - d.mean(), 4);
      m4 /= static_cast<double>(mu.size());
      const double var = (1.0 - alpha) / (theta + 1.0) / 12.0;
      const double se_var = std::sqrt((m4 - d.variance() * d.variance()) / mu.size());
      CHECK(std::abs(d.variance() - var) < 3.0 * se_var);
    }
  }
}
