#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "vanet/theory.hpp"

#include "oracles.hpp"

using namespace vanet::theory;

TEST_CASE("exponential pdf values") {
  CHECK(exponential_pdf(2.0, 2) == doctest::Approx(0.5));
  CHECK(exponential_pdf(2.0, 1) == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(exponential_pdf(0.5, 1), std::domain_error);
  CHECK_THROWS_AS(exponential_pdf(1.0, 0), std::domain_error);
}

TEST_CASE("power-law pdf values") {
  CHECK(powerlaw_pdf(2.0, 2) == doctest::Approx(1.0));
  for (int m : {1, 2, 5}) {
    CHECK(powerlaw_pdf(2.0 * m, m) == doctest::Approx(1.0 / (4.0 * m)));
  }
  CHECK_THROWS_AS(powerlaw_pdf(1.9, 2), std::domain_error);
}

TEST_CASE("tunable constants at m=2, p=0.5") {
  const TheoryCurve c = tunable_params(2, 0.5);
  CHECK(c.gamma == 5.0);  // (3 - 0.5) / (1 - 0.5), exact in doubles
  CHECK(c.A == doctest::Approx(6.0));
  CHECK(c.B == doctest::Approx(4.0));
  CHECK(c.a == doctest::Approx(4.0));
  CHECK(c.beta == doctest::Approx(0.25));
  CHECK(c.C == doctest::Approx(5184.0));  // 4 * 6^4
}

TEST_CASE("tunable exponent formula and monotonicity") {
  CHECK(tunable_params(1, 1.0 / 3.0).gamma == doctest::Approx(4.0));
  double prev = tunable_params(2, 0.01).gamma;
  CHECK(prev > 3.0);
  for (int i = 2; i <= 99; ++i) {
    const double p = i / 100.0;
    const double g = tunable_params(2, p).gamma;
    CHECK(g > prev);
    prev = g;
  }
  CHECK_THROWS_AS(tunable_params(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(tunable_params(2, 1.0), std::domain_error);
}

TEST_CASE("tunable pdf approaches the power law as p -> 0") {
  const int m = 2;
  for (double k = m; k <= 100.0 * m; k += 3.7) {
    const double tun = tunable_pdf(k, m, 1e-4);
    const double pl = powerlaw_pdf(k, m);
    CHECK(tun == doctest::Approx(pl).epsilon(0.001));
  }
}

TEST_CASE("pdfs integrate to one over [m, inf)") {
  for (int m : {1, 2, 3}) {
    const double exp_total = oracle::integrate_to_infinity(
        [m](double k) { return exponential_pdf(k, m); }, m);
    CHECK(exp_total == doctest::Approx(1.0).epsilon(1e-6));

    const double pl_total = oracle::integrate_to_infinity(
        [m](double k) { return powerlaw_pdf(k, m); }, m);
    CHECK(pl_total == doctest::Approx(1.0).epsilon(1e-6));

    for (double p : {0.1, 0.5, 0.9}) {
      const double tun_total = oracle::integrate_to_infinity(
          [m, p](double k) { return tunable_pdf(k, m, p); }, m);
      CHECK(tun_total == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("pdfs are strictly decreasing on their domain") {
  for (int m : {1, 3}) {
    double prev_e = exponential_pdf(m, m);
    double prev_p = powerlaw_pdf(m, m);
    double prev_t = tunable_pdf(m, m, 0.4);
    for (double k = m + 0.5; k < 40.0 * m; k += 0.5) {
      CHECK(exponential_pdf(k, m) < prev_e);
      CHECK(powerlaw_pdf(k, m) < prev_p);
      CHECK(tunable_pdf(k, m, 0.4) < prev_t);
      prev_e = exponential_pdf(k, m);
      prev_p = powerlaw_pdf(k, m);
      prev_t = tunable_pdf(k, m, 0.4);
    }
  }
}

TEST_CASE("trajectories satisfy the initial condition k(t_i) = m") {
  for (int m : {1, 2, 4}) {
    for (double t_i : {1.0, 5.0, 42.0}) {
      CHECK(degree_trajectory(t_i, t_i, m, 1.0, 5) == doctest::Approx(m));
      CHECK(degree_trajectory(t_i, t_i, m, 0.0, 5) == doctest::Approx(m));
      CHECK(degree_trajectory(t_i, t_i, m, 0.37, 5) == doctest::Approx(m));
    }
  }
}

TEST_CASE("square-root growth at p=0") {
  for (int m : {1, 2, 3}) {
    CHECK(degree_trajectory(8.0, 2.0, m, 0.0, 5) == doctest::Approx(2.0 * m));
    CHECK(degree_trajectory(100.0, 1.0, m, 0.0, 5) == doctest::Approx(10.0 * m));
  }
}

TEST_CASE("trajectory domain errors") {
  CHECK_THROWS_AS(degree_trajectory(5.0, 0.0, 2, 0.5, 5), std::domain_error);
  CHECK_THROWS_AS(degree_trajectory(5.0, 6.0, 2, 0.5, 5), std::domain_error);
  CHECK_THROWS_AS(degree_trajectory(5.0, 1.0, 2, 1.5, 5), std::domain_error);
}

TEST_CASE("hybrid trajectory approaches both boundary regimes") {
  const int m = 2;
  // Near p=0 the hybrid form tracks the square-root law within 0.5%.
  for (double ratio = 1.0; ratio <= 100.0; ratio *= 1.31) {
    const double hybrid = degree_trajectory(ratio, 1.0, m, 1e-3, 0);
    const double pure = degree_trajectory(ratio, 1.0, m, 0.0, 0);
    CHECK(std::abs(hybrid - pure) / pure < 0.005);
  }
  // Near p=1 it tracks the logarithmic law (negligible m0) within 1%.
  for (double ratio = 1.0; ratio <= 100.0; ratio *= 1.31) {
    const double hybrid = degree_trajectory(ratio, 1.0, m, 0.999, 0);
    const double pure = degree_trajectory(ratio, 1.0, m, 1.0, 0);
    CHECK(std::abs(hybrid - pure) / pure < 0.01);
  }
}

TEST_CASE("trajectories are monotone in t and t_i") {
  for (double p : {0.0, 0.3, 1.0}) {
    double prev = degree_trajectory(10.0, 10.0, 2, p, 5);
    for (double t = 11.0; t < 200.0; t *= 1.4) {
      const double k = degree_trajectory(t, 10.0, 2, p, 5);
      CHECK(k >= prev);
      prev = k;
    }
    prev = degree_trajectory(200.0, 1.0, 2, p, 5);
    for (double t_i = 2.0; t_i <= 200.0; t_i *= 1.7) {
      const double k = degree_trajectory(200.0, t_i, 2, p, 5);
      CHECK(k <= prev);
      prev = k;
    }
  }
}
