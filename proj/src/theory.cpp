#include "vanet/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace vanet::theory {

namespace {

void check_m(int m, const char* op) {
  if (m < 1) throw std::domain_error(std::string(op) + ": m must be a positive integer");
}

void check_k(double k, int m, const char* op) {
  if (!(k >= static_cast<double>(m))) {
    throw std::domain_error(std::string(op) + ": pdf domain is k >= m");
  }
}

}  // namespace

TheoryCurve tunable_params(int m, double p) {
  check_m(m, "tunable_params");
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("tunable_params: p must lie strictly inside (0, 1)");
  }
  TheoryCurve c;
  c.regime = Regime::Tunable;
  c.m = m;
  c.p = p;
  c.beta = (1.0 - p) / 2.0;
  c.A = m * (1.0 + p) / (1.0 - p);
  c.B = 2.0 * m * p / (1.0 - p);
  c.a = c.B;
  c.gamma = (3.0 - p) / (1.0 - p);
  c.C = (2.0 / (1.0 - p)) * std::pow(c.A, 2.0 / (1.0 - p));
  return c;
}

double exponential_pdf(double k, int m) {
  check_m(m, "exponential_pdf");
  check_k(k, m, "exponential_pdf");
  const double md = static_cast<double>(m);
  return std::exp(1.0 - k / md) / md;
}

double powerlaw_pdf(double k, int m) {
  check_m(m, "powerlaw_pdf");
  check_k(k, m, "powerlaw_pdf");
  const double md = static_cast<double>(m);
  return 2.0 * md * md / (k * k * k);
}

double tunable_pdf(double k, int m, double p) {
  const TheoryCurve c = tunable_params(m, p);
  check_k(k, m, "tunable_pdf");
  return c.C * std::pow(k + c.a, -c.gamma);
}

double degree_trajectory(double t, double t_i, int m, double p, int m0) {
  check_m(m, "degree_trajectory");
  if (!(t_i > 0.0) || t_i > t) {
    throw std::domain_error("degree_trajectory: require 0 < t_i <= t");
  }
  if (p < 0.0 || p > 1.0) {
    throw std::domain_error("degree_trajectory: p must lie in [0, 1]");
  }
  if (m0 < 0) {
    throw std::domain_error("degree_trajectory: m0 must be non-negative");
  }
  const double md = static_cast<double>(m);
  if (p == 1.0) {
    return md * (std::log((m0 + t) / (m0 + t_i)) + 1.0);
  }
  if (p == 0.0) {
    return md * std::sqrt(t / t_i);
  }
  const TheoryCurve c = tunable_params(m, p);
  return c.A * std::pow(t / t_i, c.beta) - c.B;
}

}  // namespace vanet::theory
