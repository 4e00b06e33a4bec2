#pragma once

namespace vanet::theory {

enum class Regime { Exponential, PowerLaw, Tunable };

// Closed-form constants of the degree pdf and trajectory for one (m, p)
// in the hybrid regime 0 < p < 1:
//
//   beta  = (1 - p) / 2            trajectory exponent
//   A     = m (1 + p) / (1 - p)    trajectory scale; also A = m + a
//   B     = 2 m p / (1 - p)        trajectory offset; a = B
//   gamma = (3 - p) / (1 - p)      pdf exponent, > 3 and increasing in p
//   C     = (2 / (1 - p)) A^(2/(1-p))   pdf normalization over [m, inf)
struct TheoryCurve {
  Regime regime;
  int m;
  double p;
  double beta;
  double A;
  double B;
  double C;
  double a;
  double gamma;
};

// Derived constants for the tunable regime. Throws std::domain_error for
// p outside (0, 1), where the constants diverge; the boundary regimes have
// their own closed forms below.
TheoryCurve tunable_params(int m, double p);

// Degree pdf under purely uniform attachment: (e/m) exp(-k/m), k >= m.
double exponential_pdf(double k, int m);

// Degree pdf under purely preferential attachment: 2 m^2 k^-3, k >= m.
double powerlaw_pdf(double k, int m);

// Degree pdf of the hybrid regime: C (k + a)^-gamma, k >= m, 0 < p < 1.
double tunable_pdf(double k, int m, double p);

// Mean-field degree at time t of a node that joined at time t_i with
// k(t_i) = m:
//   p = 1:      m (ln((m0 + t) / (m0 + t_i)) + 1)
//   p = 0:      m sqrt(t / t_i)
//   0 < p < 1:  A (t / t_i)^beta - B
double degree_trajectory(double t, double t_i, int m, double p, int m0);

}  // namespace vanet::theory
