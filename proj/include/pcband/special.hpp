#pragma once

#include "pcband/core.hpp"

namespace pcband {

// Upper incomplete gamma Gamma(s, z) for z > 0 and s an integer or half-integer
// multiple of 1/2 (s may be <= 0). Stable across the small-z / large-z regimes.
double upper_gamma(double s, double z);

// F_q(c, eta) = int_0^eta t^q exp(-c/t) dt  (c = r^2/4 >= 0).
// Equals c^{q+1} Gamma(-q-1, c/eta); for c == 0 requires q > -1.
double ewald_radial_integral(double q, double c, double eta);

// erf(z)/z, stable at z -> 0.
double erf_over_z(double z);

// W(z) = (erf(z) - (2/sqrt(pi)) z exp(-z^2)) / z^3, stable at z -> 0.
double erf_w(double z);
// W'(z).
double erf_w_prime(double z);
// W'(z)/z, stable at z -> 0.
double erf_w_prime_over_z(double z);

// (1 - exp(-w))/w, stable at w -> 0.
double one_minus_exp_over(double w);
// d/dw of the above.
double one_minus_exp_over_prime(double w);

// E1(w) + log(w) + gamma_euler (entire); series for small w.
double e1_plus_log(double w);

// Exponential integral E1(w), w > 0.
double expint_e1(double w);

inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace pcband
