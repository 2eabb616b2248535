#include "pcband/special.hpp"

#include <cmath>

namespace pcband {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955125739;
constexpr double kSqrtPi = 1.7724538509055160273;

bool is_half_step(double s) {
  return std::abs(2.0 * s - std::round(2.0 * s)) < 1e-12;
}

// Gamma(s) for (half-)integer s, s not a non-positive integer.
double gamma_at(double s) {
  if (s > 0.0) return std::tgamma(s);
  // Recur up to a positive argument.
  double prod = 1.0;
  double t = s;
  while (t < 0.5) {
    prod *= t;
    t += 1.0;
  }
  return std::tgamma(t) / prod;
}

// Small-z series, valid for non-integer s < 0:
// Gamma(s, z) = Gamma(s) - z^s * sum_j (-z)^j / (j! (s + j)).
double upper_gamma_series(double s, double z) {
  double sum = 0.0;
  double term = 1.0;  // (-z)^j / j!
  for (int j = 0; j < 200; ++j) {
    const double add = term / (s + j);
    sum += add;
    term *= -z / (j + 1);
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1.0)) break;
  }
  return gamma_at(s) - std::pow(z, s) * sum;
}

}  // namespace

double expint_e1(double w) {
  return -std::expint(-w);
}

double upper_gamma(double s, double z) {
  if (!(z > 0.0)) throw std::domain_error("upper_gamma requires z > 0");
  if (!is_half_step(s)) throw std::domain_error("upper_gamma: s must be a multiple of 1/2");

  const bool integer_s = std::abs(s - std::round(s)) < 1e-12;
  if (s > 0.0) {
    double g, t;
    if (integer_s) {
      g = std::exp(-z);  // Gamma(1, z)
      t = 1.0;
    } else {
      g = kSqrtPi * std::erfc(std::sqrt(z));  // Gamma(1/2, z)
      t = 0.5;
    }
    while (t < s - 0.25) {
      g = t * g + std::pow(z, t) * std::exp(-z);
      t += 1.0;
    }
    return g;
  }
  if (integer_s && std::abs(s) < 1e-12) return expint_e1(z);

  if (!integer_s && z < 1.0) return upper_gamma_series(s, z);

  // Downward recurrence Gamma(s, z) = (Gamma(s+1, z) - z^s e^{-z}) / s.
  double g, t;
  if (integer_s) {
    g = expint_e1(z);
    t = 0.0;
  } else {
    g = kSqrtPi * std::erfc(std::sqrt(z));
    t = 0.5;
  }
  while (t > s + 0.25) {
    t -= 1.0;
    g = (g - std::pow(z, t) * std::exp(-z)) / t;
  }
  return g;
}

double ewald_radial_integral(double q, double c, double eta) {
  if (c < 1e-300) {
    if (q <= -1.0 + 1e-12)
      throw SingularityError("ewald_radial_integral diverges at r = 0 for q <= -1");
    return std::pow(eta, q + 1.0) / (q + 1.0);
  }
  const double z = c / eta;
  if (z > 700.0) return 0.0;  // below double underflow once exp(-z) factors in
  return std::pow(c, q + 1.0) * upper_gamma(-q - 1.0, z);
}

double erf_over_z(double z) {
  if (std::abs(z) < 1e-6) {
    const double z2 = z * z;
    return kTwoOverSqrtPi * (1.0 - z2 / 3.0 + z2 * z2 / 10.0);
  }
  return std::erf(z) / z;
}

double erf_w(double z) {
  if (std::abs(z) < 0.7) {
    const double z2 = z * z;
    double sum = 0.0;
    double fact = 1.0;  // m!
    double zp = 1.0;    // z^{2(m-1)}
    double sign = 1.0;
    for (int m = 1; m <= 30; ++m) {
      fact *= m;
      const double term = sign * (2.0 * m) / (fact * (2.0 * m + 1.0)) * zp;
      sum += term;
      if (std::abs(term) < 1e-18) break;
      zp *= z2;
      sign = -sign;
    }
    return kTwoOverSqrtPi * sum;
  }
  return (std::erf(z) - kTwoOverSqrtPi * z * std::exp(-z * z)) / (z * z * z);
}

double erf_w_prime_over_z(double z) {
  if (std::abs(z) < 0.7) {
    // W'(z)/z = (2/sqrt(pi)) sum_{m>=2} (-1)^{m+1} 2m(2m-2)/(m!(2m+1)) z^{2m-4}
    const double z2 = z * z;
    double sum = 0.0;
    double fact = 2.0;  // m!
    double zp = 1.0;    // z^{2m-4}
    double sign = -1.0;
    for (int m = 2; m <= 30; ++m) {
      const double term = sign * (2.0 * m) * (2.0 * m - 2.0) / (fact * (2.0 * m + 1.0)) * zp;
      sum += term;
      if (std::abs(term) < 1e-18) break;
      zp *= z2;
      fact *= (m + 1);
      sign = -sign;
    }
    return kTwoOverSqrtPi * sum;
  }
  return erf_w_prime(z) / z;
}

double erf_w_prime(double z) {
  if (std::abs(z) < 0.7) return z * erf_w_prime_over_z(z);
  const double w = erf_w(z);
  return 2.0 * kTwoOverSqrtPi * std::exp(-z * z) / z - 3.0 * w / z;
}

double one_minus_exp_over(double w) {
  if (w == 0.0) return 1.0;
  return -std::expm1(-w) / w;
}

double one_minus_exp_over_prime(double w) {
  if (std::abs(w) < 0.1) {
    double sum = 0.0;
    double fact = 2.0;  // m!
    double wp = 1.0;    // w^{m-2}
    double sign = 1.0;
    for (int m = 2; m <= 25; ++m) {
      const double term = sign * (1.0 - m) / fact * wp;
      sum += term;
      if (std::abs(term) < 1e-18) break;
      wp *= w;
      fact *= (m + 1);
      sign = -sign;
    }
    return sum;
  }
  return (std::exp(-w) * (1.0 + w) - 1.0) / (w * w);
}

double e1_plus_log(double w) {
  if (w < 1.0) {
    double sum = 0.0;
    double term = 1.0;  // w^j / j!
    for (int j = 1; j <= 40; ++j) {
      term *= w / j;
      const double add = (j % 2 == 1 ? 1.0 : -1.0) * term / j;
      sum += add;
      if (std::abs(add) < 1e-18) break;
    }
    return sum;
  }
  return expint_e1(w) + std::log(w) + kEulerGamma;
}

}  // namespace pcband
