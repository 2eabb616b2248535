#include "pcband/materials.hpp"

#include <cmath>

namespace pcband {

bool validate_convexity(const LameMaterial& mat, int d) {
  return mat.mu > 0.0 && d * mat.lambda + 2.0 * mat.mu > 0.0;
}

WaveVelocities wave_velocities(const LameMaterial& mat, int d) {
  if (d != 2 && d != 3) throw ValidationError("dimension must be 2 or 3");
  if (mat.rho <= 0.0) throw ValidationError("density must be positive");
  if (!validate_convexity(mat, d))
    throw ValidationError("material violates strong convexity (mu > 0, d*lambda + 2*mu > 0)");
  return {std::sqrt(mat.mu / mat.rho), std::sqrt((mat.lambda + 2.0 * mat.mu) / mat.rho)};
}

ContrastRegime make_contrast(double delta, double epsilon) {
  if (delta <= 0.0 || epsilon <= 0.0)
    throw ValidationError("contrast parameters must be positive");
  ContrastRegime c;
  c.delta = delta;
  c.epsilon = epsilon;
  c.tau = std::sqrt(delta / epsilon);
  c.tau_outside_order_one_band = (c.tau < 0.1 || c.tau > 10.0);
  return c;
}

ContrastRegime contrast_from_materials(const LameMaterial& background,
                                       const LameMaterial& inclusion,
                                       double rel_tol) {
  if (background.rho <= 0.0 || inclusion.rho <= 0.0)
    throw ValidationError("densities must be positive");
  if (background.mu <= 0.0 || inclusion.mu <= 0.0)
    throw ValidationError("shear moduli must be positive");
  const double inv_delta_mu = inclusion.mu / background.mu;
  const double inv_delta_lambda =
      background.lambda == 0.0 ? inv_delta_mu : inclusion.lambda / background.lambda;
  if (background.lambda == 0.0 && inclusion.lambda != 0.0)
    throw ValidationError("inclusion Lame pair is not proportional to the background pair");
  if (std::abs(inv_delta_lambda - inv_delta_mu) >
      rel_tol * std::max(std::abs(inv_delta_lambda), std::abs(inv_delta_mu)))
    throw ValidationError("inclusion Lame pair is not proportional to the background pair");
  const double delta = 1.0 / inv_delta_mu;
  const double epsilon = background.rho / inclusion.rho;
  return make_contrast(delta, epsilon);
}

QuasiMomentum make_quasi_momentum(const Vec3& alpha, int d, double alpha_min) {
  if (d != 2 && d != 3) throw ValidationError("dimension must be 2 or 3");
  QuasiMomentum q;
  q.alpha = alpha;
  if (d == 2) q.alpha[2] = 0.0;
  q.d = d;
  for (int i = 0; i < d; ++i) {
    if (q.alpha[i] < -kPi - 1e-12 || q.alpha[i] > kPi + 1e-12)
      throw ValidationError("quasi-momentum components must lie in [-pi, pi]");
  }
  q.near_zero = q.norm() < alpha_min;
  return q;
}

}  // namespace pcband
