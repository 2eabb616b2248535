#pragma once

#include "pcband/core.hpp"

namespace pcband {

struct LameMaterial {
  double lambda = 1.0;
  double mu = 1.0;
  double rho = 1.0;
};

// Strong convexity: mu > 0 and d*lambda + 2*mu > 0.
bool validate_convexity(const LameMaterial& mat, int d);

struct WaveVelocities {
  double cs;
  double cp;
};

// Shear and compressional speeds; throws ValidationError on an invalid material.
WaveVelocities wave_velocities(const LameMaterial& mat, int d);

struct ContrastRegime {
  double delta;
  double epsilon;
  double tau;
  bool tau_outside_order_one_band = false;  // tau outside [0.1, 10], warning only
};

ContrastRegime make_contrast(double delta, double epsilon);

// The inclusion Lame pair must be (1/delta) times the background pair.
ContrastRegime contrast_from_materials(const LameMaterial& background,
                                       const LameMaterial& inclusion,
                                       double rel_tol = 1e-12);

struct QuasiMomentum {
  Vec3 alpha = Vec3::Zero();  // component [2] unused when d == 2
  int d = 2;
  bool near_zero = false;

  double norm() const { return alpha.head(d == 2 ? 2 : 3).norm(); }
};

inline constexpr double kAlphaMinDefault = 1e-2;

// Components must lie in [-pi, pi].
QuasiMomentum make_quasi_momentum(const Vec3& alpha, int d,
                                  double alpha_min = kAlphaMinDefault);

}  // namespace pcband
