#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "pcband/operators.hpp"
#include "../src/sphere_quadrature.hpp"

using namespace pcband;
using detail::SphereInterp;
using detail::sh_index;

namespace {

const LameMaterial kMat{1.0, 1.0, 1.0};

// ball of radius R, constant material: S^0[e_i] = s e_i with
// s = -R (5 mu + 2 lambda) / (3 mu (2 mu + lambda))
double ball_single_layer_constant(double R, const LameMaterial& m) {
  return -R * (5.0 * m.mu + 2.0 * m.lambda) / (3.0 * m.mu * (2.0 * m.mu + m.lambda));
}

VecXc constant_vec(int N, int comp) {
  VecXc v = VecXc::Zero(3 * N);
  for (int n = 0; n < N; ++n) v[3 * n + comp] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("spherical interpolation is exact on band-limited data") {
  const auto disc = discretize_boundary(ShapeSpec::sphere(0.25), 8);
  const SphereInterp interp(disc);
  REQUIRE(interp.ncoef == 64);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  VecXc c(interp.ncoef);
  for (int i = 0; i < interp.ncoef; ++i) c[i] = cplx(unif(rng), unif(rng));

  // synthesize on the grid, analyze back
  VecXc f(disc.N), row(interp.ncoef);
  for (int n = 0; n < disc.N; ++n) {
    interp.basis_row(disc.theta[n], disc.phi[n], row);
    f[n] = (row.array() * c.array()).sum();
  }
  const VecXc c2 = interp.analysis * f;
  CHECK((c2 - c).cwiseAbs().maxCoeff() < 1e-12);

  // interpolate at an arbitrary direction
  const double th = 1.234, ph = 2.345;
  interp.basis_row(th, ph, row);
  const cplx direct = (row.array() * c.array()).sum();
  const cplx interp_val = (row.array() * (interp.analysis * f).array()).sum();
  CHECK(std::abs(direct - interp_val) < 1e-12);
}

TEST_CASE("ball single layer maps constants to the closed form") {
  const double R = 0.25;
  for (const LameMaterial m : {LameMaterial{1.0, 1.0, 1.0}, LameMaterial{1.7, 0.6, 1.0}}) {
    const auto disc = discretize_boundary(ShapeSpec::sphere(R), 10);
    const auto S = assemble_single_layer(disc, std::nullopt, 0.0, m);
    const double s = ball_single_layer_constant(R, m);
    for (int i = 0; i < 3; ++i) {
      const VecXc e = constant_vec(disc.N, i);
      const VecXc Se = S.entries * e;
      double err = 0.0;
      for (int n = 0; n < 3 * disc.N; ++n)
        err = std::max(err, std::abs(Se[n] - s * e[n]));
      CHECK(err < 1e-8 * std::abs(s));
    }
  }
}

TEST_CASE("free-space Q matrix of the ball") {
  const double R = 0.25;
  const LameMaterial m{1.3, 0.8, 1.0};
  const auto disc = discretize_boundary(ShapeSpec::sphere(R), 10);
  const auto qm = compute_Q_alpha(disc, std::nullopt, m);
  const double qref =
      12.0 * m.mu * kPi * R * (2.0 * m.mu + m.lambda) / (5.0 * m.mu + 2.0 * m.lambda);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(qm.Q(i, j) - (i == j ? qref : 0.0)) < 1e-7 * qref);
  CHECK(qm.hermitian_defect < 1e-10);
}

TEST_CASE("single layer self-convergence on a smooth density") {
  const double R = 0.25;
  auto apply = [&](int nt) {
    const auto disc = discretize_boundary(ShapeSpec::sphere(R), nt);
    const auto S = assemble_single_layer(disc, std::nullopt, 0.0, kMat);
    VecXc phi(3 * disc.N);
    for (int n = 0; n < disc.N; ++n) {
      const Vec3& x = disc.nodes[n];
      phi[3 * n] = x[0] / R + 0.3;
      phi[3 * n + 1] = x[1] * x[2] / (R * R);
      phi[3 * n + 2] = std::cos(disc.theta[n]);
    }
    const VecXc Sphi = S.entries * phi;
    // value at the north-pole-most node (first theta row, phi = 0)
    return Vec3c(Sphi[0], Sphi[1], Sphi[2]);
  };
  // node sets differ, so compare through the closed-form-free route: the
  // theta grids differ but nt and 2nt share no nodes; use extrapolation pair
  const auto disc8 = discretize_boundary(ShapeSpec::sphere(R), 8);
  const auto disc16 = discretize_boundary(ShapeSpec::sphere(R), 16);
  // evaluate both at matching directions via a potential at an exterior point
  auto pot = [&](const BoundaryDiscretization& disc) -> VecXc {
    const auto S = assemble_single_layer(disc, std::nullopt, 0.0, kMat);
    VecXc phi(3 * disc.N);
    for (int n = 0; n < disc.N; ++n) {
      const Vec3& x = disc.nodes[n];
      phi[3 * n] = x[0] / R + 0.3;
      phi[3 * n + 1] = x[1] * x[2] / (R * R);
      phi[3 * n + 2] = x[2] / R;
    }
    return S.entries * phi;
  };
  (void)apply;
  const VecXc p8 = pot(disc8), p16 = pot(disc16);
  // compare the surface mean of |S phi|^2, a grid-independent functional
  auto mean2 = [](const BoundaryDiscretization& disc, const VecXc& v) {
    double s = 0.0;
    for (int n = 0; n < disc.N; ++n)
      for (int a = 0; a < 3; ++a) s += disc.weights[n] * std::norm(v[3 * n + a]);
    return s / disc.boundary_measure();
  };
  CHECK(std::abs(mean2(disc8, p8) - mean2(disc16, p16)) < 1e-8 * mean2(disc16, p16));
}

TEST_CASE("eigen identity for the ball Neumann-Poincare operator") {
  const auto disc = discretize_boundary(ShapeSpec::sphere(0.25), 10);
  const LameMaterial m{1.4, 0.7, 1.0};
  const auto S = assemble_single_layer(disc, std::nullopt, 0.0, m);
  const auto K = assemble_neumann_poincare(disc, std::nullopt, 0.0, m);
  const auto phis = solve_density_for_constants(S);
  for (int i = 0; i < 3; ++i) {
    const VecXc lhs = 0.5 * phis[i] + K.entries * phis[i];
    const double resid = (lhs - phis[i]).cwiseAbs().maxCoeff() /
                         phis[i].cwiseAbs().maxCoeff();
    CHECK(resid < 1e-6);
  }
}

TEST_CASE("quasi-periodic Q matrix in 3D") {
  const auto disc = discretize_boundary(ShapeSpec::sphere(0.25), 12);
  const auto q = make_quasi_momentum(Vec3(kPi, kPi / 2.0, kPi / 3.0), 3);
  const auto qm = compute_Q_alpha(disc, q, kMat);
  CHECK(qm.hermitian_defect < 1e-8);
  CHECK(qm.beta[0] > 0.0);
  CHECK(qm.beta[0] <= qm.beta[1]);
  CHECK(qm.beta[1] <= qm.beta[2]);

  // value pinned from a two-resolution study (stable to ~3e-9 rel)
  CHECK(qm.Q(0, 0).real() == doctest::Approx(7.1516226).epsilon(1e-6));

  // conjugation symmetry
  const auto qmneg =
      compute_Q_alpha(disc, make_quasi_momentum(Vec3(-kPi, -kPi / 2.0, -kPi / 3.0), 3), kMat);
  CHECK((qmneg.Q - qm.Q.conjugate()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("dynamic single layer reduces to static as k -> 0") {
  const auto disc = discretize_boundary(ShapeSpec::sphere(0.25), 8);
  const auto S0 = assemble_single_layer(disc, std::nullopt, 0.0, kMat);
  const auto Sa = assemble_single_layer(disc, std::nullopt, cplx(0.1, 0.0), kMat);
  const auto Sb = assemble_single_layer(disc, std::nullopt, cplx(0.05, 0.0), kMat);
  const double da = (Sa.entries - S0.entries).cwiseAbs().maxCoeff();
  const double db = (Sb.entries - S0.entries).cwiseAbs().maxCoeff();
  // leading gap is linear in k in 3D
  CHECK(da / db == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("3D rejects non-sphere input") {
  const auto disc = discretize_boundary(ShapeSpec::circle(0.25), 64);
  BoundaryDiscretization bad = disc;
  bad.d = 3;
  CHECK_THROWS_AS(assemble_single_layer(bad, std::nullopt, 0.0, kMat),
                  ValidationError);
}
