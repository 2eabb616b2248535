#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "pcband/greens.hpp"
#include "pcband/spectrum.hpp"

using namespace pcband;

namespace {

QAlphaMatrix fake_Q(int d, const Vec3& beta) {
  QAlphaMatrix q;
  q.d = d;
  q.free_space = true;
  q.beta = beta;
  q.h = Mat3c::Identity();
  for (int i = 0; i < d; ++i) q.Q(i, i) = beta[i];
  return q;
}

}  // namespace

TEST_CASE("leading frequencies from the ball closed form") {
  const double qd = 36.0 * kPi / 7.0;
  const auto Q = fake_Q(3, Vec3(qd, qd, qd));
  const double vol = 4.0 * kPi / 3.0;
  const double eps = 1e-4;
  const auto om = leading_frequencies(Q, 1.0, vol, eps);
  REQUIRE(om.size() == 3);
  for (double w : om)
    CHECK(w == doctest::Approx(std::sqrt(27.0 / 7.0) * std::sqrt(eps)).epsilon(1e-12));
  CHECK(om[0] == doctest::Approx(1.96396 * std::sqrt(eps)).epsilon(1e-5));

  // zero contrast
  for (double w : leading_frequencies(Q, 1.0, vol, 0.0)) CHECK(w == 0.0);
  // quadrupled density halves omega
  const auto om4 = leading_frequencies(Q, 4.0, vol, eps);
  for (int i = 0; i < 3; ++i) CHECK(om4[i] == doctest::Approx(0.5 * om[i]).epsilon(1e-12));
  // material scaling: beta -> c beta multiplies omega by sqrt(c)
  const auto Qc = fake_Q(3, Vec3(2.0 * qd, 2.0 * qd, 2.0 * qd));
  const auto omc = leading_frequencies(Qc, 1.0, vol, eps);
  for (int i = 0; i < 3; ++i)
    CHECK(omc[i] == doctest::Approx(std::sqrt(2.0) * om[i]).epsilon(1e-12));

  CHECK_THROWS_AS(leading_frequencies(fake_Q(2, Vec3(-1.0, 1.0, 0.0)), 1.0, 1.0, eps),
                  PhysicsError);
}

TEST_CASE("ball closed form") {
  const LameMaterial m{1.0, 1.0, 1.0};
  const auto b = ball_closed_form(1.0, m);
  CHECK(b.q_diag == doctest::Approx(36.0 * kPi / 7.0).epsilon(1e-14));
  CHECK(b.q_diag == doctest::Approx(16.15676).epsilon(1e-6));
  CHECK(b.omega_min_coeff == doctest::Approx(std::sqrt(27.0 / 7.0)).epsilon(1e-14));
  CHECK(b.omega_max_coeff == doctest::Approx(std::sqrt(15.0)).epsilon(1e-14));

  const auto b2 = ball_closed_form(2.0, m);
  CHECK(b2.q_diag == doctest::Approx(2.0 * b.q_diag).epsilon(1e-14));
  CHECK(b2.omega_min_coeff == doctest::Approx(0.5 * b.omega_min_coeff).epsilon(1e-14));
  CHECK(b2.omega_max_coeff == doctest::Approx(0.5 * b.omega_max_coeff).epsilon(1e-14));
}

TEST_CASE("brillouin path layout") {
  const auto p2 = brillouin_path(2);
  REQUIRE((int)p2.size() == 32);
  CHECK(p2[0].near_zero);
  bool hasX = false, hasM = false;
  for (const auto& q : p2) {
    hasX = hasX || (q.alpha - Vec3(kPi, 0, 0)).norm() < 1e-14;
    hasM = hasM || (q.alpha - Vec3(kPi, kPi, 0)).norm() < 1e-14;
  }
  CHECK(hasX);
  CHECK(hasM);

  // doubling nests the coarse samples
  const auto p4 = brillouin_path(2, 64);
  for (const auto& q : p2) {
    bool found = false;
    for (const auto& r : p4) found = found || (q.alpha - r.alpha).norm() < 1e-12;
    CHECK(found);
  }

  const auto p3 = brillouin_path(3);
  REQUIRE((int)p3.size() == 24);
  bool hasR = false;
  for (const auto& q : p3)
    hasR = hasR || (q.alpha - Vec3(kPi, kPi, kPi)).norm() < 1e-14;
  CHECK(hasR);
}

TEST_CASE("bandgap estimate") {
  BandDiagram d;
  d.d = 2;
  BandSample s;
  s.omega = Vec3(1.0, 2.0, 0.0);
  d.samples.push_back(s);
  const auto rep = bandgap_estimate(d, 0.1, 3.0);
  CHECK(rep.omega_star == doctest::Approx(2.0));
  CHECK(rep.lower == doctest::Approx(2.1));
  CHECK(rep.upper == doctest::Approx(3.0));
  CHECK(rep.nonempty);

  const auto repempty = bandgap_estimate(d, 0.1, 2.05);
  CHECK(!repempty.nonempty);

  const auto repdef = bandgap_estimate(d, std::nullopt, 3.0);
  CHECK(repdef.eta == doctest::Approx(0.1));

  BandDiagram flagged;
  flagged.d = 2;
  BandSample f;
  f.analytic_zero = true;
  flagged.samples.push_back(f);
  CHECK_THROWS_AS(bandgap_estimate(flagged, 0.1, 3.0), ValidationError);
}

TEST_CASE("2D circle band sweep") {
  const auto disc = discretize_boundary(ShapeSpec::circle(0.25), 64);
  const LameMaterial mat{1.0, 1.0, 1.0};
  const double eps = 1e-4;
  const auto path = brillouin_path(2);
  const auto diag = sweep_brillouin(path, disc, mat, eps);
  REQUIRE(diag.samples.size() == path.size());
  CHECK(diag.measure == doctest::Approx(kPi * 0.0625).epsilon(1e-10));

  int argmax = -1;
  double best = -1.0;
  for (size_t i = 0; i < diag.samples.size(); ++i) {
    const auto& s = diag.samples[i];
    if (s.analytic_zero) {
      CHECK(s.omega.norm() == 0.0);
      continue;
    }
    REQUIRE(!s.failed);
    CHECK(s.omega[0] <= s.omega[1]);
    CHECK(s.omega[0] >= 0.0);
    // omega recomputable from stored beta bit-for-bit
    for (int c = 0; c < 2; ++c)
      CHECK(s.omega[c] ==
            std::sqrt(s.beta[c] / (diag.rho * diag.measure)) * std::sqrt(eps));
    if (s.omega[1] > best) {
      best = s.omega[1];
      argmax = (int)i;
    }
  }
  // top-band argmax pinned from converged sweeps (N = 64 and 128 agree to
  // 8 decimals): beta_2 peaks at the X corner, 14.2211 vs 12.4930 at M
  CHECK((diag.samples[argmax].alpha.alpha - Vec3(kPi, 0, 0)).norm() < 1e-14);
  CHECK(diag.samples[argmax].beta[1] == doctest::Approx(14.22108967).epsilon(1e-6));

  // beta at -alpha matches beta at alpha
  const auto q = make_quasi_momentum(Vec3(kPi, kPi / 2.0, 0.0), 2);
  const auto qn = make_quasi_momentum(Vec3(-kPi, -kPi / 2.0, 0.0), 2);
  const auto d1 = sweep_brillouin({q}, disc, mat, eps);
  const auto d2 = sweep_brillouin({qn}, disc, mat, eps);
  CHECK((d1.samples[0].beta - d2.samples[0].beta).norm() < 1e-8);
}

TEST_CASE("dilute expansion") {
  const LameMaterial mat{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(make_dilute_scaling(0.6, 1e-4), ValidationError);
  CHECK(make_dilute_scaling(0.1, 1e-2).regime_warning);
  CHECK(!make_dilute_scaling(0.1, 1e-4).regime_warning);

  // 2D refused
  const auto s01 = make_dilute_scaling(0.1, 1e-6);
  std::array<Vec3c, 3> xi{};
  CHECK_THROWS_AS(dilute_Q(Mat3c::Identity(), s01, Mat3c::Zero(), xi, 2),
                  ValidationError);

  // free-space radius scaling: Q(sr) = s Q(r)
  const auto discD = discretize_boundary(ShapeSpec::sphere(0.2), 10);
  const auto discB = discretize_boundary(ShapeSpec::sphere(0.1), 10);
  const auto QD = compute_Q_alpha(discD, std::nullopt, mat);
  const auto QB = compute_Q_alpha(discB, std::nullopt, mat);
  CHECK((QB.Q - 0.5 * QD.Q).cwiseAbs().maxCoeff() < 1e-6 * QD.Q.cwiseAbs().maxCoeff());

  // dilute prediction vs the direct quasi-periodic computation: O(s^3)
  const auto q = make_quasi_momentum(Vec3(kPi, kPi, kPi), 3);
  const double rD = 0.25;
  const auto disc = discretize_boundary(ShapeSpec::sphere(rD), 8);
  const auto Qfree = compute_Q_alpha(disc, std::nullopt, mat);
  const auto xiD = constant_density_integrals(disc, mat);
  QuasiGreens qg(mat, q);
  const Mat3c R0 = qg.smooth_remainder(Vec3::Zero()).G;

  auto defect = [&](double s) {
    const auto pred = dilute_Q(Qfree.Q, make_dilute_scaling(s, 1e-6), R0, xiD, 3);
    const auto discB2 = discretize_boundary(ShapeSpec::sphere(s * rD), 8);
    const auto direct = compute_Q_alpha(discB2, q, mat);
    return (pred - Mat3c(direct.Q)).cwiseAbs().maxCoeff();
  };
  const double e1 = defect(0.2), e2 = defect(0.1);
  const double factor = e1 / e2;
  CHECK(factor > 6.0);
  CHECK(factor < 10.0);
}

TEST_CASE("resonant modes") {
  const LameMaterial mat{1.0, 1.0, 1.0};
  // ball: triple eigenvalue, degenerate eigenspace of dimension 3
  const auto disc = discretize_boundary(ShapeSpec::sphere(0.25), 10);
  const auto Q = compute_Q_alpha(disc, std::nullopt, mat);
  const auto mode = resonant_mode_leading(Q, 0, 4.0 * kPi / 3.0 * 0.015625);
  CHECK(mode.degenerate);
  CHECK(mode.basis.size() == 3);
  CHECK(std::abs(mode.interior.norm() * (4.0 * kPi / 3.0 * 0.015625) - 1.0) < 1e-12);

  // 2D ellipse: simple eigenvalues, modes on the symmetry axes
  const auto disc2 = discretize_boundary(ShapeSpec::ellipse(0.3, 0.2), 128);
  const auto q = make_quasi_momentum(Vec3(kPi, kPi, 0.0), 2);
  const auto Q2 = compute_Q_alpha(disc2, q, mat);
  CHECK(Q2.beta[1] - Q2.beta[0] > 10.0 * kHermitianTol);
  const auto m0 = resonant_mode_leading(Q2, 0, inclusion_measure(disc2));
  CHECK(!m0.degenerate);
  const Vec3c h = m0.basis[0];
  // aligned with a coordinate axis within angular tolerance 1e-3
  const double a0 = std::abs(h[0]), a1 = std::abs(h[1]);
  CHECK(std::min(a0, a1) < 1e-3 * std::max(a0, a1));
}
