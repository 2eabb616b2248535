#include "pcband/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

namespace pcband {

DiluteScaling make_dilute_scaling(double s, double epsilon) {
  if (!(s > 0.0 && s < 0.5))
    throw ValidationError("dilute shrink factor must lie in (0, 0.5)");
  if (epsilon < 0.0) throw ValidationError("contrast must be non-negative");
  DiluteScaling ds;
  ds.s = s;
  ds.regime_warning = epsilon / (s * s) > 0.1;
  return ds;
}

std::vector<double> leading_frequencies(const QAlphaMatrix& Q, double rho,
                                        double measure, double epsilon) {
  if (rho <= 0.0) throw ValidationError("density must be positive");
  if (measure <= 0.0) throw ValidationError("inclusion measure must be positive");
  if (epsilon < 0.0) throw ValidationError("contrast must be non-negative");
  std::vector<double> omega(Q.d);
  for (int i = 0; i < Q.d; ++i) {
    if (Q.beta[i] <= 0.0)
      throw PhysicsError("non-positive beta eigenvalue in leading_frequencies");
    omega[i] = std::sqrt(Q.beta[i] / (rho * measure)) * std::sqrt(epsilon);
  }
  std::sort(omega.begin(), omega.end());
  return omega;
}

std::vector<QuasiMomentum> brillouin_path(int d, int samples, double alpha_min) {
  if (d != 2 && d != 3) throw ValidationError("dimension must be 2 or 3");
  if (samples == 0) samples = d == 2 ? 32 : 24;
  if (samples < 4) throw ValidationError("brillouin path needs at least 4 samples");

  std::vector<Vec3> corners;
  if (d == 2)
    corners = {Vec3(0, 0, 0), Vec3(kPi, 0, 0), Vec3(kPi, kPi, 0), Vec3(0, 0, 0)};
  else
    corners = {Vec3(0, 0, 0), Vec3(kPi, 0, 0), Vec3(kPi, kPi, 0),
               Vec3(kPi, kPi, kPi), Vec3(0, 0, 0)};

  // fixed per-segment fractions (close to arclength-proportional) so that
  // every corner is sampled and doubled sample counts nest the coarse set
  const std::vector<double> frac =
      d == 2 ? std::vector<double>{5.0 / 16, 5.0 / 16, 6.0 / 16}
             : std::vector<double>{5.0 / 24, 5.0 / 24, 5.0 / 24, 9.0 / 24};
  std::vector<int> count(frac.size());
  int assigned = 0;
  for (size_t c = 0; c + 1 < frac.size(); ++c) {
    count[c] = std::max(1, (int)std::llround(samples * frac[c]));
    assigned += count[c];
  }
  count.back() = samples - assigned;
  if (count.back() < 1) throw ValidationError("too few samples for the path");

  std::vector<QuasiMomentum> path;
  path.reserve(samples);
  for (size_t c = 0; c < count.size(); ++c)
    for (int j = 0; j < count[c]; ++j) {
      const Vec3 a =
          corners[c] + (corners[c + 1] - corners[c]) * (double(j) / count[c]);
      path.push_back(make_quasi_momentum(a, d, alpha_min));
    }
  return path;
}

BandDiagram sweep_brillouin(const std::vector<QuasiMomentum>& path,
                            const BoundaryDiscretization& disc,
                            const LameMaterial& mat, double epsilon,
                            const LatticeSumConfig& cfg) {
  if (path.empty()) throw ValidationError("empty brillouin path");
  BandDiagram diagram;
  diagram.d = disc.d;
  diagram.epsilon = epsilon;
  diagram.rho = mat.rho;
  diagram.measure = inclusion_measure(disc);
  diagram.samples.resize(path.size());

  auto work = [&](size_t idx) {
    BandSample& s = diagram.samples[idx];
    s.alpha = path[idx];
    if (s.alpha.near_zero) {
      s.analytic_zero = true;  // omega = 0 with multiplicity d
      return;
    }
    try {
      const auto qm = compute_Q_alpha(disc, s.alpha, mat, cfg);
      const auto omega = leading_frequencies(qm, mat.rho, diagram.measure, epsilon);
      for (int i = 0; i < disc.d; ++i) {
        s.beta[i] = qm.beta[i];
        s.omega[i] = omega[i];
      }
    } catch (const std::exception& e) {
      s.failed = true;
      s.error = e.what();
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const size_t n = path.size();
  std::vector<std::future<void>> futs;
  for (unsigned t = 0; t < hw; ++t)
    futs.push_back(std::async(std::launch::async, [&, t]() {
      for (size_t idx = t; idx < n; idx += hw) work(idx);
    }));
  for (auto& f : futs) f.get();

  size_t computed = 0, failed = 0;
  for (const auto& s : diagram.samples) {
    if (s.analytic_zero) continue;
    ++computed;
    if (s.failed) ++failed;
  }
  if (computed > 0 && failed * 10 > computed) {
    std::ostringstream os;
    os << "brillouin sweep failed at " << failed << " of " << computed
       << " sampled points";
    throw AccuracyError(os.str());
  }
  return diagram;
}

BandgapReport bandgap_estimate(const BandDiagram& diagram,
                               std::optional<double> eta, double omega_sharp) {
  double omega_star = -1.0;
  for (const auto& s : diagram.samples) {
    if (s.analytic_zero || s.failed) continue;
    omega_star = std::max(omega_star, s.omega[diagram.d - 1]);
  }
  if (omega_star < 0.0)
    throw ValidationError("bandgap estimate needs at least one computed sample");

  BandgapReport rep;
  rep.omega_star = omega_star;
  rep.eta = eta.value_or(0.05 * omega_star);
  if (rep.eta <= 0.0) throw ValidationError("bandgap margin must be positive");
  rep.omega_sharp = omega_sharp;
  rep.lower = omega_star + rep.eta;
  rep.upper = omega_sharp;
  rep.nonempty = rep.upper > rep.lower;
  rep.epsilon_note =
      "valid for sufficiently small contrast (threshold not computed)";
  return rep;
}

Mat3c dilute_Q(const Mat3c& QD_free, const DiluteScaling& s, const Mat3c& R0,
               const std::array<Vec3c, 3>& xi_sums, int d) {
  if (d != 3)
    throw ValidationError("dilute expansion is only supported in three dimensions");
  Mat3c out = Mat3c::Zero();
  for (int i = 0; i < 3; ++i) {
    const Vec3c v = R0 * xi_sums[i];
    for (int j = 0; j < 3; ++j) {
      cplx corr = 0.0;
      for (int l = 0; l < 3; ++l) corr += v[l] * QD_free(l, j);
      out(i, j) = s.s * QD_free(i, j) - s.s * s.s * corr;
    }
  }
  return out;
}

std::array<Vec3c, 3> constant_density_integrals(const BoundaryDiscretization& disc,
                                                const LameMaterial& mat) {
  const auto S = assemble_single_layer(disc, std::nullopt, 0.0, mat);
  const auto phis = solve_density_for_constants(S);
  std::array<Vec3c, 3> xi;
  for (int i = 0; i < disc.d; ++i) {
    xi[i] = Vec3c::Zero();
    for (int n = 0; n < disc.N; ++n)
      for (int a = 0; a < disc.d; ++a)
        xi[i][a] += disc.weights[n] * phis[i][disc.d * n + a];
  }
  for (int i = disc.d; i < 3; ++i) xi[i] = Vec3c::Zero();
  return xi;
}

BallClosedForm ball_closed_form(double r, const LameMaterial& mat) {
  if (r <= 0.0) throw ValidationError("ball radius must be positive");
  if (!validate_convexity(mat, 3)) throw ValidationError("material not convex");
  if (mat.rho <= 0.0) throw ValidationError("density must be positive");
  BallClosedForm b;
  b.q_diag = 12.0 * mat.mu * kPi * r * (2.0 * mat.mu + mat.lambda) /
             (5.0 * mat.mu + 2.0 * mat.lambda);
  b.beta = Vec3(b.q_diag, b.q_diag, b.q_diag);
  b.omega_min_coeff = std::sqrt(9.0 * mat.mu * (2.0 * mat.mu + mat.lambda) /
                                ((5.0 * mat.mu + 2.0 * mat.lambda) * mat.rho * r * r));
  b.omega_max_coeff = std::sqrt(15.0 * mat.mu / (mat.rho * r * r));
  return b;
}

ResonantMode resonant_mode_leading(const QAlphaMatrix& Q, int branch,
                                   double measure) {
  if (branch < 0 || branch >= Q.d) throw ValidationError("branch out of range");
  if (measure <= 0.0) throw ValidationError("inclusion measure must be positive");
  const double tol = 10.0 * kHermitianTol;
  ResonantMode m;
  for (int j = 0; j < Q.d; ++j)
    if (std::abs(Q.beta[j] - Q.beta[branch]) <= tol) {
      Vec3c h = Vec3c::Zero();
      for (int c = 0; c < Q.d; ++c) h[c] = Q.h(c, j);
      m.basis.push_back(h);
    }
  m.degenerate = m.basis.size() > 1;
  Vec3c h = Vec3c::Zero();
  for (int c = 0; c < Q.d; ++c) h[c] = Q.h(c, branch);
  m.interior = h / measure;
  return m;
}

}  // namespace pcband
