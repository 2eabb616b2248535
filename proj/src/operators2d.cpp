#include <cmath>
#include <complex>

#include "assembly_detail.hpp"
#include "pcband/operators.hpp"

namespace pcband {

std::vector<double> kress_log_weights(int N) {
  if (N < 4 || N % 2 != 0) throw ValidationError("log rule needs even N >= 4");
  const int n = N / 2;
  const double h = 2.0 * kPi / N;
  std::vector<double> R(N);
  for (int p = 0; p < N; ++p) {
    double s = 0.0;
    for (int m = 1; m < n; ++m) s += std::cos(m * p * h) / m;
    R[p] = -(4.0 * kPi / N) * s - (4.0 * kPi / (N * N)) * std::cos(n * p * h);
  }
  return R;
}

std::vector<double> hilbert_cot_weights(int N) {
  if (N < 4 || N % 2 != 0) throw ValidationError("conjugate rule needs even N >= 4");
  const int n = N / 2;
  const double h = 2.0 * kPi / N;
  std::vector<double> W(N);
  for (int p = 0; p < N; ++p) {
    double s = 0.0;
    for (int m = 1; m < n; ++m) s += std::sin(m * p * h);
    W[p] = (2.0 * kPi / N) * (2.0 * s + std::sin(n * p * h));
  }
  return W;
}

Mat3c traction_from_gradient(const Vec3& nu, const Mat3c dG[3],
                             const LameMaterial& mat, int d) {
  Mat3c T = Mat3c::Zero();
  for (int b = 0; b < d; ++b) {
    cplx div_b = 0.0;
    for (int l = 0; l < d; ++l) div_b += dG[l](l, b);
    for (int a = 0; a < d; ++a) {
      cplx v = mat.lambda * nu[a] * div_b;
      for (int l = 0; l < d; ++l)
        v += mat.mu * nu[l] * (dG[l](a, b) + dG[a](l, b));
      T(a, b) = v;
    }
  }
  return T;
}

namespace {

constexpr cplx kI{0.0, 1.0};

// radial derivatives of J_0(kappa r), orders 0..3
void bessel_radial(double kappa, double r, double j[4]) {
  const double J0 = std::cyl_bessel_j(0.0, kappa * r);
  const double J1 = std::cyl_bessel_j(1.0, kappa * r);
  j[0] = J0;
  j[1] = -kappa * J1;
  j[2] = -kappa * kappa * J0 + kappa * J1 / r;
  j[3] = kappa * kappa * kappa * J1 + kappa * kappa * J0 / r -
         2.0 * kappa * J1 / (r * r);
}

struct MatConsts {
  double S, P, ap, am;  // 1/mu, 1/(lambda+2mu), sums
};

MatConsts consts(const LameMaterial& m) {
  MatConsts c;
  c.S = 1.0 / m.mu;
  c.P = 1.0 / (m.lambda + 2.0 * m.mu);
  c.ap = c.S + c.P;
  c.am = c.S - c.P;
  return c;
}

// log-coefficient matrix C(y) of the 2D dynamic kernel: G^k = C log r + ...
// C = (1/2 pi mu) J0(ks r) delta - (1/2 pi k^2) Hess[J0(kp r) - J0(ks r)]
struct LogCoeff {
  Mat3c C = Mat3c::Zero();
  Mat3c dC[3] = {Mat3c::Zero(), Mat3c::Zero(), Mat3c::Zero()};
};

LogCoeff log_coeff(const Vec3& y, double k, const LameMaterial& m, bool with_grad) {
  const MatConsts mc = consts(m);
  const double r = std::hypot(y[0], y[1]);
  const double ks = k * std::sqrt(mc.S), kp = k * std::sqrt(mc.P);
  double js[4], jp[4];
  bessel_radial(ks, r, js);
  bessel_radial(kp, r, jp);
  double g[4];
  for (int i = 0; i < 4; ++i) g[i] = jp[i] - js[i];
  const double c1 = 1.0 / (2.0 * kPi * m.mu);
  const double c2 = -1.0 / (2.0 * kPi * k * k);
  const double A = g[2] - g[1] / r, B = g[1] / r;
  LogCoeff lc;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double ya = y[a] / r, yb = y[b] / r;
      double v = c2 * (A * ya * yb + (a == b ? B : 0.0));
      if (a == b) v += c1 * js[0];
      lc.C(a, b) = v;
    }
  if (with_grad) {
    const double Apr = g[3] - g[2] / r + g[1] / (r * r);
    const double Bpr = g[2] / r - g[1] / (r * r);
    for (int l = 0; l < 2; ++l) {
      const double yl = y[l] / r;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double ya = y[a] / r, yb = y[b] / r;
          double v = Apr * ya * yb * yl;
          v += (A / r) * ((a == l ? yb : 0.0) + (b == l ? ya : 0.0) - 2.0 * ya * yb * yl);
          if (a == b) v += Bpr * yl;
          v *= c2;
          if (a == b) v += c1 * js[1] * yl;
          lc.dC[l](a, b) = v;
        }
    }
  }
  return lc;
}

double real_k_2d(cplx k) {
  if (std::abs(k.imag()) > 1e-12 * std::max(1.0, std::abs(k)))
    throw ValidationError("2D assembly requires a real wavenumber");
  return std::abs(k.real());
}

LayerOperatorMatrix init_matrix(const BoundaryDiscretization& disc,
                                LayerOperatorMatrix::Kind kind,
                                const std::optional<QuasiMomentum>& alpha, cplx k) {
  LayerOperatorMatrix M;
  M.kind = kind;
  M.free_space = !alpha.has_value();
  if (alpha) M.alpha = alpha->alpha;
  M.k = k;
  M.d = disc.d;
  M.N = disc.N;
  M.entries = MatXc::Zero(2 * disc.N, 2 * disc.N);
  return M;
}

}  // namespace

namespace detail {

LayerOperatorMatrix assemble_single_layer_2d(const BoundaryDiscretization& disc,
                                             const std::optional<QuasiMomentum>& alpha,
                                             cplx kc, const LameMaterial& mat,
                                             const LatticeSumConfig& cfg) {
  const int N = disc.N;
  const double h = 2.0 * kPi / N;
  const MatConsts mc = consts(mat);
  const double k = std::abs(kc) == 0.0 ? 0.0 : real_k_2d(kc);
  const bool dynamic = k != 0.0;

  std::unique_ptr<QuasiGreens> qg;
  if (alpha) {
    qg = std::make_unique<QuasiGreens>(mat, *alpha, cfg);
    if (dynamic) qg->check_dynamic_window(k);
  }

  auto M = init_matrix(disc, LayerOperatorMatrix::Kind::SingleLayer, alpha, kc);
  const auto R = kress_log_weights(N);
  const Mat3c gap = dynamic ? green_dynamic_static_gap0(k, mat, 2) : Mat3c::Zero();

  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const Vec3 y = disc.nodes[i] - disc.nodes[j];
      Mat3c P, Q;
      if (i == j) {
        const double lsp = std::log(disc.speed[i]);
        const Vec3 tau = disc.dx[i] / disc.speed[i];
        P = Mat3c::Zero();
        Q = Mat3c::Zero();
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            P(a, b) = (a == b ? mc.ap / (8.0 * kPi) : 0.0);
            Q(a, b) = (a == b ? mc.ap / (4.0 * kPi) * lsp : 0.0) -
                      mc.am / (4.0 * kPi) * tau[a] * tau[b];
          }
        if (dynamic) Q += gap;
      } else {
        const double l4s =
            std::log(4.0 * std::pow(std::sin(0.5 * (disc.t[i] - disc.t[j])), 2));
        if (dynamic) {
          P = 0.5 * log_coeff(y, k, mat, false).C;
          Q = green_free_dynamic(y, k, mat, 2) - P * l4s;
        } else {
          P = Mat3c::Zero();
          for (int a = 0; a < 2; ++a) P(a, a) = mc.ap / (8.0 * kPi);
          Q = green_free_static(y, mat, 2) - P * l4s;
        }
      }
      Mat3c block = P * R[(i - j + N) % N] + Q * h;
      if (qg) {
        const Mat3c sm = dynamic ? qg->smooth_dynamic(y, k).G : qg->smooth_remainder(y).G;
        block += sm * h;
      }
      block *= disc.speed[j];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) M.entries(2 * i + a, 2 * j + b) = block(a, b);
    }
  }
  return M;
}

LayerOperatorMatrix assemble_neumann_poincare_2d(const BoundaryDiscretization& disc,
                                                 const std::optional<QuasiMomentum>& alpha,
                                                 cplx kc, const LameMaterial& mat,
                                                 const LatticeSumConfig& cfg) {
  const int N = disc.N;
  const double h = 2.0 * kPi / N;
  const MatConsts mc = consts(mat);
  const double k = std::abs(kc) == 0.0 ? 0.0 : real_k_2d(kc);
  const bool dynamic = k != 0.0;
  const double muP = mat.mu * mc.P;

  std::unique_ptr<QuasiGreens> qg;
  if (alpha) {
    qg = std::make_unique<QuasiGreens>(mat, *alpha, cfg);
    if (dynamic) qg->check_dynamic_window(k);
  }

  auto M = init_matrix(disc, LayerOperatorMatrix::Kind::NeumannPoincare, alpha, kc);
  const auto W = hilbert_cot_weights(N);
  const auto R = kress_log_weights(N);

  for (int i = 0; i < N; ++i) {
    const Vec3& nu = disc.normals[i];
    const Vec3& xp = disc.dx[i];
    const Vec3& xpp = disc.ddx[i];
    const double sp2 = disc.speed[i] * disc.speed[i];
    // coefficient of the cot((t-s)/2) part: antisymmetric Kelvin term
    Mat3c cotco = Mat3c::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        cotco(a, b) = (muP / (4.0 * kPi)) * (nu[b] * xp[a] - nu[a] * xp[b]) / sp2;

    for (int j = 0; j < N; ++j) {
      const Vec3 y = disc.nodes[i] - disc.nodes[j];
      Mat3c smoothK;  // static free kernel minus the cot part
      if (i == j) {
        const double nxpp = nu.dot(xpp);
        const double kap = xp.dot(xpp) / sp2;
        Vec3 Mvec;  // diagonal limit of y/r^2 - (1/2) cot * x'/|x'|^2
        for (int a = 0; a < 2; ++a) Mvec[a] = (kap * xp[a] - 0.5 * xpp[a]) / sp2;
        const double nyr2 = -nxpp / (2.0 * sp2);
        const Vec3 tau = xp / disc.speed[i];
        smoothK = Mat3c::Zero();
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            double v = (muP / (2.0 * kPi)) *
                       (nu[b] * Mvec[a] - nu[a] * Mvec[b] + (a == b ? nyr2 : 0.0));
            v += (mat.mu * mc.am / kPi) * tau[a] * tau[b] * nyr2;
            smoothK(a, b) = v;
          }
      } else {
        const double r2 = y[0] * y[0] + y[1] * y[1];
        const double ct = 0.5 / std::tan(0.5 * (disc.t[i] - disc.t[j]));
        const double nydr2 = nu.dot(y) / r2;
        Vec3 Mvec;
        for (int a = 0; a < 2; ++a) Mvec[a] = y[a] / r2 - ct * xp[a] / sp2;
        smoothK = Mat3c::Zero();
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            double v = (muP / (2.0 * kPi)) *
                       (nu[b] * Mvec[a] - nu[a] * Mvec[b] + (a == b ? nydr2 : 0.0));
            v += (mat.mu * mc.am / kPi) * y[a] * y[b] * nydr2 / r2;
            smoothK(a, b) = v;
          }
      }

      Mat3c block = cotco * (W[(i - j + N) % N]) + smoothK * h;

      if (dynamic && i != j) {
        // traction of G^k - G^0: weakly singular, log-split
        const double l4s =
            std::log(4.0 * std::pow(std::sin(0.5 * (disc.t[i] - disc.t[j])), 2));
        const LogCoeff lc = log_coeff(y, k, mat, true);
        const Mat3c PT = 0.5 * traction_from_gradient(nu, lc.dC, mat, 2);
        Mat3c gd[3], gs[3];
        green_free_dynamic_grad(y, k, mat, 2, gd);
        green_free_static_grad(y, mat, 2, gs);
        Mat3c dD[3];
        for (int l = 0; l < 2; ++l) dD[l] = gd[l] - gs[l];
        const Mat3c KD = traction_from_gradient(nu, dD, mat, 2);
        block += PT * R[(i - j + N) % N] + (KD - PT * l4s) * h;
      }
      // (dynamic diagonal extra vanishes: grad(G^k - G^0) -> 0)

      if (qg) {
        const auto sm = dynamic ? qg->smooth_dynamic(y, k, true) : qg->smooth_remainder(y, true);
        block += traction_from_gradient(nu, sm.dG, mat, 2) * h;
      }
      block *= disc.speed[j];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) M.entries(2 * i + a, 2 * j + b) = block(a, b);
    }
  }
  return M;
}

}  // namespace detail

}  // namespace pcband
