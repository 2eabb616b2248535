#include "pcband/greens.hpp"

#include <cmath>
#include <complex>

#include "pcband/special.hpp"

namespace pcband {

namespace {

constexpr cplx kI{0.0, 1.0};

Mat3c ident_d(int d) {
  Mat3c m = Mat3c::Zero();
  for (int i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

void require_dim(int d) {
  if (d != 2 && d != 3) throw ValidationError("dimension must be 2 or 3");
}

double radius(const Vec3& x, int d) {
  double s = x[0] * x[0] + x[1] * x[1];
  if (d == 3) s += x[2] * x[2];
  const double r = std::sqrt(s);
  if (r < 1e-14) throw SingularityError("free kernel evaluated at x = 0");
  return r;
}

// Hankel H^{(1)}_nu for real positive argument
cplx hankel1(int nu, double z) {
  return {std::cyl_bessel_j(static_cast<double>(nu), z),
          std::cyl_neumann(static_cast<double>(nu), z)};
}

double real_wavenumber_2d(cplx k) {
  if (std::abs(k.imag()) > 1e-12 * std::max(1.0, std::abs(k)))
    throw ValidationError("2D dynamic kernel requires real wavenumber");
  const double kr = std::abs(k.real());
  if (kr == 0.0) throw ValidationError("dynamic kernel requires k != 0");
  return kr;
}

// radial derivatives of u(r) = e^{i kappa r}/r, orders 0..3
void exp_over_r(cplx kappa, double r, cplx u[4]) {
  const cplx w = kI * kappa - 1.0 / r;
  u[0] = std::exp(kI * kappa * r) / r;
  u[1] = w * u[0];
  u[2] = u[0] / (r * r) + w * u[1];
  u[3] = -2.0 * u[0] / (r * r * r) + 2.0 * u[1] / (r * r) + w * u[2];
}

// radial derivatives of h(r) = H0(kappa r), orders 0..3
void hankel_radial(double kappa, double r, cplx h[4]) {
  const cplx h0 = hankel1(0, kappa * r);
  const cplx h1 = hankel1(1, kappa * r);
  h[0] = h0;
  h[1] = -kappa * h1;
  h[2] = -kappa * kappa * h0 + kappa * h1 / r;
  h[3] = kappa * kappa * kappa * h1 + kappa * kappa * h0 / r -
         2.0 * kappa * h1 / (r * r);
}

struct DynParts {
  cplx diag[4];    // radial derivatives of the delta_ij prefactor
  cplx scal[4];    // radial derivatives of the double-gradient potential
  cplx pref_diag;  // multiplies diag
  cplx pref_grad;  // multiplies the Hessian of scal
};

DynParts dynamic_parts(cplx k, const LameMaterial& m, int d, double r) {
  DynParts p;
  const double smu = std::sqrt(m.mu), sl2 = std::sqrt(m.lambda + 2.0 * m.mu);
  if (d == 3) {
    const cplx ks = k / smu, kp = k / sl2;
    cplx us[4], up[4];
    exp_over_r(ks, r, us);
    exp_over_r(kp, r, up);
    for (int i = 0; i < 4; ++i) {
      p.diag[i] = us[i];
      p.scal[i] = up[i] - us[i];
    }
    p.pref_diag = -1.0 / (4.0 * kPi * m.mu);
    p.pref_grad = 1.0 / (4.0 * kPi * k * k);
  } else {
    const double kk = real_wavenumber_2d(k);
    const double ks = kk / smu, kp = kk / sl2;
    cplx hs[4], hp[4];
    hankel_radial(ks, r, hs);
    hankel_radial(kp, r, hp);
    for (int i = 0; i < 4; ++i) {
      p.diag[i] = hs[i];
      p.scal[i] = hp[i] - hs[i];
    }
    p.pref_diag = -kI / (4.0 * m.mu);
    p.pref_grad = kI / (4.0 * kk * kk);
  }
  return p;
}

}  // namespace

Mat3c green_free_static(const Vec3& x, const LameMaterial& m, int d) {
  require_dim(d);
  if (!validate_convexity(m, d)) throw ValidationError("material not convex");
  const double r = radius(x, d);
  const double ap = 1.0 / m.mu + 1.0 / (m.lambda + 2.0 * m.mu);
  const double am = 1.0 / m.mu - 1.0 / (m.lambda + 2.0 * m.mu);
  Mat3c G = Mat3c::Zero();
  if (d == 2) {
    const double c1 = ap / (4.0 * kPi) * std::log(r);
    const double c2 = am / (4.0 * kPi) / (r * r);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        G(i, j) = (i == j ? c1 : 0.0) - c2 * x[i] * x[j];
  } else {
    const double c1 = -ap / (8.0 * kPi) / r;
    const double c2 = am / (8.0 * kPi) / (r * r * r);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        G(i, j) = (i == j ? c1 : 0.0) - c2 * x[i] * x[j];
  }
  return G;
}

void green_free_static_grad(const Vec3& x, const LameMaterial& m, int d, Mat3c grad[3]) {
  require_dim(d);
  const double r = radius(x, d);
  const double ap = 1.0 / m.mu + 1.0 / (m.lambda + 2.0 * m.mu);
  const double am = 1.0 / m.mu - 1.0 / (m.lambda + 2.0 * m.mu);
  const double r2 = r * r;
  for (int l = 0; l < 3; ++l) grad[l] = Mat3c::Zero();
  if (d == 2) {
    const double cp = ap / (4.0 * kPi), cm = am / (4.0 * kPi);
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double v = cp * (i == j ? x[l] / r2 : 0.0);
          v -= cm * (((i == l ? x[j] : 0.0) + (j == l ? x[i] : 0.0)) / r2 -
                     2.0 * x[i] * x[j] * x[l] / (r2 * r2));
          grad[l](i, j) = v;
        }
  } else {
    const double r3 = r2 * r, r5 = r3 * r2;
    const double cp = ap / (8.0 * kPi), cm = am / (8.0 * kPi);
    for (int l = 0; l < 3; ++l)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double v = cp * (i == j ? x[l] / r3 : 0.0);
          v -= cm * (((i == l ? x[j] : 0.0) + (j == l ? x[i] : 0.0)) / r3 -
                     3.0 * x[i] * x[j] * x[l] / r5);
          grad[l](i, j) = v;
        }
  }
}

Mat3c green_free_dynamic(const Vec3& x, cplx k, const LameMaterial& m, int d) {
  require_dim(d);
  if (!validate_convexity(m, d)) throw ValidationError("material not convex");
  if (std::abs(k) == 0.0) throw ValidationError("dynamic kernel requires k != 0");
  const double r = radius(x, d);
  const DynParts p = dynamic_parts(k, m, d, r);
  // Hessian of a radial scalar: (f'' - f'/r) yhat yhat + (f'/r) delta
  const cplx A = p.scal[2] - p.scal[1] / r;
  const cplx B = p.scal[1] / r;
  Mat3c G = Mat3c::Zero();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cplx v = p.pref_grad * (A * x[i] * x[j] / (r * r) + (i == j ? B : 0.0));
      if (i == j) v += p.pref_diag * p.diag[0];
      G(i, j) = v;
    }
  return G;
}

void green_free_dynamic_grad(const Vec3& x, cplx k, const LameMaterial& m, int d,
                             Mat3c grad[3]) {
  require_dim(d);
  if (std::abs(k) == 0.0) throw ValidationError("dynamic kernel requires k != 0");
  const double r = radius(x, d);
  const DynParts p = dynamic_parts(k, m, d, r);
  const cplx A = p.scal[2] - p.scal[1] / r;
  const cplx Ap = p.scal[3] - p.scal[2] / r + p.scal[1] / (r * r);
  const cplx Bp = p.scal[2] / r - p.scal[1] / (r * r);
  const cplx diag_p = p.pref_diag * p.diag[1];
  for (int l = 0; l < 3; ++l) grad[l] = Mat3c::Zero();
  for (int l = 0; l < d; ++l) {
    const double yl = x[l] / r;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double yi = x[i] / r, yj = x[j] / r;
        cplx v = Ap * yi * yj * yl;
        v += (A / r) * ((i == l ? yj : 0.0) + (j == l ? yi : 0.0) - 2.0 * yi * yj * yl);
        if (i == j) v += Bp * yl;
        v *= p.pref_grad;
        if (i == j) v += diag_p * yl;
        grad[l](i, j) = v;
      }
  }
}

Mat3c green_dynamic_static_gap0(cplx k, const LameMaterial& m, int d) {
  require_dim(d);
  if (std::abs(k) == 0.0) throw ValidationError("gap limit requires k != 0");
  const double S = 1.0 / m.mu, P = 1.0 / (m.lambda + 2.0 * m.mu);
  const double ap = S + P, b = S - P;
  cplx c;
  if (d == 3) {
    // -(i k / 12 pi) (2 mu^{-3/2} + (lambda+2mu)^{-3/2})
    c = -kI * k / (12.0 * kPi) * (2.0 * std::pow(S, 1.5) + std::pow(P, 1.5));
  } else {
    const double kk = real_wavenumber_2d(k);
    const double ks = kk * std::sqrt(S), kp = kk * std::sqrt(P);
    const double re = (S * std::log(ks / 2.0) + P * std::log(kp / 2.0) +
                       kEulerGamma * ap) /
                          (4.0 * kPi) +
                      b / (8.0 * kPi);
    c = cplx(re, -ap / 8.0);
  }
  return c * ident_d(d);
}

QuasiGreens::QuasiGreens(const LameMaterial& m, const QuasiMomentum& q,
                         LatticeSumConfig cfg)
    : mat_(m), q_(q), d_(q.d), sums_(q, cfg) {
  if (!validate_convexity(m, d_)) throw ValidationError("material not convex");
  inv_mu_ = 1.0 / m.mu;
  b_ = 1.0 / m.mu - 1.0 / (m.lambda + 2.0 * m.mu);
}

QuasiGreens::Entry QuasiGreens::compose(const LatticeSums::Values& v, int lmax,
                                        cplx k2, bool with_grad) const {
  Entry e;
  e.has_grad = with_grad;
  const Mat3c id = ident_d(d_);
  cplx k2l = 1.0;
  for (int l = 0; l <= lmax; ++l) {
    const double sc = std::pow(mat_.mu, -(l + 1));
    const double cl = sc - std::pow(mat_.lambda + 2.0 * mat_.mu, -(l + 1));
    e.G += k2l * (-sc * v.lam[l + 1] * id + cl * v.dyad[l + 2]);
    if (with_grad)
      for (int m = 0; m < d_; ++m)
        e.dG[m] += k2l * (-sc * v.grad_lam[l + 1][m] * id + cl * v.grad_dyad[l + 2][m]);
    k2l *= k2;
  }
  return e;
}

namespace {

// reduce x into the centered unit cell; returns the Bloch phase factor
cplx reduce_cell(const Vec3& x, const Vec3& alpha, int d, Vec3& y) {
  y = Vec3::Zero();
  double dot = 0.0;
  for (int i = 0; i < d; ++i) {
    const double n = std::nearbyint(x[i]);
    y[i] = x[i] - n;
    dot += alpha[i] * n;
  }
  return std::exp(cplx(0.0, dot));
}

void scale_entry(QuasiGreens::Entry& e, cplx f, int d) {
  e.G *= f;
  if (e.has_grad)
    for (int m = 0; m < d; ++m) e.dG[m] *= f;
}

}  // namespace

QuasiGreens::Entry QuasiGreens::quasi_static(const Vec3& x, bool with_grad) const {
  Vec3 y;
  const cplx ph = reduce_cell(x, sums_.alpha(), d_, y);
  const auto v = sums_.eval(y, with_grad, false, 2);
  Entry e = compose(v, 0, 0.0, with_grad);
  scale_entry(e, ph, d_);
  return e;
}

QuasiGreens::Entry QuasiGreens::series_coeff(int l, const Vec3& x, bool with_grad) const {
  if (l < 0 || l + 2 > LatticeSums::kMaxP)
    throw ValidationError("series coefficient order out of range");
  Vec3 y;
  const cplx ph = reduce_cell(x, sums_.alpha(), d_, y);
  const auto v = sums_.eval(y, with_grad, false, l + 2);
  Entry e;
  e.has_grad = with_grad;
  const Mat3c id = ident_d(d_);
  const double sc = std::pow(mat_.mu, -(l + 1));
  const double cl = sc - std::pow(mat_.lambda + 2.0 * mat_.mu, -(l + 1));
  e.G = -sc * v.lam[l + 1] * id + cl * v.dyad[l + 2];
  if (with_grad)
    for (int m = 0; m < d_; ++m)
      e.dG[m] = -sc * v.grad_lam[l + 1][m] * id + cl * v.grad_dyad[l + 2][m];
  scale_entry(e, ph, d_);
  return e;
}

bool QuasiGreens::series_preferred(cplx k) const {
  return std::abs(k) <= 0.1 * sums_.min_xi_norm();
}

void QuasiGreens::check_dynamic_window(cplx k) const {
  if (std::abs(k) / std::sqrt(mat_.mu) >= 0.5 * sums_.min_xi_norm())
    throw PhysicsError("wavenumber outside the subwavelength window for this alpha");
}

QuasiGreens::Entry QuasiGreens::quasi_dynamic_direct(const Vec3& x, cplx k, int terms,
                                                     bool with_grad) const {
  if (terms < 0 || terms + 2 > LatticeSums::kMaxP)
    throw ValidationError("series order out of range");
  check_dynamic_window(k);
  Vec3 y;
  const cplx ph = reduce_cell(x, sums_.alpha(), d_, y);
  const cplx k2 = k * k;
  const cplx ks = k2 / mat_.mu, kp = k2 / (mat_.lambda + 2.0 * mat_.mu);
  const auto v = sums_.eval(y, with_grad, false, terms + 2);
  Entry e = compose(v, terms, k2, with_grad);
  const auto t = sums_.tails(y, ks, kp, terms, with_grad);
  const Mat3c id = ident_d(d_);
  e.G += inv_mu_ * t.scalar * id + b_ * t.dyad;
  if (with_grad)
    for (int m = 0; m < d_; ++m)
      e.dG[m] += inv_mu_ * t.grad_scalar[m] * id + b_ * t.grad_dyad[m];
  scale_entry(e, ph, d_);
  return e;
}

QuasiGreens::Entry QuasiGreens::quasi_dynamic_series(const Vec3& x, cplx k,
                                                     bool with_grad) const {
  check_dynamic_window(k);
  Vec3 y;
  const cplx ph = reduce_cell(x, sums_.alpha(), d_, y);
  const int L = LatticeSums::kMaxP - 2;
  const cplx k2 = k * k;
  // truncation estimate: terms decay like (|k|^2/mu / E_min)^l
  const double rho = std::abs(k2) * inv_mu_ / sums_.min_E();
  if (rho >= 1.0 || std::pow(rho, L + 1) / (1.0 - rho) > sums_.config().target_tol)
    throw WindowError("wavenumber too large for the truncated series");
  const auto v = sums_.eval(y, with_grad, false, L + 2);
  Entry e = compose(v, L, k2, with_grad);
  scale_entry(e, ph, d_);
  return e;
}

QuasiGreens::Entry QuasiGreens::quasi_dynamic(const Vec3& x, cplx k,
                                              bool with_grad) const {
  if (std::abs(k) == 0.0) return quasi_static(x, with_grad);
  check_dynamic_window(k);
  const double rho = std::abs(k * k) * inv_mu_ / sums_.min_E();
  const int L = LatticeSums::kMaxP - 2;
  if (series_preferred(k) &&
      std::pow(rho, L + 1) / (1.0 - rho) <= sums_.config().target_tol)
    return quasi_dynamic_series(x, k, with_grad);
  return quasi_dynamic_direct(x, k, 2, with_grad);
}

QuasiGreens::Entry QuasiGreens::smooth_remainder(const Vec3& x, bool with_grad) const {
  // R = -(1/mu) (Lambda_1 - s1) delta + b (D_2 - s2); the subtracted pieces
  // reassemble exactly into G^0
  const auto v = sums_.eval(x, with_grad, true, 2);
  Entry e;
  e.has_grad = with_grad;
  const Mat3c id = ident_d(d_);
  e.G = -inv_mu_ * v.lam[1] * id + b_ * v.dyad[2];
  if (with_grad)
    for (int m = 0; m < d_; ++m)
      e.dG[m] = -inv_mu_ * v.grad_lam[1][m] * id + b_ * v.grad_dyad[2][m];
  return e;
}

QuasiGreens::Entry QuasiGreens::smooth_dynamic(const Vec3& x, cplx k,
                                               bool with_grad) const {
  if (std::abs(k) == 0.0) return smooth_remainder(x, with_grad);
  check_dynamic_window(k);
  double r2 = x[0] * x[0] + x[1] * x[1];
  if (d_ == 3) r2 += x[2] * x[2];

  const cplx k2 = k * k;
  const cplx ks = k2 / mat_.mu, kp = k2 / (mat_.lambda + 2.0 * mat_.mu);
  // deep in the subwavelength window the truncated series alone already
  // meets the tolerance; then no k-dependent tail sum is needed and the
  // lattice work is shareable across frequencies
  const double rho_ser = std::abs(k2) * inv_mu_ / sums_.min_E();
  const bool pure_series =
      series_preferred(k) && rho_ser < 1.0 &&
      std::pow(rho_ser, LatticeSums::kMaxP - 1) / (1.0 - rho_ser) <=
          sums_.config().target_tol;
  const int L = pure_series ? LatticeSums::kMaxP - 2 : 2;
  const auto v = sums_.eval(x, with_grad, true, L + 2);
  Entry e;
  e.has_grad = with_grad;
  const Mat3c id = ident_d(d_);
  // l = 0 term with the free static kernel removed, then the smooth l >= 1
  // terms and the exact dynamic tails
  e.G = -inv_mu_ * v.lam[1] * id + b_ * v.dyad[2];
  cplx k2l = 1.0;
  for (int l = 1; l <= L; ++l) {
    k2l *= k2;
    const double sc = std::pow(mat_.mu, -(l + 1));
    const double cl = sc - std::pow(mat_.lambda + 2.0 * mat_.mu, -(l + 1));
    e.G += k2l * (-sc * v.lam[l + 1] * id + cl * v.dyad[l + 2]);
  }
  LatticeSums::Tails t;
  if (!pure_series) t = sums_.tails(x, ks, kp, L, with_grad);
  e.G += inv_mu_ * t.scalar * id + b_ * t.dyad;
  if (with_grad) {
    for (int m = 0; m < d_; ++m) {
      e.dG[m] = -inv_mu_ * v.grad_lam[1][m] * id + b_ * v.grad_dyad[2][m];
      cplx kl = 1.0;
      for (int l = 1; l <= L; ++l) {
        kl *= k2;
        const double sc = std::pow(mat_.mu, -(l + 1));
        const double cl = sc - std::pow(mat_.lambda + 2.0 * mat_.mu, -(l + 1));
        e.dG[m] += kl * (-sc * v.grad_lam[l + 1][m] * id + cl * v.grad_dyad[l + 2][m]);
      }
      e.dG[m] += inv_mu_ * t.grad_scalar[m] * id + b_ * t.grad_dyad[m];
    }
  }

  // so far e = G^{alpha,k} - G^0; still need -(G^k - G^0)
  if (r2 < 1e-12) {
    e.G -= green_dynamic_static_gap0(k, mat_, d_);
    // the gap is even in x, so its gradient vanishes at 0
  } else {
    e.G -= green_free_dynamic(x, k, mat_, d_) - green_free_static(x, mat_, d_);
    if (with_grad) {
      Mat3c gd[3], gs[3];
      green_free_dynamic_grad(x, k, mat_, d_, gd);
      green_free_static_grad(x, mat_, d_, gs);
      for (int m = 0; m < d_; ++m) e.dG[m] -= gd[m] - gs[m];
    }
  }
  return e;
}

Mat3c QuasiGreens::quasi_static_verified(const Vec3& x) const {
  const Mat3c G = quasi_static(x).G;
  if (!sums_check_) {
    LatticeSumConfig cfg = sums_.config();
    cfg.split_parameter = 0.0;
    cfg.fourier_truncation *= 2;
    cfg.spatial_truncation *= 2;
    sums_check_ = std::make_unique<LatticeSums>(q_, cfg);
  }
  Vec3 y;
  const cplx ph = reduce_cell(x, sums_.alpha(), d_, y);
  const auto v = sums_check_->eval(y, false, false, 2);
  const Mat3c G2 = ph * (-inv_mu_ * v.lam[1] * ident_d(d_) + b_ * v.dyad[2]);
  const double diff = (G - G2).cwiseAbs().maxCoeff();
  if (diff >= sums_.config().target_tol)
    throw AccuracyError("quasi-static kernel failed the truncation-doubling check");
  return G;
}

Mat3c QuasiGreens::quasi_static_regularized(const Vec3& x, double sigma) const {
  Vec3 y;
  const cplx ph = reduce_cell(x, sums_.alpha(), d_, y);
  const Mat3c id = ident_d(d_);
  auto level = [&](double s) -> Mat3c {
    const auto v = sums_.eval_regularized(y, s, 2);
    return -inv_mu_ * v.lam[1] * id + b_ * v.dyad[2];
  };
  // two Richardson levels in the regulator remove the O(sigma) and
  // O(sigma^2) bias of the Gaussian damping
  const Mat3c v0 = level(sigma), v1 = level(0.5 * sigma), v2 = level(0.25 * sigma);
  const Mat3c r1a = 2.0 * v1 - v0, r1b = 2.0 * v2 - v1;
  return ph * ((4.0 * r1b - r1a) / 3.0);
}

}  // namespace pcband
