#pragma once

#include <memory>

#include "pcband/core.hpp"
#include "pcband/lattice.hpp"
#include "pcband/materials.hpp"

namespace pcband {

// Free-space elastodynamic fundamental solutions. Only the leading d x d
// block of the returned matrices is populated; x must be nonzero.
Mat3c green_free_static(const Vec3& x, const LameMaterial& m, int d);
void green_free_static_grad(const Vec3& x, const LameMaterial& m, int d, Mat3c grad[3]);
Mat3c green_free_dynamic(const Vec3& x, cplx k, const LameMaterial& m, int d);
void green_free_dynamic_grad(const Vec3& x, cplx k, const LameMaterial& m, int d, Mat3c grad[3]);

// lim_{x->0} [G^k(x) - G^0(x)]; diagonal closed form, k != 0
Mat3c green_dynamic_static_gap0(cplx k, const LameMaterial& m, int d);

// Quasi-periodic kernels for one (material, quasi-momentum) pair, built on
// Ewald-accelerated lattice sums. Entry carries the value and, when
// requested, Cartesian gradients.
class QuasiGreens {
 public:
  struct Entry {
    Mat3c G = Mat3c::Zero();
    Mat3c dG[3] = {Mat3c::Zero(), Mat3c::Zero(), Mat3c::Zero()};
    bool has_grad = false;
  };

  QuasiGreens(const LameMaterial& m, const QuasiMomentum& q, LatticeSumConfig cfg = {});

  // G^{alpha,0}(x); x reduced into the unit cell with the Bloch factor
  Entry quasi_static(const Vec3& x, bool with_grad = false) const;

  // coefficient G_l of the k^{2l} expansion, l in [0, 3]
  Entry series_coeff(int l, const Vec3& x, bool with_grad = false) const;

  // G^{alpha,k}(x); k = 0 delegates to quasi_static. Chooses between the
  // truncated power series and the exact tail-corrected composition.
  Entry quasi_dynamic(const Vec3& x, cplx k, bool with_grad = false) const;
  Entry quasi_dynamic_direct(const Vec3& x, cplx k, int terms, bool with_grad = false) const;
  Entry quasi_dynamic_series(const Vec3& x, cplx k, bool with_grad = false) const;

  // R(x) = G^{alpha,0}(x) - G^0(x); smooth through x = 0
  Entry smooth_remainder(const Vec3& x, bool with_grad = false) const;

  // G^{alpha,k}(x) - G^k(x); smooth through x = 0
  Entry smooth_dynamic(const Vec3& x, cplx k, bool with_grad = false) const;

  // quasi_static value cross-checked against doubled truncations; throws
  // AccuracyError if entries move by more than target_tol
  Mat3c quasi_static_verified(const Vec3& x) const;

  // regulator-extrapolated plain Fourier sum (independent slow path)
  Mat3c quasi_static_regularized(const Vec3& x, double sigma = 4e-4) const;

  bool series_preferred(cplx k) const;
  void check_dynamic_window(cplx k) const;

  const LatticeSums& sums() const { return sums_; }
  const LameMaterial& material() const { return mat_; }
  int dimension() const { return d_; }

 private:
  Entry compose(const LatticeSums::Values& v, int lmax, cplx k2, bool with_grad) const;

  LameMaterial mat_;
  QuasiMomentum q_;
  int d_;
  double inv_mu_, b_;  // 1/mu and 1/mu - 1/(lambda+2mu)
  LatticeSums sums_;
  mutable std::unique_ptr<LatticeSums> sums_check_;
};

}  // namespace pcband
