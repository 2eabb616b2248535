#include "sphere_quadrature.hpp"

#include <cmath>

#include "pcband/core.hpp"

namespace pcband {
namespace detail {

void legendre_table(int L, double x, std::vector<double>& P) {
  const int n = (L + 1) * (L + 2) / 2;
  P.assign(n, 0.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  auto at = [&P](int l, int m) -> double& { return P[l * (l + 1) / 2 + m]; };
  at(0, 0) = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 1; m <= L; ++m)
    at(m, m) = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * at(m - 1, m - 1);
  for (int m = 0; m < L; ++m)
    at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * at(m, m);
  for (int m = 0; m <= L; ++m)
    for (int l = m + 2; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      const double b =
          std::sqrt((double(l - 1) * (l - 1) - double(m) * m) /
                    (4.0 * double(l - 1) * (l - 1) - 1.0));
      at(l, m) = a * (x * at(l - 1, m) - b * at(l - 2, m));
    }
}

SphereInterp::SphereInterp(const BoundaryDiscretization& disc) {
  if (disc.d != 3) throw ValidationError("sphere interpolation needs a 3D grid");
  L = disc.ntheta - 1;
  ncoef = (L + 1) * (L + 1);
  const double r2 = disc.shape.radius * disc.shape.radius;
  analysis.resize(ncoef, disc.N);
  std::vector<double> P;
  VecXc row(ncoef);
  for (int n = 0; n < disc.N; ++n) {
    basis_row(disc.theta[n], disc.phi[n], row);
    // surface weights include r^2; analysis integrates over the unit sphere
    analysis.col(n) = (disc.weights[n] / r2) * row.conjugate();
  }
}

void SphereInterp::basis_row(double theta, double phi, VecXc& row) const {
  row.resize(ncoef);
  std::vector<double> P;
  legendre_table(L, std::cos(theta), P);
  for (int l = 0; l <= L; ++l)
    for (int m = -l; m <= l; ++m) {
      const double p = P[l * (l + 1) / 2 + std::abs(m)];
      row[sh_index(l, m)] = p * std::exp(cplx(0.0, m * phi));
    }
}

}  // namespace detail
}  // namespace pcband
