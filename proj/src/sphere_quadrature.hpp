#pragma once

// internal: spherical-harmonic interpolation on the Gauss x uniform sphere
// grid, used by the rotated-pole singular quadrature

#include <vector>

#include "pcband/boundary.hpp"
#include "pcband/core.hpp"

namespace pcband {
namespace detail {

// fully normalized associated Legendre values Pbar_l^m(x) for 0 <= m <= l <= L,
// flattened as P[l*(l+1)/2 + m]; int over [-1,1] of Pbar^2 = 1/(2 pi)
void legendre_table(int L, double x, std::vector<double>& P);

inline int sh_index(int l, int m) { return l * l + l + m; }

// basis B_{lm}(theta, phi) = Pbar_l^{|m|}(cos theta) e^{i m phi}; orthonormal
// on the unit sphere
struct SphereInterp {
  int L = 0;      // band limit = ntheta - 1
  int ncoef = 0;  // (L + 1)^2
  MatXc analysis;  // ncoef x N, exact for band-limited nodal data

  explicit SphereInterp(const BoundaryDiscretization& disc);

  // row of basis values at one direction, length ncoef
  void basis_row(double theta, double phi, VecXc& row) const;
};

}  // namespace detail
}  // namespace pcband
