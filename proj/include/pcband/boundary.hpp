#pragma once

#include <vector>

#include "pcband/core.hpp"

namespace pcband {

// Inclusion shapes supported by the solver: smooth closed trigonometric
// curves in 2D (circle and ellipse are special cases), spheres in 3D. The
// unit cell is [-1/2, 1/2)^d; shapes are centered at the origin.
struct ShapeSpec {
  enum class Kind { Circle, Ellipse, FourierCurve, Sphere };
  Kind kind = Kind::Circle;
  double radius = 0.25;  // circle / sphere
  double ax = 0.3, by = 0.2;  // ellipse semi-axes
  // FourierCurve: x_c(t) = sum_m ccos[c][m] cos(mt) + csin[c][m] sin(mt)
  std::vector<double> ccos[2], csin[2];

  static ShapeSpec circle(double r);
  static ShapeSpec ellipse(double a, double b);
  static ShapeSpec sphere(double r);
  static ShapeSpec fourier(std::vector<double> c0c, std::vector<double> c0s,
                           std::vector<double> c1c, std::vector<double> c1s);
  int dimension() const { return kind == Kind::Sphere ? 3 : 2; }
};

struct BoundaryDiscretization {
  int d = 2;
  ShapeSpec shape;
  int N = 0;  // node count
  std::vector<Vec3> nodes;
  std::vector<Vec3> normals;
  std::vector<double> weights;

  // 2D Nystrom data: parameter values and curve derivatives
  std::vector<double> t;
  std::vector<Vec3> dx, ddx;
  std::vector<double> speed;  // |x'(t)|

  // 3D product-grid data
  int ntheta = 0, nphi = 0;
  std::vector<double> theta, phi;

  double boundary_measure() const;  // sum of weights
};

// 2D: N equispaced parameter nodes (N >= 16, even). 3D sphere: N is the
// polar Gauss-Legendre count (4 <= N <= 64), the grid is N x 2N.
BoundaryDiscretization discretize_boundary(const ShapeSpec& shape, int N);

// |D| via the divergence theorem, (1/d) contour integral of x . nu
double inclusion_measure(const BoundaryDiscretization& disc);

// Gauss-Legendre nodes/weights on [-1, 1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace pcband
