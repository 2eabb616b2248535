#include "pcband/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace pcband {

ShapeSpec ShapeSpec::circle(double r) {
  ShapeSpec s;
  s.kind = Kind::Circle;
  s.radius = r;
  return s;
}

ShapeSpec ShapeSpec::ellipse(double a, double b) {
  ShapeSpec s;
  s.kind = Kind::Ellipse;
  s.ax = a;
  s.by = b;
  return s;
}

ShapeSpec ShapeSpec::sphere(double r) {
  ShapeSpec s;
  s.kind = Kind::Sphere;
  s.radius = r;
  return s;
}

ShapeSpec ShapeSpec::fourier(std::vector<double> c0c, std::vector<double> c0s,
                             std::vector<double> c1c, std::vector<double> c1s) {
  ShapeSpec s;
  s.kind = Kind::FourierCurve;
  s.ccos[0] = std::move(c0c);
  s.csin[0] = std::move(c0s);
  s.ccos[1] = std::move(c1c);
  s.csin[1] = std::move(c1s);
  return s;
}

double BoundaryDiscretization::boundary_measure() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev estimate
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

namespace {

// curve point and first two derivatives at parameter t
void curve_eval(const ShapeSpec& s, double t, Vec3& x, Vec3& dx, Vec3& ddx) {
  x = dx = ddx = Vec3::Zero();
  const double c = std::cos(t), sn = std::sin(t);
  switch (s.kind) {
    case ShapeSpec::Kind::Circle:
      x = Vec3(s.radius * c, s.radius * sn, 0.0);
      dx = Vec3(-s.radius * sn, s.radius * c, 0.0);
      ddx = -x;
      break;
    case ShapeSpec::Kind::Ellipse:
      x = Vec3(s.ax * c, s.by * sn, 0.0);
      dx = Vec3(-s.ax * sn, s.by * c, 0.0);
      ddx = -x;
      break;
    case ShapeSpec::Kind::FourierCurve:
      for (int cc = 0; cc < 2; ++cc) {
        for (std::size_t m = 0; m < s.ccos[cc].size(); ++m) {
          const double cm = std::cos(m * t);
          x[cc] += s.ccos[cc][m] * cm;
          dx[cc] += -s.ccos[cc][m] * m * std::sin(m * t);
          ddx[cc] += -s.ccos[cc][m] * m * m * cm;
        }
        for (std::size_t m = 0; m < s.csin[cc].size(); ++m) {
          const double sm = std::sin(m * t);
          x[cc] += s.csin[cc][m] * sm;
          dx[cc] += s.csin[cc][m] * m * std::cos(m * t);
          ddx[cc] += -s.csin[cc][m] * m * m * sm;
        }
      }
      break;
    default:
      throw GeometryError("not a 2D curve");
  }
}

void check_cell_margin(const BoundaryDiscretization& disc) {
  for (const Vec3& p : disc.nodes)
    for (int c = 0; c < disc.d; ++c)
      if (std::abs(p[c]) > 0.5 - 1e-3)
        throw GeometryError("inclusion touches the unit cell boundary (margin < 1e-3)");
}

BoundaryDiscretization discretize_curve(const ShapeSpec& shape, int N) {
  if (N < 16 || N % 2 != 0)
    throw GeometryError("2D discretization requires even N >= 16");
  BoundaryDiscretization disc;
  disc.d = 2;
  disc.shape = shape;
  disc.N = N;
  disc.nodes.resize(N);
  disc.normals.resize(N);
  disc.weights.resize(N);
  disc.t.resize(N);
  disc.dx.resize(N);
  disc.ddx.resize(N);
  disc.speed.resize(N);
  const double h = 2.0 * kPi / N;
  for (int i = 0; i < N; ++i) {
    disc.t[i] = i * h;
    curve_eval(shape, disc.t[i], disc.nodes[i], disc.dx[i], disc.ddx[i]);
    const double sp = std::hypot(disc.dx[i][0], disc.dx[i][1]);
    if (sp < 1e-12) throw GeometryError("degenerate parametrization (|x'| = 0)");
    disc.speed[i] = sp;
    disc.weights[i] = h * sp;
    disc.normals[i] = Vec3(disc.dx[i][1] / sp, -disc.dx[i][0] / sp, 0.0);
  }
  // orientation: the divergence theorem with outward normals must give a
  // positive measure; flip if the curve runs clockwise
  double meas = 0.0;
  for (int i = 0; i < N; ++i)
    meas += disc.weights[i] * disc.nodes[i].head<2>().dot(disc.normals[i].head<2>());
  if (meas < 0.0)
    for (int i = 0; i < N; ++i) disc.normals[i] = -disc.normals[i];
  if (std::abs(meas) < 1e-12) throw GeometryError("degenerate curve (zero area)");
  // coarse self-intersection guard: distinct nodes must not collide
  for (int i = 0; i < N; ++i)
    for (int j = i + 2; j < N; ++j) {
      if (i == 0 && j == N - 1) continue;
      if ((disc.nodes[i] - disc.nodes[j]).norm() < 1e-9)
        throw GeometryError("curve self-intersects");
    }
  check_cell_margin(disc);
  return disc;
}

BoundaryDiscretization discretize_sphere(const ShapeSpec& shape, int ntheta) {
  if (ntheta < 4 || ntheta > 64)
    throw GeometryError("sphere discretization requires polar count in [4, 64]");
  const double r = shape.radius;
  if (r <= 0.0) throw GeometryError("sphere radius must be positive");
  BoundaryDiscretization disc;
  disc.d = 3;
  disc.shape = shape;
  disc.ntheta = ntheta;
  disc.nphi = 2 * ntheta;
  disc.N = ntheta * disc.nphi;
  std::vector<double> u, wu;
  gauss_legendre(ntheta, u, wu);  // u = cos(theta)
  const double dphi = 2.0 * kPi / disc.nphi;
  disc.nodes.reserve(disc.N);
  for (int q = 0; q < ntheta; ++q) {
    const double th = std::acos(u[q]);
    const double st = std::sin(th);
    for (int p = 0; p < disc.nphi; ++p) {
      const double ph = p * dphi;
      const Vec3 n(st * std::cos(ph), st * std::sin(ph), u[q]);
      disc.nodes.push_back(r * n);
      disc.normals.push_back(n);
      disc.weights.push_back(r * r * wu[q] * dphi);
      disc.theta.push_back(th);
      disc.phi.push_back(ph);
    }
  }
  check_cell_margin(disc);
  return disc;
}

}  // namespace

BoundaryDiscretization discretize_boundary(const ShapeSpec& shape, int N) {
  if (shape.kind == ShapeSpec::Kind::Sphere) return discretize_sphere(shape, N);
  return discretize_curve(shape, N);
}

double inclusion_measure(const BoundaryDiscretization& disc) {
  double meas = 0.0;
  for (int i = 0; i < disc.N; ++i)
    meas += disc.weights[i] * disc.nodes[i].dot(disc.normals[i]);
  meas /= disc.d;
  if (meas <= 0.0) throw GeometryError("non-positive inclusion measure");
  return meas;
}

}  // namespace pcband
