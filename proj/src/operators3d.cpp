#include <cmath>

#include "assembly_detail.hpp"
#include "pcband/greens.hpp"
#include "pcband/operators.hpp"
#include "sphere_quadrature.hpp"

namespace pcband {
namespace detail {
namespace {

// Sphere assembly by rotated-pole quadrature: for each target the polar axis
// is rotated onto the node, where r = 2R sin(theta'/2) makes the weakly
// singular kernels smooth after the sin(theta') Jacobian. Densities move to
// the rotated grid through spherical-harmonic interpolation. Quasi-periodic
// kernels split as free kernel + smooth remainder; the remainder uses the
// plain product rule.
LayerOperatorMatrix assemble_3d(LayerOperatorMatrix::Kind kind,
                                const BoundaryDiscretization& disc,
                                const std::optional<QuasiMomentum>& alpha,
                                cplx k, const LameMaterial& mat,
                                const LatticeSumConfig& cfg) {
  if (disc.d != 3 || disc.shape.kind != ShapeSpec::Kind::Sphere)
    throw ValidationError("3D assembly supports sphere boundaries only");
  if (!validate_convexity(mat, 3)) throw ValidationError("material not convex");
  const int N = disc.N, nt = disc.ntheta, np = disc.nphi;
  const double R = disc.shape.radius;
  const bool dynamic = std::abs(k) != 0.0;
  const bool traction = kind == LayerOperatorMatrix::Kind::NeumannPoincare;

  LayerOperatorMatrix out;
  out.kind = kind;
  out.free_space = !alpha.has_value();
  if (alpha) out.alpha = alpha->alpha;
  out.k = k;
  out.d = 3;
  out.N = N;
  out.entries = MatXc::Zero(3 * N, 3 * N);

  // local-frame quadrature template: Gauss in theta' on [0, pi] (not in
  // cos theta', so that sin(theta')/r stays smooth), uniform in phi'
  std::vector<double> g, wg;
  gauss_legendre(nt, g, wg);
  const double dphi = 2.0 * kPi / np;
  const int nrot = nt * np;
  std::vector<Vec3> edir(nrot);
  std::vector<double> wrot(nrot);
  for (int q = 0; q < nt; ++q) {
    const double th = 0.5 * kPi * (g[q] + 1.0);
    const double w = 0.5 * kPi * wg[q] * std::sin(th) * R * R * dphi;
    for (int p = 0; p < np; ++p) {
      const double ph = p * dphi;
      edir[q * np + p] =
          Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
      wrot[q * np + p] = w;
    }
  }

  const SphereInterp interp(disc);
  const MatXc analysisT = interp.analysis.transpose();

  MatXc syn(nrot, interp.ncoef), kw(nrot, 9);
  VecXc row(interp.ncoef);
  for (int i = 0; i < N; ++i) {
    const Vec3 nh = disc.normals[i];
    const Vec3 ref = std::abs(nh[2]) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
    const Vec3 t1 = nh.cross(ref).normalized();
    const Vec3 t2 = nh.cross(t1);
    for (int qp = 0; qp < nrot; ++qp) {
      const Vec3& e = edir[qp];
      const Vec3 y = R * (e[0] * t1 + e[1] * t2 + e[2] * nh);
      const double ct = std::clamp(y[2] / R, -1.0, 1.0);
      interp.basis_row(std::acos(ct), std::atan2(y[1], y[0]), row);
      syn.row(qp) = row;
      const Vec3 z = disc.nodes[i] - y;
      Mat3c K;
      if (traction) {
        Mat3c grad[3];
        if (dynamic)
          green_free_dynamic_grad(z, k, mat, 3, grad);
        else
          green_free_static_grad(z, mat, 3, grad);
        K = traction_from_gradient(nh, grad, mat, 3);
      } else {
        K = dynamic ? green_free_dynamic(z, k, mat, 3) : green_free_static(z, mat, 3);
      }
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) kw(qp, 3 * a + b) = wrot[qp] * K(a, b);
    }
    const MatXc acc = analysisT * (syn.transpose() * kw);  // N x 9
    for (int j = 0; j < N; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out.entries(3 * i + a, 3 * j + b) = acc(j, 3 * a + b);
  }

  // Rank completion: the rotated-pole path only sees the band-limited part of
  // the density, so route the interpolation residual (I - Pi) through the
  // plain product rule (zero diagonal). Spectrally small for smooth data,
  // keeps the matrix invertible.
  {
    MatXc syng(N, interp.ncoef);
    for (int n = 0; n < N; ++n) {
      interp.basis_row(disc.theta[n], disc.phi[n], row);
      syng.row(n) = row;
    }
    const MatXc proj = syng * interp.analysis;  // N x N grid projector
    MatXc resid3 = MatXc::Zero(3 * N, 3 * N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const cplx r = (i == j ? 1.0 : 0.0) - proj(i, j);
        for (int a = 0; a < 3; ++a) resid3(3 * i + a, 3 * j + a) = r;
      }
    MatXc plain = MatXc::Zero(3 * N, 3 * N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        const Vec3 z = disc.nodes[i] - disc.nodes[j];
        Mat3c K;
        if (traction) {
          Mat3c grad[3];
          if (dynamic)
            green_free_dynamic_grad(z, k, mat, 3, grad);
          else
            green_free_static_grad(z, mat, 3, grad);
          K = traction_from_gradient(disc.normals[i], grad, mat, 3);
        } else {
          K = dynamic ? green_free_dynamic(z, k, mat, 3)
                      : green_free_static(z, mat, 3);
        }
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            plain(3 * i + a, 3 * j + b) = disc.weights[j] * K(a, b);
      }
    out.entries += plain * resid3;
  }

  if (alpha) {
    QuasiGreens qg(mat, *alpha, cfg);
    if (dynamic) qg.check_dynamic_window(k);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const Vec3 x = disc.nodes[i] - disc.nodes[j];
        const auto e = dynamic ? qg.smooth_dynamic(x, k, traction)
                               : qg.smooth_remainder(x, traction);
        const Mat3c K =
            traction ? traction_from_gradient(disc.normals[i], e.dG, mat, 3) : e.G;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            out.entries(3 * i + a, 3 * j + b) += disc.weights[j] * K(a, b);
      }
  }
  return out;
}

}  // namespace

LayerOperatorMatrix assemble_single_layer_3d(const BoundaryDiscretization& disc,
                                             const std::optional<QuasiMomentum>& alpha,
                                             cplx k, const LameMaterial& mat,
                                             const LatticeSumConfig& cfg) {
  return assemble_3d(LayerOperatorMatrix::Kind::SingleLayer, disc, alpha, k, mat, cfg);
}

LayerOperatorMatrix assemble_neumann_poincare_3d(const BoundaryDiscretization& disc,
                                                 const std::optional<QuasiMomentum>& alpha,
                                                 cplx k, const LameMaterial& mat,
                                                 const LatticeSumConfig& cfg) {
  return assemble_3d(LayerOperatorMatrix::Kind::NeumannPoincare, disc, alpha, k, mat, cfg);
}

}  // namespace detail
}  // namespace pcband
