#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "assembly_detail.hpp"
#include "pcband/operators.hpp"

namespace pcband {

LayerOperatorMatrix assemble_single_layer(const BoundaryDiscretization& disc,
                                          const std::optional<QuasiMomentum>& alpha,
                                          cplx k, const LameMaterial& mat,
                                          const LatticeSumConfig& cfg) {
  if (alpha && alpha->d != disc.d)
    throw ValidationError("quasi-momentum dimension mismatch");
  if (disc.d == 2) return detail::assemble_single_layer_2d(disc, alpha, k, mat, cfg);
  return detail::assemble_single_layer_3d(disc, alpha, k, mat, cfg);
}

LayerOperatorMatrix assemble_neumann_poincare(const BoundaryDiscretization& disc,
                                              const std::optional<QuasiMomentum>& alpha,
                                              cplx k, const LameMaterial& mat,
                                              const LatticeSumConfig& cfg) {
  if (alpha && alpha->d != disc.d)
    throw ValidationError("quasi-momentum dimension mismatch");
  if (disc.d == 2) return detail::assemble_neumann_poincare_2d(disc, alpha, k, mat, cfg);
  return detail::assemble_neumann_poincare_3d(disc, alpha, k, mat, cfg);
}

namespace {

struct Factorization {
  Eigen::PartialPivLU<MatXc> lu;
  const MatXc* A;
};

Factorization factorize(const LayerOperatorMatrix& S) {
  if (!S.entries.allFinite()) throw AccuracyError("operator matrix has non-finite entries");
  Factorization f{Eigen::PartialPivLU<MatXc>(S.entries), &S.entries};
  if (f.lu.rcond() < 1e-12)
    throw AccuracyError("layer operator too ill-conditioned (cond > 1e12)");
  return f;
}

VecXc refine_solve(const Factorization& f, const VecXc& rhs) {
  VecXc x = f.lu.solve(rhs);
  // one step of iterative refinement
  x += f.lu.solve(rhs - (*f.A) * x);
  return x;
}

}  // namespace

VecXc layer_solve(const LayerOperatorMatrix& S, const VecXc& rhs) {
  if (rhs.size() != S.entries.rows()) throw ValidationError("rhs size mismatch");
  return refine_solve(factorize(S), rhs);
}

std::vector<VecXc> solve_density_for_constants(const LayerOperatorMatrix& S) {
  if (S.kind != LayerOperatorMatrix::Kind::SingleLayer)
    throw ValidationError("density solve requires a single-layer matrix");
  const auto f = factorize(S);
  const int d = S.d, N = S.N;
  std::vector<VecXc> phis;
  for (int i = 0; i < d; ++i) {
    VecXc rhs = VecXc::Zero(d * N);
    for (int n = 0; n < N; ++n) rhs[d * n + i] = 1.0;
    phis.push_back(refine_solve(f, rhs));
  }
  return phis;
}

VecXc dtn_apply(const BoundaryDiscretization& disc, const QuasiMomentum& alpha,
                const LameMaterial& mat, const VecXc& f,
                const LatticeSumConfig& cfg) {
  if (alpha.near_zero) throw ValidationError("DtN map requires alpha away from zero");
  const auto S = assemble_single_layer(disc, alpha, 0.0, mat, cfg);
  const auto K = assemble_neumann_poincare(disc, alpha, 0.0, mat, cfg);
  const VecXc phi = layer_solve(S, f);
  return 0.5 * phi + K.entries * phi;
}

QAlphaMatrix compute_Q_alpha(const BoundaryDiscretization& disc,
                             const std::optional<QuasiMomentum>& alpha,
                             const LameMaterial& mat,
                             const LatticeSumConfig& cfg) {
  if (alpha && alpha->near_zero)
    throw ValidationError("Q^alpha requires alpha away from zero");
  const auto S = assemble_single_layer(disc, alpha, 0.0, mat, cfg);
  const auto phis = solve_density_for_constants(S);
  const int d = disc.d, N = disc.N;

  QAlphaMatrix qm;
  qm.free_space = !alpha.has_value();
  if (alpha) qm.alpha = alpha->alpha;
  qm.d = d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cplx s = 0.0;
      for (int n = 0; n < N; ++n) s += disc.weights[n] * phis[i][d * n + j];
      qm.Q(i, j) = -s;
    }

  qm.hermitian_defect = (qm.Q - qm.Q.adjoint()).cwiseAbs().maxCoeff();
  if (qm.hermitian_defect > kHermitianTol)
    throw AccuracyError("Q matrix fails the Hermitian check");
  qm.Q = 0.5 * (qm.Q + Mat3c(qm.Q.adjoint()));

  Eigen::MatrixXcd Qd = qm.Q.topLeftCorner(d, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Qd);
  for (int i = 0; i < d; ++i) qm.beta[i] = es.eigenvalues()[i];  // ascending
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXcd v = es.eigenvectors().col(i);
    // deterministic sign: first non-negligible component positive real
    for (int c = 0; c < d; ++c)
      if (std::abs(v[c]) > 1e-10) {
        v *= std::abs(v[c]) / v[c];
        break;
      }
    for (int c = 0; c < d; ++c) qm.h(c, i) = v[c];
  }
  if (qm.beta[0] <= 0.0)
    throw PhysicsError("Q matrix is not positive definite (discretization failure)");
  return qm;
}

std::vector<Vec3c> exterior_field(const BoundaryDiscretization& disc,
                                  const QuasiMomentum& alpha, cplx k,
                                  const LameMaterial& mat, const VecXc& trace,
                                  const std::vector<Vec3>& points,
                                  const LatticeSumConfig& cfg) {
  const int d = disc.d, N = disc.N;
  // near-field exclusion: 2x local node spacing
  for (const Vec3& p : points) {
    double dist = 1e300, spacing = 0.0;
    for (int n = 0; n < N; ++n) {
      const double dn = (p - disc.nodes[n]).norm();
      if (dn < dist) {
        dist = dn;
        spacing = d == 2 ? disc.weights[n] / 1.0 : std::sqrt(disc.weights[n]);
      }
    }
    if (dist < 2.0 * spacing)
      throw GeometryError("evaluation point too close to the boundary");
  }
  const auto S = assemble_single_layer(disc, alpha, k, mat, cfg);
  const VecXc phi = layer_solve(S, trace);
  QuasiGreens qg(mat, alpha, cfg);
  const bool dynamic = std::abs(k) != 0.0;

  std::vector<Vec3c> out;
  out.reserve(points.size());
  for (const Vec3& p : points) {
    Vec3c u = Vec3c::Zero();
    for (int n = 0; n < N; ++n) {
      const Vec3 y = p - disc.nodes[n];
      const Mat3c G = dynamic ? qg.quasi_dynamic(y, k).G : qg.quasi_static(y).G;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          u[a] += disc.weights[n] * G(a, b) * phi[d * n + b];
    }
    out.push_back(u);
  }
  return out;
}

}  // namespace pcband
