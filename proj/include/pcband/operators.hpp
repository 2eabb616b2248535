#pragma once

#include <optional>
#include <vector>

#include "pcband/boundary.hpp"
#include "pcband/core.hpp"
#include "pcband/greens.hpp"

namespace pcband {

struct LayerOperatorMatrix {
  enum class Kind { SingleLayer, NeumannPoincare };
  Kind kind = Kind::SingleLayer;
  bool free_space = false;  // no quasi-periodic correction
  Vec3 alpha = Vec3::Zero();
  cplx k = 0.0;
  int d = 2;
  int N = 0;
  MatXc entries;  // (d N) x (d N); row/col index = d*node + component
};

// Single layer S[phi](x_i) = sum_j G(x_i - y_j) phi_j w_j with the free-space
// singular part handled by singularity-aware quadrature. alpha empty =
// free-space kernel only.
LayerOperatorMatrix assemble_single_layer(const BoundaryDiscretization& disc,
                                          const std::optional<QuasiMomentum>& alpha,
                                          cplx k, const LameMaterial& mat,
                                          const LatticeSumConfig& cfg = {});

// Neumann-Poincare operator (K^{-alpha,k})*, principal-value traction of the
// single layer.
LayerOperatorMatrix assemble_neumann_poincare(const BoundaryDiscretization& disc,
                                              const std::optional<QuasiMomentum>& alpha,
                                              cplx k, const LameMaterial& mat,
                                              const LatticeSumConfig& cfg = {});

// densities phi_i = S^{-1}[e_i], i = 1..d, as nodal stacks (d N each);
// refuses when the estimated condition number exceeds 1e12
std::vector<VecXc> solve_density_for_constants(const LayerOperatorMatrix& S);

// generic solve with the same guard and one step of iterative refinement
VecXc layer_solve(const LayerOperatorMatrix& S, const VecXc& rhs);

// M^{alpha,0}[f] = (1/2 I + K*) S^{-1} f at the nodes
VecXc dtn_apply(const BoundaryDiscretization& disc, const QuasiMomentum& alpha,
                const LameMaterial& mat, const VecXc& f,
                const LatticeSumConfig& cfg = {});

struct QAlphaMatrix {
  bool free_space = false;
  Vec3 alpha = Vec3::Zero();
  int d = 2;
  Mat3c Q = Mat3c::Zero();  // hermitized d x d block
  Vec3 beta = Vec3::Zero();  // ascending eigenvalues (first d entries)
  Mat3c h = Mat3c::Zero();  // orthonormal eigenvector columns
  double hermitian_defect = 0.0;
};

inline constexpr double kHermitianTol = 1e-8;

// Q_ij = -contour integral of S^{-1}[e_i] . e_j; hermitized and
// eigen-decomposed. alpha empty = free-space kernel (3D, dilute work).
QAlphaMatrix compute_Q_alpha(const BoundaryDiscretization& disc,
                             const std::optional<QuasiMomentum>& alpha,
                             const LameMaterial& mat,
                             const LatticeSumConfig& cfg = {});

// exterior quasi-periodic field from a prescribed boundary trace
std::vector<Vec3c> exterior_field(const BoundaryDiscretization& disc,
                                  const QuasiMomentum& alpha, cplx k,
                                  const LameMaterial& mat, const VecXc& trace,
                                  const std::vector<Vec3>& points,
                                  const LatticeSumConfig& cfg = {});

// --- quadrature building blocks (exposed for direct testing) ---

// weights R_p, p = 0..N-1 circulant offset, for
//   int_0^{2pi} log(4 sin^2((t_i - s)/2)) f(s) ds ~ sum_j R_{i-j} f(t_j)
std::vector<double> kress_log_weights(int N);

// weights W_p for the principal-value conjugate kernel,
//   p.v. int_0^{2pi} cot((t_i - s)/2) f(s) ds ~ sum_j W_{i-j} f(t_j)
std::vector<double> hilbert_cot_weights(int N);

// traction of a displacement-gradient triple: row a of
//   lambda nu_a (div u)_b + mu sum_l nu_l (d_l u_ab + d_a u_lb)
Mat3c traction_from_gradient(const Vec3& nu, const Mat3c dG[3],
                             const LameMaterial& mat, int d);

}  // namespace pcband
