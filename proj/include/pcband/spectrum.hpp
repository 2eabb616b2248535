#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pcband/operators.hpp"

namespace pcband {

inline constexpr int kDefaultCurveNodes = 128;   // 2D default resolution
inline constexpr int kDefaultPolarCount = 12;    // 3D default resolution

struct BandSample {
  QuasiMomentum alpha;
  Vec3 beta = Vec3::Zero();   // ascending, first d entries
  Vec3 omega = Vec3::Zero();  // ascending leading frequencies
  bool analytic_zero = false;  // |alpha| under the cutoff: omega = 0, mult. d
  bool failed = false;
  std::string error;
};

struct BandDiagram {
  int d = 2;
  double epsilon = 0.0;
  double rho = 0.0;
  double measure = 0.0;  // |D|
  std::vector<BandSample> samples;
};

struct BandgapReport {
  double omega_star = 0.0;
  double eta = 0.0;
  double omega_sharp = 0.0;
  double lower = 0.0, upper = 0.0;  // [omega_star + eta, omega_sharp]
  bool nonempty = false;
  std::string epsilon_note;
};

struct DiluteScaling {
  double s = 0.1;
  bool regime_warning = false;  // epsilon / s^2 > 0.1
};

// 0 < s < 0.5 enforced; warning flag when epsilon/s^2 > 0.1
DiluteScaling make_dilute_scaling(double s, double epsilon);

// omega_i = sqrt(beta_i / (rho |D|)) sqrt(epsilon), ascending, length d
std::vector<double> leading_frequencies(const QAlphaMatrix& Q, double rho,
                                        double measure, double epsilon);

// Gamma->X->M(->R)->Gamma polyline with `samples` points (default 32 in 2D,
// 24 in 3D); points with |alpha| < alpha_min carry near_zero = true
std::vector<QuasiMomentum> brillouin_path(int d, int samples = 0,
                                          double alpha_min = kAlphaMinDefault);

// per-alpha Q^alpha -> beta -> omega; near-zero points are flagged analytic
// (omega = 0, multiplicity d) and skipped; throws AccuracyError when more
// than 10% of the computed points fail
BandDiagram sweep_brillouin(const std::vector<QuasiMomentum>& path,
                            const BoundaryDiscretization& disc,
                            const LameMaterial& mat, double epsilon,
                            const LatticeSumConfig& cfg = {});

// omega_star from the diagram; eta empty = 0.05 omega_star
BandgapReport bandgap_estimate(const BandDiagram& diagram,
                               std::optional<double> eta, double omega_sharp);

// dilute approximation (3D only):
//   Q^{B,alpha} ~ s Q^D - s^2 sum_l (R0 xi_i)_l Q^D_{lj}
// xi_i = contour integral of (S^0_D)^{-1}[e_i]
Mat3c dilute_Q(const Mat3c& QD_free, const DiluteScaling& s, const Mat3c& R0,
               const std::array<Vec3c, 3>& xi_sums, int d = 3);

// xi_i vectors for the free-space inclusion (also equal to -row i of Q^D)
std::array<Vec3c, 3> constant_density_integrals(const BoundaryDiscretization& disc,
                                                const LameMaterial& mat);

struct BallClosedForm {
  double q_diag = 0.0;          // 12 mu pi r (2 mu + lambda) / (5 mu + 2 lambda)
  Vec3 beta = Vec3::Zero();     // triple q_diag
  double omega_min_coeff = 0.0;  // multiply by sqrt(epsilon)
  double omega_max_coeff = 0.0;
};

BallClosedForm ball_closed_form(double r, const LameMaterial& mat);

struct ResonantMode {
  bool degenerate = false;
  std::vector<Vec3c> basis;  // eigenvectors spanning the (near-)eigenspace
  Vec3c interior = Vec3c::Zero();  // h_i / |D|
};

// leading interior mode h_i / |D|; exterior field follows by handing
// interior (stacked at the nodes) to exterior_field at k = 0
ResonantMode resonant_mode_leading(const QAlphaMatrix& Q, int branch,
                                   double measure);

}  // namespace pcband
