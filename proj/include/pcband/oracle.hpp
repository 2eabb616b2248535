#pragma once

#include <vector>

#include "pcband/operators.hpp"

namespace pcband {

// Discretized block system for the transmission problem at trial frequency
// omega. Densities (phi interior, psi exterior); rows enforce continuity of
// the displacement and the delta-scaled traction:
//   [ S_in            -S_out          ] [phi]   [0]
//   [ -1/2 I + K*_in  -delta(1/2 I + K*_out) ] [psi] = [0]
// with wavenumbers k_in = sqrt(rho) tau omega, k_out = sqrt(rho) omega.
struct TransmissionSystem {
  QuasiMomentum alpha;
  double omega = 0.0;
  ContrastRegime contrast{};
  int d = 2;
  int N = 0;
  MatXc blocks;  // 2 d N x 2 d N
};

struct ResonanceEstimate {
  double omega_hat = 0.0;
  double dip_value = 0.0;       // smallest singular value at omega_hat
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool converged = false;       // dip_value < dip_threshold * sweep median
};

struct OracleConfig {
  double dip_threshold = 1e-3;   // relative to the sweep median
  int golden_max_iters = 40;
  double omega_rel_tol = 1e-6;   // golden-section stopping width
  LatticeSumConfig lattice;      // pass a shared cache here for sweeps
};

// Assembles the 2dN x 2dN transmission system; throws WindowError when
// either wavenumber leaves the admissible low-frequency window.
TransmissionSystem assemble_transmission(const BoundaryDiscretization& disc,
                                         const QuasiMomentum& alpha, double omega,
                                         const ContrastRegime& contrast,
                                         const LameMaterial& mat,
                                         const LatticeSumConfig& cfg = {});

// Smallest singular value of the assembled system (deterministic; LU-based
// inverse power iteration on A^H A).
double transmission_min_singular(const TransmissionSystem& sys);

// Sweeps the grid, locates local minima of the smallest singular value and
// refines each by golden-section to relative omega accuracy omega_rel_tol.
// Grid points are evaluated concurrently with a deterministic merge. Returns
// the refined minima in ascending omega; empty when the window is dip-free.
std::vector<ResonanceEstimate> min_singular_sweep(
    const BoundaryDiscretization& disc, const QuasiMomentum& alpha,
    const ContrastRegime& contrast, const LameMaterial& mat,
    const std::vector<double>& omega_grid, const OracleConfig& cfg = {});

struct BranchFit {
  double exponent = 0.0;     // fitted power of delta
  double coefficient = 0.0;  // omega_hat ~ coefficient * delta^exponent
  // nearest sqrt(beta_i / (rho tau^2 |D|)) when within 25%, else 0 (branches
  // outside the translational capacitance model, e.g. rigid rotations)
  double predicted_coefficient = 0.0;
  double residual = 0.0;     // max log-space fit residual
  std::vector<double> omega_hats;  // one per delta, ascending delta order
};

// Locates the subwavelength dips for each delta on the a-priori window
// omega in sqrt(delta) * [window_lo_scale, window_hi_scale] (grid_points
// samples), pairs them across delta values by ascending order, and fits
// log omega_hat against log delta per branch. Dip location never consults
// Q^alpha; the closed-form comparison coefficient is computed afterwards.
// Throws AccuracyError when the dip counts disagree across delta values.
struct AsymptoticsConfig {
  double window_lo_scale = 1.0;
  double window_hi_scale = 15.0;
  int grid_points = 96;
  OracleConfig oracle;
};

std::vector<BranchFit> verify_asymptotics(const BoundaryDiscretization& disc,
                                          const QuasiMomentum& alpha,
                                          const LameMaterial& mat, double tau,
                                          const std::vector<double>& delta_list,
                                          const AsymptoticsConfig& cfg = {});

}  // namespace pcband
