#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pcband/boundary.hpp"
#include "pcband/lattice.hpp"
#include "pcband/materials.hpp"

namespace pcband {

inline constexpr const char* kCodeVersion = "pcband 1.0.0";

// Validated run configuration with all defaults filled in. `canonical` is the
// defaults-expanded JSON echo (stable key order); `config_hash` is its FNV-1a
// hash, recorded in every output header.
struct RunConfig {
  int dimension = 2;
  LameMaterial material{};
  double delta = 1e-4;
  double epsilon = 1e-4;
  double tau = 1.0;
  ShapeSpec shape = ShapeSpec::circle(0.25);
  int resolution = 0;     // 0 = dimension default
  int path_samples = 0;   // 0 = dimension default
  std::vector<Vec3> alphas;  // explicit list; empty = brillouin path
  LatticeSumConfig lattice;
  std::optional<double> bandgap_eta;
  double omega_sharp = 1.0;
  std::vector<double> oracle_deltas{1e-3, 3e-4, 1e-4};
  double oracle_tau = 1.0;
  double oracle_window_lo = 1.0, oracle_window_hi = 15.0;
  int oracle_grid_points = 96;
  double ball_s_tol = 1e-6;
  double ball_q_tol = 1e-5;
  std::string canonical;
  std::uint64_t config_hash = 0;
};

// Strict JSON parsing: unknown keys are rejected with the offending field
// path (ValidationError); physics violations (strong convexity) raise
// PhysicsError. Defaults are filled and echoed in `canonical`.
RunConfig parse_config(const std::string& text);

// Error taxonomy -> process exit code: 2 schema/validation, 3 physics or
// geometry, 4 sweep/accuracy failure; anything else 1.
int exit_code_for(const std::exception& e);

// Band sweep: writes bands.csv and gap_report.json under out_dir. Returns 0.
int run_bands(const RunConfig& cfg, const std::string& out_dir,
              std::ostream& log);

// Ball closed-form verification (3D sphere config). PASS/FAIL lines on
// `report`; returns 5 when any line fails, else 0.
int run_ball_check(const RunConfig& cfg, std::ostream& report);

// Asymptotics oracle on the 2D benchmark. Returns 6 on fit failure, else 0.
int run_oracle(const RunConfig& cfg, std::ostream& report);

// Q^alpha at one quasi-momentum, printed to `report`. Returns 0.
int run_qmatrix(const RunConfig& cfg, const Vec3& alpha, std::ostream& report);

}  // namespace pcband
