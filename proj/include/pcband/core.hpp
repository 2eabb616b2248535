#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <Eigen/Dense>

namespace pcband {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;
using MatXc = Eigen::MatrixXcd;
using VecXc = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy; the CLI maps these onto process exit codes.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PhysicsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pcband
