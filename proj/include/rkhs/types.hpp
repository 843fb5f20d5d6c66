#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rkhs {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using IVec = Eigen::VectorXi;
using IMat = Eigen::MatrixXi;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cd kI{0.0, 1.0};

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation does not hold (bad argument, point too
/// close to a singularity, theta zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a structural invariant. Carries the residual that
/// exceeded its tolerance.
class InvariantError : public Error {
 public:
  InvariantError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A document does not match the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Lifted Abel-Jacobi image of a point. At genus 0 `z` has one entry (the
/// coordinate on the Riemann sphere) and `infinity` marks the point at
/// infinity.
struct SurfacePoint {
  CVec z;
  bool infinity = false;

  SurfacePoint() = default;
  explicit SurfacePoint(CVec coords) : z(std::move(coords)) {}

  static SurfacePoint scalar(cd value) {
    CVec v(1);
    v(0) = value;
    return SurfacePoint(std::move(v));
  }
  static SurfacePoint at_infinity() {
    SurfacePoint p = scalar(0.0);
    p.infinity = true;
    return p;
  }

  /// First coordinate; the whole point at genus 0 and 1.
  cd head() const { return z(0); }
  Eigen::Index dim() const { return z.size(); }
};

/// Scale-aware absolute error |a - b| / max(1, |b|).
inline double scaled_residual(cd a, cd b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace rkhs
