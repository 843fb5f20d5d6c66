#pragma once

#include <optional>
#include <vector>

#include "rkhs/types.hpp"

namespace rkhs {

class RealSurfaceDescriptor;

struct Characteristic {
  RVec a;
  RVec b;

  static Characteristic zero(int g) { return {RVec::Zero(g), RVec::Zero(g)}; }
  static Characteristic half(int g) { return {RVec::Constant(g, 0.5), RVec::Constant(g, 0.5)}; }

  int genus() const { return static_cast<int>(a.size()); }
  /// Half-integer characteristic with 4 a.b odd.
  bool is_odd() const;
};

/// Standard Riemann matrix used for evaluation. `source_Z` keeps the surface
/// matrix it was derived from, when there is one.
struct RiemannMatrix {
  CMat omega;
  std::optional<CMat> source_Z;

  explicit RiemannMatrix(CMat om, std::optional<CMat> z = std::nullopt);
  static RiemannMatrix from_surface(const RealSurfaceDescriptor& s);
  static RiemannMatrix scalar(cd tau);

  int genus() const { return static_cast<int>(omega.rows()); }
  /// Smallest eigenvalue of Im(omega).
  double min_im_eigenvalue() const { return lambda_min_; }

 private:
  double lambda_min_ = 0.0;
};

struct TruncationPolicy {
  double tail_bound = 1e-14;
  int max_radius = 64;
};

/// Value, gradient and Hessian of a theta function at one point.
struct ThetaJet {
  cd value;
  CVec grad;
  CMat hess;
};

/// Below this magnitude a theta value is treated as a zero.
inline constexpr double kThetaZero = 1e-13;

cd theta(const CVec& z, const RiemannMatrix& M, const TruncationPolicy& T = {});
cd theta_char(const Characteristic& c, const CVec& z, const RiemannMatrix& M,
              const TruncationPolicy& T = {});

/// d/dz_j log theta[c](z) from the termwise-differentiated sum.
CVec theta_dlog_grad(const Characteristic& c, const CVec& z, const RiemannMatrix& M,
                     const TruncationPolicy& T = {});

/// Derivatives up to `order` (0, 1 or 2). Dispatches to the scalar path at
/// genus 1.
ThetaJet theta_jet(const Characteristic& c, const CVec& z, const RiemannMatrix& M,
                   const TruncationPolicy& T = {}, int order = 2);

/// Generic ellipsoidal lattice sum, available at every genus.
ThetaJet theta_jet_lattice(const Characteristic& c, const CVec& z, const RiemannMatrix& M,
                           const TruncationPolicy& T = {}, int order = 2);

/// Scalar genus-1 series summed outward from the dominant index.
ThetaJet theta_jet_genus1(double a, double b, cd z, cd tau, const TruncationPolicy& T = {},
                          int order = 2);

/// Lattice radius the truncation policy selects for this evaluation.
double truncation_radius(const Characteristic& c, const CVec& z, const RiemannMatrix& M,
                         const TruncationPolicy& T);

/// Data-parallel evaluation; results do not depend on the thread count.
std::vector<cd> theta_batch(const Characteristic& c, const std::vector<CVec>& zs,
                            const RiemannMatrix& M, const TruncationPolicy& T = {},
                            unsigned threads = 0);

}  // namespace rkhs
