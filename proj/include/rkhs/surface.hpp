#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rkhs/types.hpp"

namespace rkhs {

/// A point on a real oval together with the data every boundary integral
/// needs: the n(x) homology vector and the normalized differentials evaluated
/// in the boundary-oriented local coordinate at x.
struct OvalSample {
  int oval = 0;
  SurfacePoint point;
  IVec n_vec;
  CVec diff_values;
};

/// Quadrature node on an oval: sample plus its weight in the local coordinate.
struct QuadNode {
  OvalSample x;
  double dt = 0.0;
};

enum class Region { InteriorPlus, InteriorMinus, Oval };

struct Classification {
  Region region = Region::InteriorPlus;
  int oval = -1;

  bool operator==(const Classification&) const = default;
};

std::string to_string(const Classification& c);

/// Jacobian-coordinate model of a compact real Riemann surface.
///
/// The period matrix is stored twice: `Z = H/2 + i Y^{-1}` as the surface data
/// and `omega_std`, the same matrix used as a standard Riemann matrix for
/// theta evaluation. Points are lifted Jacobian coordinates; the involution
/// acts by componentwise conjugation of the lift.
class RealSurfaceDescriptor {
 public:
  int genus() const { return genus_; }
  int ovals() const { return ovals_; }
  bool dividing() const { return dividing_; }
  const IMat& H() const { return H_; }
  const RMat& Y() const { return Y_; }
  const CMat& Z() const { return Z_; }
  const CMat& omega_std() const { return omega_; }
  const std::vector<OvalSample>& oval_samples() const { return samples_; }
  /// Odd characteristic (a, b) carried by a genus >= 2 descriptor, if any.
  const std::optional<std::pair<RVec, RVec>>& odd_characteristic() const { return odd_; }

  /// Torus parameter t (Im of the B-period) for genus 1, 0 otherwise.
  double torus_t() const { return genus_ == 1 ? 1.0 / Y_(0, 0) : 0.0; }

  /// Whether ovals carry an analytic parametrization (genus 0 and 1).
  bool parametrized() const { return genus_ <= 1; }

  /// Sample on oval `oval` at parameter s. Genus 0: s is the real coordinate.
  /// Genus 1: s in [0,1) runs along the oval.
  OvalSample oval_point(int oval, double s) const;

  /// Periodic trapezoid nodes on one oval; `dt` is the boundary-oriented
  /// arc element of the local coordinate.
  std::vector<QuadNode> oval_quadrature(int oval, int n) const;

  friend RealSurfaceDescriptor build_genus0();
  friend RealSurfaceDescriptor build_genus1(double t, bool dividing);
  friend RealSurfaceDescriptor load_surface(const nlohmann::json& doc);

 private:
  void validate() const;

  int genus_ = 0;
  int ovals_ = 1;
  bool dividing_ = true;
  IMat H_;
  RMat Y_;
  CMat Z_;
  CMat omega_;
  std::vector<OvalSample> samples_;
  std::optional<std::pair<RVec, RVec>> odd_;
};

using SurfacePtr = std::shared_ptr<const RealSurfaceDescriptor>;

RealSurfaceDescriptor build_genus0();
RealSurfaceDescriptor build_genus1(double t, bool dividing);
RealSurfaceDescriptor load_surface(const nlohmann::json& doc);
nlohmann::json to_json(const RealSurfaceDescriptor& s);

/// Builtin selector: "genus0", "torus:t=<t>[,dividing=<true|false>]".
RealSurfaceDescriptor builtin_surface(const std::string& selector);

SurfacePoint involution(const RealSurfaceDescriptor& s, const SurfacePoint& p);

/// Real lattice coordinates (u, v) with z = u + Omega v.
std::pair<RVec, RVec> lattice_coordinates(const RealSurfaceDescriptor& s, const CVec& z);

/// Representative of z in the half-open fundamental cell.
CVec reduce(const RealSurfaceDescriptor& s, const CVec& z);

/// Distance of a - b from the lattice, measured in lattice coordinates.
double lattice_distance(const RealSurfaceDescriptor& s, const CVec& a, const CVec& b);

bool lattice_equivalent(const RealSurfaceDescriptor& s, const SurfacePoint& a,
                        const SurfacePoint& b, double tol = 1e-10);

Classification classify(const RealSurfaceDescriptor& s, const SurfacePoint& p,
                        double tol = 1e-10);

}  // namespace rkhs
