#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "rkhs/prime_form.hpp"

namespace rkhs {

/// Point mass on an oval. `weight` is the ratio d(eta)/omega at the atom.
struct Atom {
  OvalSample x;
  double weight = 0.0;
};

/// Density sampled at the trapezoid nodes of one oval.
struct DensityBlock {
  int oval = 0;
  std::vector<double> values;
};

struct RealMeasure {
  std::vector<Atom> atoms;
  std::vector<DensityBlock> densities;
  /// Only identity tests may use signed weights.
  bool signed_ok = false;

  /// Atoms plus density blocks discretized as atoms at their nodes.
  std::vector<Atom> discretized(const RealSurfaceDescriptor& s) const;
  double total_weight(const RealSurfaceDescriptor& s) const;
  RealMeasure scaled(double factor) const;
  void validate(const RealSurfaceDescriptor& s) const;
};

/// Oval sample for a point given in any lift (genus 0 and 1).
OvalSample oval_sample_at(const RealSurfaceDescriptor& s, int oval, const CVec& coords);

RealMeasure load_measure(const RealSurfaceDescriptor& s, const nlohmann::json& doc, double* M = nullptr);

/// Herglotz-type function built from a positive measure on the ovals.
class CaratheodoryFunction {
 public:
  CaratheodoryFunction(std::shared_ptr<const PrimeFormContext> prime, RealMeasure measure, double M);

  const PrimeFormContext& prime() const { return *prime_; }
  const std::shared_ptr<const PrimeFormContext>& prime_ptr() const { return prime_; }
  const RealSurfaceDescriptor& surface() const { return prime_->surface(); }
  const RealMeasure& measure() const { return measure_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double M() const { return M_; }

  cd operator()(const SurfacePoint& p) const;

  /// a(j, i) = sum over atoms on oval j of w * omega_i.
  CMat oval_mass_matrix() const;
  /// Column sums of oval_mass_matrix; zero iff phi is single-valued.
  CVec mass_vector() const;

 private:
  std::shared_ptr<const PrimeFormContext> prime_;
  RealMeasure measure_;
  std::vector<Atom> atoms_;
  double M_;
};

/// G(p,x) = pi omega(x).(n(x)/2 + i Y p) - (i/2) d/dx log E(p,x).
cd green_differential(const PrimeFormContext& ctx, const SurfacePoint& p, const OvalSample& x);

/// Harmonic extension of boundary data psi(x) by trapezoid quadrature with
/// n nodes per oval; the harmonic-measure density is (2/pi) Re G.
double harmonic_eval(const PrimeFormContext& ctx, const std::function<double(const OvalSample&)>& psi,
                     const SurfacePoint& p, int n);

/// Total harmonic measure of the boundary seen from p.
double harmonic_mass(const PrimeFormContext& ctx, const SurfacePoint& p, int n);

/// phi at an interior point; with `allow_boundary`, also at oval points away
/// from the atoms (where Re phi vanishes).
cd phi_eval(const CaratheodoryFunction& phi, const SurfacePoint& p, bool allow_boundary = false);

/// phi(p + e) - phi(p) for the lattice generators 1 and Omega (genus 1);
/// empty at genus 0.
CVec phi_periods(const CaratheodoryFunction& phi);

/// Rescale the atoms on ovals j >= 1 so that the mass vector vanishes and phi
/// becomes single-valued. Dividing torus only.
RealMeasure balance_measure(const RealSurfaceDescriptor& s, const RealMeasure& m);

struct Genus0Atom {
  double t = 0.0;
  double c = 0.0;
};

/// iA - iBz - i sum c_j (1/(t_j - z) - t_j/(t_j^2+1)) as a Caratheodory
/// function on the upper half-plane. B > 0 needs an atom at infinity, which
/// this model does not represent.
CaratheodoryFunction genus0_dictionary(double A, double B, const std::vector<Genus0Atom>& atoms);

/// Closed classical form of the same function.
cd genus0_classical(double A, double B, const std::vector<Genus0Atom>& atoms, cd z);

/// Recover atom weights of a genus-0 phi from contour integrals around the
/// given real poles: w = -2i Res phi.
std::vector<double> extract_atoms_genus0(const std::function<cd(cd)>& phi, const std::vector<double>& poles,
                                         double radius = 1e-2, int n = 64);

}  // namespace rkhs
