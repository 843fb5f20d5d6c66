#pragma once

// Hand-rolled random generators for property tests. Every generator draws
// from a seeded std::mt19937_64 so failures replay exactly.
#include <random>
#include <vector>

#include "rkhs/verify.hpp"

namespace rkhs::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed = 7) : rng_(seed) {}

  double real(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  cd complex(double r = 1.0) { return {real(-r, r), real(-r, r)}; }
  cd nonreal() { return {real(-2.0, 2.0), real(0.3, 2.0) * (integer(0, 1) ? 1.0 : -1.0)}; }

  /// Point of X+ on genus 0 or the torus.
  SurfacePoint plus(const RealSurfaceDescriptor& s) {
    if (s.genus() == 0) return SurfacePoint::scalar({real(-3.0, 3.0), real(0.2, 3.0)});
    const double top = s.dividing() ? 0.45 : 0.95;
    return SurfacePoint::scalar({real(0.0, 1.0), s.torus_t() * real(0.05, top)});
  }

  /// Point anywhere off the ovals.
  SurfacePoint interior(const RealSurfaceDescriptor& s) {
    const SurfacePoint p = plus(s);
    return integer(0, 1) ? p : involution(s, p);
  }

  L2Section section(Eigen::Index n) {
    L2Section f{CVec(n)};
    for (Eigen::Index i = 0; i < n; ++i) f.values(i) = complex();
    return f;
  }

  /// Atomic genus-0 measure with well separated atoms.
  std::vector<Genus0Atom> genus0_atoms(int n) {
    std::vector<Genus0Atom> atoms;
    while (static_cast<int>(atoms.size()) < n) {
      const double t = real(-4.0, 4.0);
      bool close = false;
      for (const auto& a : atoms) close |= std::abs(a.t - t) < 0.2;
      if (!close) atoms.push_back({t, real(0.1, 2.0)});
    }
    return atoms;
  }

  /// Positive atomic measure on the torus with equal total mass per oval.
  RealMeasure balanced_torus_measure(const RealSurfaceDescriptor& s, int per_oval) {
    RealMeasure m;
    for (int j = 0; j < s.ovals(); ++j) {
      double used = 0.0;
      for (int k = 0; k < per_oval; ++k) {
        const double w = k + 1 < per_oval ? real(0.2, 0.5) : 1.0 - used;
        used += w;
        m.atoms.push_back({s.oval_point(j, (k + real(0.1, 0.9)) / per_oval), w});
      }
    }
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline SurfacePtr torus(double t = 1.0, bool dividing = true) {
  return std::make_shared<const RealSurfaceDescriptor>(build_genus1(t, dividing));
}
inline SurfacePtr plane() { return std::make_shared<const RealSurfaceDescriptor>(build_genus0()); }
inline std::shared_ptr<const PrimeFormContext> prime(const SurfacePtr& s) {
  return std::make_shared<const PrimeFormContext>(s);
}

}  // namespace rkhs::testing
