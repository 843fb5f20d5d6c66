#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "generators.hpp"

using namespace rkhs;
using namespace rkhs::testing;

TEST_CASE("genus-0 Cayley transform of i/z") {
  const auto phi = genus0_dictionary(0.0, 0.0, {{0.0, 1.0}});
  const SchurFunction s(phi);
  Gen gen(1);
  for (int k = 0; k < 20; ++k) {
    const SurfacePoint z = gen.plus(phi.surface());
    CHECK(scaled_residual(s(z), (z.head() - kI) / (z.head() + kI)) < 1e-14);
    CHECK(s.round_trip_residual(z) < 1e-12);
  }
  CHECK(std::abs(s(SurfacePoint::scalar(kI))) < 1e-15);
  const KernelConfig cfg(phi.prime_ptr());
  const SurfacePoint i = SurfacePoint::scalar(kI);
  CHECK(std::abs(hs_kernel(s, cfg, i, i) - 0.5) < 1e-15);
  std::vector<SurfacePoint> pts;
  for (int k = 0; k < 5; ++k) pts.push_back(gen.plus(phi.surface()));
  CMat G(5, 5);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) G(a, b) = hs_kernel(s, cfg, pts[a], pts[b]);
  Eigen::SelfAdjointEigenSolver<CMat> eig(0.5 * (G + G.adjoint()));
  CHECK(eig.eigenvalues().minCoeff() > -1e-12);
  CHECK(s.boundary_modulus_residual() < 1e-12);
}

TEST_CASE("Schur function requires vanishing periods") {
  const auto tor = torus();
  const auto E = prime(tor);
  RealMeasure m;
  m.atoms = {{tor->oval_point(0, 0.2), 1.0}, {tor->oval_point(1, 0.6), 0.4}};
  CHECK_THROWS_AS(SchurFunction(CaratheodoryFunction(E, m, 0.0)), InvariantError);
  m.atoms[1].weight = 1.0;
  CHECK_NOTHROW(SchurFunction(CaratheodoryFunction(E, m, 0.0)));
  CHECK(SchurFunction(CaratheodoryFunction(E, {}, 0.4)).unimodular_constant());
}

TEST_CASE("Lambda is unitary") {
  Gen gen(2);
  SUBCASE("genus 0") {
    const auto phi = genus0_dictionary(0.2, 0.0, gen.genus0_atoms(4));
    const LPhiSpace sp(KernelConfig(phi.prime_ptr()), phi);
    CHECK(unitarity_residual(SchurFunction(phi), sp, interior_points(sp.surface(), 6)) < 1e-10);
  }
  SUBCASE("torus") {
    const auto s = torus();
    const auto E = prime(s);
    const CaratheodoryFunction phi(E, gen.balanced_torus_measure(*s, 2), 0.3);
    const LPhiSpace sp(KernelConfig(E), phi);
    const SchurFunction sch(phi);
    CHECK(unitarity_residual(sch, sp, interior_points(*s, 6)) < 1e-10);
    CHECK(sch.boundary_modulus_residual() < 1e-9);
  }
}

TEST_CASE("conjugated model operator") {
  Gen gen(3);
  SUBCASE("genus 0, y = z") {
    const auto phi = genus0_dictionary(0.0, 0.0, gen.genus0_atoms(3));
    const auto sp = std::make_shared<const LPhiSpace>(KernelConfig(phi.prime_ptr()), phi);
    const OperatorPair op(sp, MeromorphicFunction::rational(0.0, 1.0, {}, {}));
    const auto pts = interior_points(sp->surface(), 6);
    for (int k = 0; k < 3; ++k) CHECK(lambda_conjugated_residual(op, gen.section(sp->size()), pts) < 1e-9);
    const PoleCoupling pc(op);
    CHECK(pc.poles() == 1);
  }
  SUBCASE("torus, conjugate poles") {
    const auto s = torus();
    const auto E = prime(s);
    const auto sp = std::make_shared<const LPhiSpace>(KernelConfig(E),
                                                      CaratheodoryFunction(E, gen.balanced_torus_measure(*s, 2), 0.3));
    const OperatorPair op(sp, MeromorphicFunction::elliptic(0.5, {cd(0.3, 0.2), cd(0.3, -0.2)}, {cd(0, 0.7), cd(0, -0.7)}));
    const auto pts = interior_points(*s, 6);
    for (int k = 0; k < 3; ++k) {
      const L2Section f = gen.section(sp->size());
      CHECK(lambda_conjugated_residual(op, f, pts) < 1e-9);
      CVec d(2);
      d << gen.complex(), gen.complex();
      CHECK(phi_adjoint_residual(op, f, d) < 1e-11);
    }
    const PoleCoupling pc(op);
    CHECK_FALSE(pc.diagonal());
  }
}

TEST_CASE("real part when s = 1 at the poles") {
  Gen gen(4);
  const auto s = plane();
  const auto E = prime(s);
  RealMeasure m;
  for (auto [t, w] : {std::pair{-1.0, 2.0}, {0.5, 0.6}, {2.0, 1.4}}) m.atoms.push_back({s->oval_point(0, t), w});
  const auto y = MeromorphicFunction::rational(0.4, 0.0, {cd(0.1, 0.0)}, {cd(0.8, 0.0)});
  const double M = -phi_eval(CaratheodoryFunction(E, m, 0.0), y.poles[0], true).imag();
  const auto sp = std::make_shared<const LPhiSpace>(KernelConfig(E), CaratheodoryFunction(E, m, M));
  const OperatorPair op(sp, y);
  CHECK(std::abs(phi_eval(sp->phi(), y.poles[0], true)) < 1e-14);
  for (int k = 0; k < 5; ++k) {
    const L2Section f = gen.section(sp->size());
    CHECK(real_part_residual(op, f) < 1e-9);
    CHECK(real_part_formula_residual(op, f) < 1e-12);
  }
  // Away from s = 1 the same-model real part differs from y by a nonzero term.
  const auto other = std::make_shared<const LPhiSpace>(KernelConfig(E), CaratheodoryFunction(E, m, M + 0.5));
  const OperatorPair off(other, y);
  CHECK(real_part_residual(off, gen.section(other->size())) > 1e-3);
}
