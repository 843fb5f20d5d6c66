#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "generators.hpp"

using namespace rkhs;
using namespace rkhs::testing;

TEST_CASE("genus-0 kernel for phi = i/z") {
  const auto E = prime(plane());
  const LPhiSpace sp(KernelConfig(E), genus0_dictionary(0.0, 0.0, {{0.0, 1.0}}));
  Gen gen(1);
  for (int k = 0; k < 30; ++k) {
    const SurfacePoint z = gen.interior(sp.surface()), w = gen.interior(sp.surface());
    CHECK(scaled_residual(sp.kernel(z, w), 1.0 / (z.head() * std::conj(w.head()))) < 1e-14);
  }
  const std::vector<SurfacePoint> pts{SurfacePoint::scalar(kI), SurfacePoint::scalar(2.0 * kI),
                                      SurfacePoint::scalar({1.0, 1.0})};
  Eigen::SelfAdjointEigenSolver<CMat> eig(sp.gram(pts));
  CHECK(eig.eigenvalues().minCoeff() > -1e-12);
  CHECK(sp.dimension() == 1);
  CHECK(sp.mu()(0) == doctest::Approx(1.0));
  CHECK(sp.a_matrix().size() == 0);
}

TEST_CASE("genus-0 identity for random atomic measures") {
  const KernelConfig cfg(prime(plane()));
  Gen gen(2);
  for (int n = 1; n <= 8; ++n) {
    const LPhiSpace sp(cfg, genus0_dictionary(gen.real(-1, 1), 0.0, gen.genus0_atoms(n)));
    for (int k = 0; k < 30; ++k) {
      const SurfacePoint p = gen.interior(sp.surface()), q = gen.interior(sp.surface());
      CHECK(scaled_residual(sp.kernel(p, q), sp.l2_kernel(p, q)) < 1e-12);
      CHECK(inner_product_identity_residual(sp, p, q) < 1e-12);
    }
    CHECK(sp.dimension() == n);
  }
}

TEST_CASE("inner-product identity on the dividing torus") {
  const auto s = torus();
  const auto E = prime(s);
  Gen gen(3);
  RealMeasure m;
  m.atoms = {{s->oval_point(0, 0.13), 1.0}, {s->oval_point(0, 0.8), 0.4}, {s->oval_point(1, 0.55), 0.7}};
  const LPhiSpace sp(KernelConfig(E), CaratheodoryFunction(E, m, 0.3));
  CHECK(std::abs(sp.a_sum()(0) - (1.4 - 0.7)) < 1e-14);
  for (int k = 0; k < 50; ++k) {
    const SurfacePoint p = gen.interior(*s), q = gen.interior(*s);
    CHECK(inner_product_identity_residual(sp, p, q) < 1e-10);
  }
  CHECK(std::abs(sp.a_matrix()(0, 0) - 1.4) < 1e-14);
  CHECK(std::abs(sp.a_matrix()(1, 0) + 0.7) < 1e-14);
}

TEST_CASE("balanced measure: L(phi) kernel is the L2 Gram and positive") {
  const auto s = torus();
  const auto E = prime(s);
  Gen gen(4);
  const LPhiSpace sp(KernelConfig(E), CaratheodoryFunction(E, gen.balanced_torus_measure(*s, 2), 0.1));
  CHECK(sp.dimension() == 4);
  std::vector<SurfacePoint> pts;
  for (int k = 0; k < 6; ++k) pts.push_back(gen.plus(*s));
  const CMat G = sp.gram(pts);
  CHECK((G - sp.l2_gram(pts)).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::SelfAdjointEigenSolver<CMat> eig(0.5 * (G + G.adjoint()));
  CHECK(eig.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("signed measure with zero cycles per oval") {
  const auto s = torus();
  const auto E = prime(s);
  RealMeasure m;
  m.signed_ok = true;
  m.atoms = {{s->oval_point(0, 0.1), 1.0}, {s->oval_point(0, 0.45), -1.0},
             {s->oval_point(1, 0.3), 0.6}, {s->oval_point(1, 0.75), -0.6}};
  const LPhiSpace sp(KernelConfig(E), CaratheodoryFunction(E, m, 0.2));
  CHECK(sp.a_matrix().cwiseAbs().maxCoeff() < 1e-14);
  Gen gen(5);
  for (int k = 0; k < 30; ++k) {
    const SurfacePoint p = gen.interior(*s), q = gen.interior(*s);
    CHECK(inner_product_identity_residual(sp, p, q) < 1e-9);
  }
}

TEST_CASE("density measure identity") {
  const auto s = torus();
  const auto E = prime(s);
  RealMeasure m;
  for (int j = 0; j < 2; ++j) {
    DensityBlock b{j, {}};
    for (const auto& node : s->oval_quadrature(j, 512)) b.values.push_back(1.0 + 0.5 * std::cos(2 * kPi * node.x.point.head().real()));
    m.densities.push_back(b);
  }
  const LPhiSpace sp(KernelConfig(E), CaratheodoryFunction(E, m, 0.1));
  Gen gen(6);
  for (int k = 0; k < 5; ++k) CHECK(inner_product_identity_residual(sp, gen.plus(*s), gen.plus(*s)) < 1e-8);
  CHECK_THROWS_AS(sp.dimension(), DomainError);
}

TEST_CASE("Fay identity on random torus points") {
  Gen gen(7);
  for (double t : {1.0, 0.7}) {
    const KernelConfig cfg(prime(torus(t)));
    int done = 0;
    while (done < 100) {
      const SurfacePoint p = gen.plus(cfg.surface()), x = gen.plus(cfg.surface());
      const SurfacePoint r = involution(cfg.surface(), gen.plus(cfg.surface()));
      if (lattice_distance(cfg.surface(), p.z, x.z) < 0.05 || lattice_distance(cfg.surface(), r.z, x.z) < 0.05) continue;
      CHECK(fay_residual(cfg, p, r, x) < 1e-10);
      ++done;
    }
  }
}

TEST_CASE("elements, inner products and reproduction") {
  const auto s = torus();
  const auto E = prime(s);
  Gen gen(8);
  const LPhiSpace sp(KernelConfig(E), CaratheodoryFunction(E, gen.balanced_torus_measure(*s, 2), 0.0));
  const L2Section f = gen.section(sp.size());
  for (int k = 0; k < 10; ++k) {
    const SurfacePoint q = gen.plus(*s);
    // <f, k_q> = F(q).
    CHECK(scaled_residual(sp.inner(f, sp.kernel_section(q)), sp.element(f, q)) < 1e-12);
  }
  const std::vector<SurfacePoint> w{gen.plus(*s), gen.plus(*s)};
  CVec c(2);
  c << gen.complex(), gen.complex();
  const L2Section g = sp.kernel_combination(w, c);
  const SurfacePoint p = gen.plus(*s);
  cd expected = 0.0;
  for (int j = 0; j < 2; ++j) expected += c(j) * sp.kernel(p, w[j]);
  CHECK(scaled_residual(sp.element(g, p), expected) < 1e-10);
  CHECK(sp.norm(g) >= 0.0);
  CHECK(std::abs(sp.norm(g) * sp.norm(g) - sp.inner(g, g).real()) < 1e-12);
}

TEST_CASE("spaces must share the surface") {
  CHECK_THROWS_AS(LPhiSpace(KernelConfig(prime(torus(1.0))), CaratheodoryFunction(prime(torus(2.0)), {}, 0.0)),
                  DomainError);
}
