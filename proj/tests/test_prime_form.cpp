#include <doctest.h>

#include <fstream>

#include "generators.hpp"

using namespace rkhs;
using namespace rkhs::testing;

TEST_CASE("genus-0 prime form is q - p") {
  const PrimeFormContext E(plane());
  Gen gen(1);
  for (int k = 0; k < 50; ++k) {
    const SurfacePoint p = gen.interior(E.surface()), q = gen.interior(E.surface());
    CHECK(E.value(p, q) == q.head() - p.head());
    CHECK(std::abs(E.dlog_x(p, q) - 1.0 / (q.head() - p.head())) < 1e-15);
  }
}

TEST_CASE("torus prime form basics") {
  const auto s = torus();
  const PrimeFormContext E(s);
  Gen gen(2);
  for (int k = 0; k < 100; ++k) {
    const SurfacePoint u = gen.interior(*s), v = gen.interior(*s);
    CHECK(E.value(u, u) == cd(0.0));
    CHECK(std::abs(E.value(u, v) + E.value(v, u)) < 1e-12);
    CHECK(scaled_residual(std::conj(E.value(involution(*s, u), involution(*s, v))), E.value(u, v)) < 1e-10);
  }
}

TEST_CASE("diagonal limit by Richardson extrapolation") {
  const PrimeFormContext E(torus());
  const SurfacePoint u = SurfacePoint::scalar({0.31, 0.17});
  auto ratio = [&](double h) { return E.value(u, SurfacePoint::scalar(u.head() + h)) / h; };
  const cd limit = (4.0 * ratio(5e-4) - ratio(1e-3)) / 3.0;
  CHECK(std::abs(limit - 1.0) < 1e-8);
}

TEST_CASE("log-derivative against finite differences and the pole") {
  const PrimeFormContext E(torus(1.3));
  Gen gen(4);
  for (int k = 0; k < 30; ++k) {
    const SurfacePoint p = gen.plus(E.surface());
    const SurfacePoint x = gen.plus(E.surface());
    if (std::abs(p.head() - x.head()) < 0.05) continue;
    const double h = 1e-5;
    auto logE = [&](cd dx) { return std::log(E.value(p, SurfacePoint::scalar(x.head() + dx))); };
    const cd fd = (logE(h) - logE(-h)) / (2.0 * h);
    CHECK(std::abs(E.dlog_x(p, x) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
  }
  const SurfacePoint p = SurfacePoint::scalar({0.4, 0.2});
  const cd d = 1e-7 * cd(0.6, 0.8);
  CHECK(std::abs(d * E.dlog_x(p, SurfacePoint::scalar(p.head() + d)) - 1.0) < 1e-6);
  CHECK_THROWS_AS(E.dlog_x(p, p), DomainError);
}

TEST_CASE("oval relation on both ovals of the dividing torus") {
  for (double t : {1.0, 0.6, 2.2}) {
    const auto s = torus(t);
    const PrimeFormContext E(s);
    Gen gen(6);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 25; ++k) {
        const OvalSample x = s->oval_point(j, gen.real(0.0, 1.0));
        const SurfacePoint p = gen.plus(*s);
        const cd lhs = std::conj(E.dlog_x_along(involution(*s, p), x.point, x.diff_values)) -
                       E.dlog_x_along(p, x.point, x.diff_values);
        const cd expected = 2.0 * kPi * kI * x.diff_values(0) * double(x.n_vec(0));
        CHECK(std::abs(lhs - expected) < 1e-9);
      }
  }
}

TEST_CASE("lattice multipliers") {
  const auto s = torus(0.9);
  const PrimeFormContext E(s);
  const cd om = s->omega_std()(0, 0);
  const SurfacePoint p = SurfacePoint::scalar({0.2, 0.1}), q = SurfacePoint::scalar({0.7, 0.3});
  const cd w = q.head() - p.head();
  CHECK(scaled_residual(E.value(p, SurfacePoint::scalar(q.head() + 1.0)), -E.value(p, q)) < 1e-12);
  const cd mult = -std::exp(-kI * kPi * om - 2.0 * kPi * kI * w);
  CHECK(scaled_residual(E.value(p, SurfacePoint::scalar(q.head() + om)), mult * E.value(p, q)) < 1e-9);
}

TEST_CASE("genus >= 2 needs an odd characteristic") {
  nlohmann::json doc = to_json(build_genus1(1.0, true));
  const Characteristic even = Characteristic::zero(1);
  CHECK_THROWS_AS(PrimeFormContext(torus(), even), InvariantError);
  std::ifstream in(std::string(RKHS_TEST_DATA) + "/genus2_mcurve.json");
  auto g2 = nlohmann::json::parse(in);
  const auto with = std::make_shared<const RealSurfaceDescriptor>(load_surface(g2));
  const PrimeFormContext E(with);
  CHECK(E.odd_char().is_odd());
  CVec z(2);
  z << cd(0.1, 0.05), cd(0.3, -0.02);
  const SurfacePoint a(CVec::Zero(2)), b(z);
  CHECK(std::abs(E.value(a, b) + E.value(b, a)) < 1e-12);
  // The chart normalization makes E(u, u + h d0) / h -> 1.
  const SurfacePoint c(z * 0.0 + E.chart_direction() * 1e-6);
  CHECK(std::abs(E.value(a, c) / 1e-6 - 1.0) < 1e-5);
  g2.erase("odd_characteristic");
  CHECK_THROWS_AS(PrimeFormContext(std::make_shared<const RealSurfaceDescriptor>(load_surface(g2))), DomainError);
}
