#include <doctest.h>

#include <fstream>

#include "generators.hpp"

using namespace rkhs;
using namespace rkhs::testing;

TEST_CASE("genus-0 model") {
  const auto s = build_genus0();
  CHECK(s.genus() == 0);
  CHECK(s.ovals() == 1);
  CHECK(s.dividing());
  const SurfacePoint p = involution(s, SurfacePoint::scalar({2.0, 3.0}));
  CHECK(p.head() == cd(2.0, -3.0));
  CHECK(classify(s, SurfacePoint::scalar(kI)).region == Region::InteriorPlus);
  CHECK(classify(s, SurfacePoint::scalar(-kI)).region == Region::InteriorMinus);
  CHECK(classify(s, SurfacePoint::scalar(0.7)).region == Region::Oval);
}

TEST_CASE("dividing torus period data") {
  const auto s = build_genus1(1.0, true);
  CHECK(s.ovals() == 2);
  CHECK(s.H()(0, 0) == 0);
  CHECK(s.Y()(0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(s.Z()(0, 0) - kI) < 1e-15);
  const SurfacePoint p = SurfacePoint::scalar({0.3, 0.5});
  CHECK(lattice_equivalent(s, involution(s, p), p, 1e-12));
}

TEST_CASE("non-dividing torus period data") {
  const auto s = build_genus1(2.0, false);
  CHECK(s.ovals() == 1);
  CHECK(s.H()(0, 0) == 1);
  CHECK(std::abs(s.Z()(0, 0) - cd(0.5, 2.0)) < 1e-15);
  CHECK_THROWS_AS(build_genus1(0.0, true), DomainError);
  CHECK_THROWS_AS(build_genus1(-1.0, false), DomainError);
}

TEST_CASE("classification on the dividing torus") {
  const auto s = build_genus1(1.0, true);
  CHECK(classify(s, SurfacePoint::scalar(0.25)) == Classification{Region::Oval, 0});
  CHECK(classify(s, SurfacePoint::scalar({0.25, 0.5})) == Classification{Region::Oval, 1});
  CHECK(classify(s, SurfacePoint::scalar({0.25, 0.2})).region == Region::InteriorPlus);
  CHECK(classify(s, SurfacePoint::scalar({0.25, 0.7})).region == Region::InteriorMinus);
  CHECK(classify(s, SurfacePoint::scalar({3.25, -0.3})).region == Region::InteriorMinus);
}

TEST_CASE("involution is an involution") {
  Gen gen(11);
  for (auto s : {build_genus0(), build_genus1(1.0, true), build_genus1(0.7, false)}) {
    for (int k = 0; k < 1000; ++k) {
      const SurfacePoint p = SurfacePoint::scalar({gen.real(-3, 3), gen.real(-3, 3)});
      CHECK(lattice_distance(s, involution(s, involution(s, p)).z, p.z) < 1e-12);
    }
  }
}

TEST_CASE("oval samples are fixed by the involution") {
  for (auto s : {build_genus1(1.0, true), build_genus1(2.5, true), build_genus1(0.8, false)}) {
    for (const auto& x : s.oval_samples()) {
      CHECK(lattice_distance(s, involution(s, x.point).z, x.point.z) < 1e-12);
      CHECK(classify(s, x.point) == Classification{Region::Oval, x.oval});
    }
  }
}

TEST_CASE("descriptor round trip") {
  for (auto s : {build_genus1(1.0, true), build_genus1(1.7, false), build_genus0()}) {
    const auto back = load_surface(to_json(s));
    CHECK(back.genus() == s.genus());
    CHECK(back.ovals() == s.ovals());
    CHECK(back.dividing() == s.dividing());
    CHECK((back.Z() - s.Z()).norm() == 0.0);
    REQUIRE(back.oval_samples().size() == s.oval_samples().size());
    for (std::size_t k = 0; k < s.oval_samples().size(); ++k)
      CHECK((back.oval_samples()[k].point.z - s.oval_samples()[k].point.z).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("descriptor rejections") {
  nlohmann::json doc = to_json(build_genus1(1.0, true));
  SUBCASE("period matrix mismatch") {
    doc["Z"] = {0.0, 2.0};
    try {
      load_surface(doc);
      FAIL("accepted a bad Z");
    } catch (const InvariantError& e) {
      CHECK(std::string(e.what()).find("Z = H/2 + i Y^-1") != std::string::npos);
      CHECK(e.residual() == doctest::Approx(1.0));
    }
  }
  SUBCASE("homology rank") {
    doc["H"] = {1};
    CHECK_THROWS_AS(load_surface(doc), InvariantError);
  }
  SUBCASE("Y not positive") {
    doc["Y"] = {-1.0};
    CHECK_THROWS_AS(load_surface(doc), InvariantError);
  }
  SUBCASE("schema") {
    doc.erase("genus");
    CHECK_THROWS_AS(load_surface(doc), SchemaError);
  }
  SUBCASE("oval sample off the oval") {
    doc["oval_samples"][0]["coords"] = {0.1, 0.2};
    CHECK_THROWS_AS(load_surface(doc), InvariantError);
  }
}

TEST_CASE("builtin selectors") {
  CHECK(builtin_surface("genus0").genus() == 0);
  CHECK(builtin_surface("torus:t=2").torus_t() == doctest::Approx(2.0));
  CHECK_FALSE(builtin_surface("torus:t=1,dividing=0").dividing());
  CHECK_THROWS_AS(builtin_surface("sphere"), DomainError);
}

TEST_CASE("genus-2 descriptor with supplied oval data") {
  std::ifstream in(std::string(RKHS_TEST_DATA) + "/genus2_mcurve.json");
  REQUIRE(in);
  const auto s = load_surface(nlohmann::json::parse(in));
  CHECK(s.genus() == 2);
  CHECK(s.ovals() == 3);
  CHECK(s.odd_characteristic().has_value());
  for (const auto& x : s.oval_samples()) CHECK(classify(s, x.point) == Classification{Region::Oval, x.oval});
  CHECK((s.Z() - cd(0.0, 1.0) * s.Y().inverse().cast<cd>()).norm() < 1e-15);
}
