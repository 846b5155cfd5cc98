#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "toric/fan.hpp"

using namespace toric;

namespace {

QVec qv(std::initializer_list<int> xs) {
  QVec v;
  for (int x : xs) v.push_back(Rational(x));
  return v;
}

}  // namespace

TEST_CASE("single line fan has three cones") {
  HyperplaneFan f = fan_from_hyperplanes({qv({1, 0})});
  CHECK(f.num_hyperplanes() == 1);
  CHECK(f.realizable().size() == 3);
  CHECK(f.is_realizable({1}));
  CHECK(f.is_realizable({0}));
  CHECK(f.is_realizable({-1}));
  CHECK(f.sign_vector_of(qv({2, 5})) == SignVector{1});
  CHECK(f.sign_vector_of(qv({0, 5})) == SignVector{0});
  CHECK(f.sign_vector_of(qv({-1, 0})) == SignVector{-1});
}

TEST_CASE("two independent lines give nine cones") {
  HyperplaneFan f = fan_from_hyperplanes({qv({1, 0}), qv({0, 1})});
  CHECK(f.realizable().size() == 9);
}

TEST_CASE("m pairwise distinct lines in the plane give 4m+1 cones") {
  // normals (1,0), (0,1), (1,1), (1,-1): 4 lines, 17 cones
  HyperplaneFan f =
      fan_from_hyperplanes({qv({1, 0}), qv({0, 1}), qv({1, 1}), qv({1, -1})});
  CHECK(f.realizable().size() == 17);
}

TEST_CASE("duplicate and opposite normals collapse") {
  HyperplaneFan f =
      fan_from_hyperplanes({qv({1, 0}), qv({-2, 0}), qv({3, 0})});
  CHECK(f.num_hyperplanes() == 1);
  CHECK(f.realizable().size() == 3);
}

TEST_CASE("degenerate stacking only realizes consistent sign vectors") {
  // three concurrent lines in R^2: (1,0), (0,1), (1,1); (+,+,-) is not
  // realizable because x>0, y>0 forces x+y>0
  HyperplaneFan f = fan_from_hyperplanes({qv({1, 0}), qv({0, 1}), qv({1, 1})});
  CHECK(f.realizable().size() == 13);
  CHECK_FALSE(f.is_realizable({1, 1, -1}));
  CHECK_FALSE(f.is_realizable({1, 1, 0}));
  CHECK(f.is_realizable({1, -1, 0}));
  CHECK(f.is_realizable({1, -1, 1}));
  CHECK(f.is_realizable({1, -1, -1}));
}

TEST_CASE("fan is complete and cones match sign vectors") {
  HyperplaneFan f = fan_from_hyperplanes({qv({1, 0}), qv({1, 2}), qv({1, -3})});
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(-20, 20);
  for (int i = 0; i < 1000; ++i) {
    QVec x{Rational(coord(rng), 7), Rational(coord(rng), 7)};
    SignVector sv = f.sign_vector_of(x);
    CHECK(f.is_realizable(sv));
    CHECK(f.cone_of(sv).contains(x));
  }
}

TEST_CASE("face closure") {
  // zeroing out any subset of a realizable sign vector that stays
  // consistent is again realizable (faces of fan cones are fan cones)
  HyperplaneFan f = fan_from_hyperplanes({qv({1, 0}), qv({0, 1}), qv({1, 1})});
  for (const SignVector& sv : f.realizable()) {
    Cone c = f.cone_of(sv);
    // the lineality-free face obtained by zeroing one nonzero entry, when
    // realizable at a point of the original closure, is in the list
    for (size_t i = 0; i < sv.size(); ++i) {
      if (sv[i] == 0) continue;
      SignVector face = sv;
      face[i] = 0;
      // realizable iff the exact relint test passes; just check membership
      // consistency: every point with this exact sign pattern maps to face
      if (f.is_realizable(face)) {
        CHECK(f.cone_of(face).is_subset_of(c));
      }
    }
  }
}

TEST_CASE("floating sign vector honours the slab tolerance") {
  HyperplaneFan f = fan_from_hyperplanes({qv({1, 0})});
  Eigen::Vector2d x(1e-12, 1.0);
  CHECK(f.sign_vector_of(x, 1e-9) == SignVector{0});
  CHECK(f.sign_vector_of(Eigen::Vector2d(0.5, 1.0), 1e-9) == SignVector{1});
}

TEST_CASE("empty fan is the whole space") {
  HyperplaneFan f = empty_fan(3);
  CHECK(f.num_hyperplanes() == 0);
  REQUIRE(f.realizable().size() == 1);
  CHECK(f.realizable()[0].empty());
  CHECK(f.cone_of({}).is_full_space());
  CHECK(f.sign_vector_of(qv({1, 2, 3})).empty());
}

TEST_CASE("bad input is rejected") {
  CHECK_THROWS(fan_from_hyperplanes({}));
  CHECK_THROWS(fan_from_hyperplanes({qv({0, 0})}));
}
