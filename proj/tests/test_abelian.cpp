#include <doctest.h>

#include "pcdeg/abelian.hpp"

using namespace pcdeg;

TEST_CASE("mod_reduce canonical representatives") {
  CHECK(mod_reduce(7, 3) == 1);
  CHECK(mod_reduce(-1, 12) == 11);
  CHECK(mod_reduce(-24, 12) == 0);
  CHECK(mod_reduce(0, 5) == 0);
  CHECK(mod_reduce(5, 1) == 0);
  CHECK(mod_reduce(-7, 0) == -7); /* infinite factor: identity */
  CHECK(mod_reduce(42, 0) == 42);
  CHECK_THROWS_AS(mod_reduce(1, -2), std::invalid_argument);
}

TEST_CASE("group structure queries") {
  AbGroup g({12, 2});
  CHECK(g.factor_count() == 2);
  CHECK(g.order(0) == 12);
  CHECK(g.is_finite());
  CHECK(!g.is_trivial());
  CHECK(g.exponent() == 12);
  CHECK(g.size() == 24);

  AbGroup trivial({1, 1});
  CHECK(trivial.is_trivial());
  CHECK(trivial.exponent() == 1);
  CHECK(trivial.size() == 1);

  AbGroup none(std::vector<Int>{});
  CHECK(none.is_trivial());
  CHECK(none.is_finite());
  CHECK(none.size() == 1);

  AbGroup free({0, 3});
  CHECK(!free.is_finite());
  CHECK(!free.exponent().has_value());
  CHECK(!free.size().has_value());

  CHECK_THROWS_AS(AbGroup({-2}), std::invalid_argument);
  CHECK_THROWS_AS(AbGroup({2, 2}, {"only-one"}), std::invalid_argument);
}

TEST_CASE("group equality ignores names") {
  CHECK(AbGroup({12}, {"w"}) == AbGroup({12}, {"v"}));
  CHECK(AbGroup({12}) != AbGroup({12, 1}));
  CHECK(AbGroup({2, 4}) != AbGroup({4, 2}));
}

TEST_CASE("generator names fall back to positional labels") {
  AbGroup g({2, 2}, {"eps1", "eps2"});
  CHECK(g.name(0) == "eps1");
  AbGroup anon({2, 2});
  CHECK(anon.name(1) == "g1");
  CHECK_THROWS_AS(anon.name(2), std::out_of_range);
}

TEST_CASE("element coefficients stay canonical") {
  GroupPtr g = AbGroup::make({12, 0});
  GroupElement e(g, {-1, -5});
  CHECK(e.coeff(0) == 11);
  CHECK(e.coeff(1) == -5); /* infinite factor keeps the raw value */

  GroupElement z = GroupElement::zero(g);
  CHECK(z.is_zero());
  CHECK(z.coeffs() == std::vector<Int>{0, 0});

  CHECK_THROWS_AS(GroupElement(g, {1}), std::invalid_argument);
  CHECK_THROWS_AS(GroupElement(nullptr, {}), std::invalid_argument);
}

TEST_CASE("element arithmetic") {
  GroupPtr g = AbGroup::make({12});
  GroupElement a(g, {7}), b(g, {8});
  CHECK((a + b).coeff(0) == 3);
  CHECK((5 * a).coeff(0) == 11);
  CHECK((-1 * a).coeff(0) == 5);
  CHECK((0 * a).is_zero());
  CHECK(a == GroupElement(g, {19}));
  CHECK(a != b);

  GroupPtr h = AbGroup::make({6});
  GroupElement c(h, {1});
  CHECK_THROWS_AS(a + c, std::invalid_argument);
  try {
    a + c;
  } catch (const std::invalid_argument& e) {
    /* mismatch message names both groups */
    std::string msg = e.what();
    CHECK(msg.find("[12]") != std::string::npos);
    CHECK(msg.find("[6]") != std::string::npos);
  }
}

TEST_CASE("element order") {
  GroupPtr g = AbGroup::make({12, 2});
  CHECK(GroupElement(g, {6, 0}).order() == 2);
  CHECK(GroupElement(g, {4, 0}).order() == 3);
  CHECK(GroupElement(g, {1, 1}).order() == 12);
  CHECK(GroupElement(g, {0, 0}).order() == 1);

  GroupPtr f = AbGroup::make({0});
  CHECK(!GroupElement(f, {3}).order().has_value());
  CHECK(GroupElement(f, {0}).order() == 1);
}

TEST_CASE("scalar overflow guard on infinite factors") {
  GroupPtr f = AbGroup::make({0});
  GroupElement big(f, {1LL << 61});
  CHECK_THROWS_AS(100 * big, std::overflow_error);
}
