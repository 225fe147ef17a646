#include <doctest.h>

#include <functional>
#include <string>

#include "pcdeg/tables.hpp"

using namespace pcdeg;

namespace {

bool throws_with(const std::function<void()>& f, const std::string& needle) {
  try {
    f();
  } catch (const std::exception& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

} // namespace

TEST_CASE("built-in coefficient data") {
  GroupTable t4 = builtin_table(4);
  CHECK(t4.n == 4);
  CHECK(t4.g1->orders() == std::vector<Int>{12});
  CHECK(t4.g2->orders() == std::vector<Int>{2});
  CHECK(t4.eta_push.images == std::vector<std::vector<Int>>{{6}});
  CHECK(t4.whitehead_eta.is_zero());
  CHECK(t4.hopf_h.images == std::vector<std::vector<Int>>{{1}});
  CHECK(t4.g1->name(0) == "w");

  GroupTable t5 = builtin_table(5);
  CHECK(t5.g1->orders() == std::vector<Int>{2, 2});
  CHECK(t5.g2->orders() == std::vector<Int>{24});
  CHECK(t5.eta_push.images == std::vector<std::vector<Int>>{{0, 1}});
  CHECK(t5.whitehead_eta.coeffs() == std::vector<Int>{0, 1});
  CHECK(t5.hopf_h.images == std::vector<std::vector<Int>>{{1}, {0}});
  CHECK(t5.g1->name(1) == "eps2");

  GroupTable t6 = builtin_table(6);
  CHECK(t6.g1->orders() == std::vector<Int>{2});
  CHECK(t6.g2->is_trivial());
  CHECK(t6.g2->factor_count() == 0);
  CHECK(t6.eta_push.is_zero());
  CHECK(t6.whitehead_eta.coeffs() == std::vector<Int>{1});
  CHECK(t6.hopf_h.is_zero());

  GroupTable t7 = builtin_table(7);
  CHECK(t7.g1->orders() == std::vector<Int>{2});
  CHECK(t7.g2->factor_count() == 0);
  CHECK(t7.whitehead_eta.is_zero());
  CHECK(t7.hopf_h.is_zero());

  CHECK_THROWS_AS(builtin_table(3), std::invalid_argument);
  CHECK_THROWS_AS(builtin_table(8), std::invalid_argument);
}

TEST_CASE("block moduli") {
  auto check_moduli = [](int n, Int a, Int c, Int d) {
    Moduli m = required_moduli(builtin_table(n));
    CHECK(m.a == a);
    CHECK(m.c == c);
    CHECK(m.d == d);
  };
  check_moduli(4, 12, 2, 2);
  check_moduli(5, 4, 2, 24);
  check_moduli(6, 4, 2, 1);
  check_moduli(7, 2, 2, 1);
}

TEST_CASE("hom application and defect detection") {
  GroupPtr g2 = AbGroup::make({24});
  GroupPtr g1 = AbGroup::make({2, 2});
  GroupHom eta = make_hom(g2, g1, {{0, 1}});
  CHECK(eta.apply(GroupElement(g2, {1})) == GroupElement(g1, {0, 1}));
  CHECK(eta.apply(GroupElement(g2, {2})).is_zero());
  CHECK(eta.apply(GroupElement(g2, {7})) == GroupElement(g1, {0, 1}));
  CHECK_THROWS_AS(eta.apply(GroupElement(g1, {1, 0})), std::invalid_argument);

  /* generator of order 2 cannot map to an element of order 4 */
  GroupPtr z2 = AbGroup::make({2});
  GroupPtr z8 = AbGroup::make({8});
  CHECK(throws_with([&] { make_hom(z2, z8, {{2}}); }, "not killed"));
  CHECK(make_hom(z2, z8, {{4}}).images[0][0] == 4);

  /* infinite cyclic generators map anywhere */
  GroupPtr z = AbGroup::make({0});
  CHECK(make_hom(z, z8, {{3}}).images[0][0] == 3);

  /* canonicalization */
  CHECK(make_hom(z2, z8, {{-4}}).images[0][0] == 4);

  CHECK(hom_defect(GroupHom{z2, z8, {}}).has_value());
  CHECK(hom_defect(GroupHom{z2, z8, {{1, 2}}}).has_value());
  CHECK(!hom_defect(zero_hom(z2, z8)).has_value());
}

TEST_CASE("image exponent") {
  GroupPtr g = AbGroup::make({12});
  GroupPtr h = AbGroup::make({2, 2});
  CHECK(image_exponent(make_hom(AbGroup::make({2}), g, {{6}})) == 2);
  CHECK(image_exponent(zero_hom(h, g)) == 1);
  CHECK(image_exponent(make_hom(AbGroup::make({24}), g, {{1}})) == 12);
}

TEST_CASE("table validation messages") {
  GroupTable t = builtin_table(5);
  t.n = 3;
  CHECK(throws_with([&] { validate_table(t); }, "table needs n >= 4"));

  /* an order-4 fake bracket element */
  GroupPtr wide = AbGroup::make({4});
  GroupTable t2;
  t2.n = 5;
  t2.g1 = wide;
  t2.g2 = AbGroup::make({2});
  t2.eta_push = zero_hom(t2.g2, t2.g1);
  t2.whitehead_eta = GroupElement(wide, {1});
  t2.hopf_h = zero_hom(wide, AbGroup::z2());
  CHECK(throws_with([&] { validate_table(t2); }, "whitehead_eta must be 2-torsion"));

  GroupTable t3 = builtin_table(5);
  t3.n = 8;
  t3.whitehead_eta = GroupElement(t3.g1, {0, 1});
  CHECK(throws_with([&] { validate_table(t3); },
                    "whitehead_eta: n = 7 or 4 | n forces zero"));

  GroupTable t4 = builtin_table(4);
  t4.eta_push = zero_hom(t4.g1, t4.g2); /* swapped groups */
  CHECK(throws_with([&] { validate_table(t4); }, "eta_push must map g2 to g1"));

  for (int n = 4; n <= 7; ++n) CHECK_NOTHROW(validate_table(builtin_table(n)));
}

TEST_CASE("table JSON round trip") {
  for (int n = 4; n <= 7; ++n) {
    GroupTable t = builtin_table(n);
    nlohmann::json doc = table_to_json(t);
    GroupTable back = load_table(doc);
    CHECK(back == t);
    /* names survive the trip too */
    CHECK(back.g1->names() == t.g1->names());
  }
}

TEST_CASE("table document validation") {
  nlohmann::json good = table_to_json(builtin_table(4));
  CHECK_NOTHROW(load_table(good));

  auto drop = [&](const char* key) {
    nlohmann::json doc = good;
    doc.erase(key);
    return doc;
  };
  CHECK(throws_with([&] { load_table(drop("n")); }, "missing \"n\""));
  CHECK(throws_with([&] { load_table(drop("g1_orders")); }, "missing \"g1_orders\""));
  CHECK(throws_with([&] { load_table(drop("eta_push")); }, "missing \"eta_push\""));

  nlohmann::json bad_rows = good;
  bad_rows["eta_push"] = nlohmann::json::array({std::vector<Int>{6}, std::vector<Int>{0}});
  CHECK(throws_with([&] { load_table(bad_rows); }, "one row per g2 factor"));

  nlohmann::json bad_wh = good;
  bad_wh["whitehead_eta"] = std::vector<Int>{0, 0};
  CHECK(throws_with([&] { load_table(bad_wh); }, "one coefficient per g1 factor"));

  nlohmann::json not_int = good;
  not_int["g1_orders"] = nlohmann::json::array({"x"});
  CHECK(throws_with([&] { load_table(not_int); }, "must contain integers"));

  CHECK(throws_with([] { load_table(nlohmann::json::array()); },
                    "must be a JSON object"));
}

TEST_CASE("table equality is structural") {
  CHECK(builtin_table(4) == builtin_table(4));
  CHECK(builtin_table(4) != builtin_table(5));
  GroupTable renamed = builtin_table(4);
  renamed.g1 = AbGroup::make({12}, {"other"});
  CHECK(renamed == builtin_table(4)); /* names stay documentation */
}

TEST_CASE("default table is a valid empty shell") {
  GroupTable t;
  CHECK(t.n == 0);
  CHECK(t.g1->factor_count() == 0);
  CHECK(t.whitehead_eta.is_zero());
  CHECK_THROWS_AS(validate_table(t), std::invalid_argument); /* n too small */
}
