#include <doctest.h>

#include <cmath>

#include "bogo/json_io.hpp"
#include "bogo/model.hpp"
#include "fixtures.hpp"

using namespace bogo;

TEST_CASE("momentum arithmetic and norms") {
  const Momentum p{1, -2};
  CHECK(p.lattice_norm2() == 5);
  CHECK(p.norm2() == doctest::Approx(5.0 * two_pi * two_pi).epsilon(1e-15));
  CHECK((p + (-p)).is_zero());
  CHECK((p - p) == Momentum::zero(2));
  CHECK(p.to_string() == "(1,-2)");
  CHECK(Momentum{0, 1} < Momentum{1, 0});
  CHECK_THROWS_AS(Momentum{1} + Momentum({1, 0}), std::invalid_argument);
}

TEST_CASE("mode sets") {
  const auto m1 = build_mode_set(1, two_pi, true);
  REQUIRE(m1.size() == 3);
  CHECK(m1[0] == Momentum{-1});
  CHECK(m1[1] == Momentum{0});
  CHECK(m1[2] == Momentum{1});
  CHECK(build_mode_set(1, two_pi, false).size() == 2);
  CHECK(build_mode_set(2, two_pi, true).size() == 5);
  CHECK(build_mode_set(3, two_pi, true).size() == 7);
  CHECK(build_mode_set(2, two_pi * std::sqrt(2.0), true).size() == 9);
  CHECK(build_mode_set(1, 0.0, true).size() == 1);
  CHECK(build_mode_set(1, 0.0, false).empty());

  const auto m2 = build_mode_set(2, 2.0 * two_pi, true);
  for (std::size_t i = 1; i < m2.size(); ++i) CHECK(m2[i - 1] < m2[i]);

  CHECK_THROWS_AS(build_mode_set(3, 10 * two_pi, true, 100), ResourceLimit);
  CHECK_THROWS_AS(build_mode_set(0, 1.0, true), std::invalid_argument);
  CHECK_THROWS_AS(build_mode_set(1, -1.0, true), std::invalid_argument);
}

TEST_CASE("potential validation") {
  CHECK(validate_potential(PotentialSpec::pair(Momentum{1}, 1.0)).empty());
  CHECK(validate_potential(PotentialSpec::band(2, 2 * two_pi, 0.5, 3.0)).empty());

  const PotentialSpec odd(1, {{Momentum{1}, 1.0}, {Momentum{-1}, 0.5}});
  const auto odd_report = validate_potential(odd);
  REQUIRE(odd_report.size() == 1);
  CHECK(odd_report[0].rfind("evenness at p=2pi*(1)", 0) == 0);

  const PotentialSpec half(1, {{Momentum{2}, 1.0}});
  REQUIRE(validate_potential(half).size() == 1);

  const PotentialSpec negative(1, {{Momentum{1}, -1.0}, {Momentum{-1}, -1.0}});
  const auto neg_report = validate_potential(negative);
  CHECK(neg_report.size() == 2);
  CHECK(neg_report[0].find("nonnegativity") != std::string::npos);

  const PotentialSpec nan(1, {{Momentum{0}, std::nan("")}});
  REQUIRE(validate_potential(nan).size() == 1);
  CHECK(validate_potential(nan)[0].find("finiteness") != std::string::npos);
}

TEST_CASE("potential accessors") {
  const auto band = PotentialSpec::band(1, 2 * two_pi, 1.0, 0.25);
  CHECK(band.coefficients().size() == 5);
  CHECK(band(Momentum{2}) == 1.0);
  CHECK(band(Momentum{3}) == 0.0);
  CHECK(band.zero_mode() == 0.25);
  CHECK(band.support_radius() == doctest::Approx(2 * two_pi));
  CHECK(band.value_at_origin() == doctest::Approx(4.25));
  CHECK(PotentialSpec::zero(2).support_radius() == 0.0);
}

TEST_CASE("real-space evaluation") {
  const auto pair = PotentialSpec::pair(Momentum{1}, 1.0);
  const double x0[] = {0.0};
  const double xh[] = {0.5};
  const double xq[] = {0.25};
  CHECK(real_space_eval(pair, x0) == doctest::Approx(2.0));
  CHECK(real_space_eval(pair, xh) == doctest::Approx(-2.0));
  CHECK(std::abs(real_space_eval(pair, xq)) < 1e-14);

  const PotentialSpec odd(1, {{Momentum{1}, 1.0}});
  CHECK_THROWS_AS(real_space_eval(odd, xq), std::domain_error);
  const double bad[] = {0.0, 0.0};
  CHECK_THROWS_AS(real_space_eval(pair, bad), std::invalid_argument);
}

TEST_CASE("zero-mode normalization") {
  const auto spec = PotentialSpec::band(1, two_pi, 1.0, 0.75);
  const auto shift = normalize_zero_mode(spec);
  CHECK(shift.w0 == 0.75);
  CHECK(shift.spec.zero_mode() == 0.0);
  CHECK(shift.spec(Momentum{1}) == 1.0);
  CHECK(shift.energy_offset(0.5, 4) == doctest::Approx(0.5 * 0.75 * 6.0));
  const auto again = normalize_zero_mode(shift.spec);
  CHECK(again.w0 == 0.0);
  CHECK(again.spec == shift.spec);
}

TEST_CASE("model validation") {
  auto m = fixtures::one_pair(4, 0.25);
  CHECK(validate_model(m).empty());
  CHECK(validate_model(m, true).empty());
  m.lambda = 1.0;
  CHECK(validate_model(m, true).size() == 1);
  m.N = 0;
  CHECK(!validate_model(m).empty());
  m = fixtures::one_pair();
  m.d = 2;
  CHECK(!validate_model(m).empty());
}

TEST_CASE("model JSON round trip and strict parsing") {
  auto m = fixtures::band(6, 1.0 / 6.0);
  m.potential = PotentialSpec(1, m.potential.coefficients(), 0.125);
  const auto j = to_json(m);
  CHECK(model_from_json(j) == m);
  CHECK(model_from_json(nlohmann::json::parse(canonical_serialization(m))) == m);

  auto missing = j;
  missing.erase("N");
  try {
    model_from_json(missing);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("'N'") != std::string::npos);
  }
  auto unknown = j;
  unknown["extra"] = 1;
  CHECK_THROWS_AS(model_from_json(unknown), std::invalid_argument);

  auto dup = j;
  dup["potential"]["entries"].push_back({1, 2.0});
  CHECK_THROWS_AS(model_from_json(dup), std::invalid_argument);
}

TEST_CASE("canonical serialization") {
  const auto m = fixtures::one_pair(3, 1.0 / 3.0);
  const auto s = canonical_serialization(m);
  CHECK(s == canonical_serialization(m));
  CHECK(s.find("0.33333333333333331") != std::string::npos);
  auto m2 = m;
  m2.lambda *= 1.0 + 1e-12;
  CHECK(canonical_serialization(m2) != s);
  CHECK(s.find(R"("N":3,"d":1)") != std::string::npos);

  CHECK(format_double(1.0) == "1.0");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1e-20) == "9.9999999999999995e-21");
  CHECK(dump_canonical(nlohmann::json(std::nan(""))) == "null");
}
