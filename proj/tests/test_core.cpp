#include "finsler/core.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace finsler;

TEST_CASE("dimension condition classifies parameter regimes") {
  CHECK(validate_dimension_condition(2, 0, 2) == CaseTag::HPW);
  CHECK(validate_dimension_condition(2, 0, 5) == CaseTag::HPW);
  CHECK(validate_dimension_condition(2, 2, 3) == CaseTag::Hardy);
  CHECK(validate_dimension_condition(2, 2, 2) == CaseTag::Invalid);
  CHECK(validate_dimension_condition(3, 1, 3) == CaseTag::CKN);
  // n = 2(p-q)/(p-2) = 4 is excluded.
  CHECK(validate_dimension_condition(3, 1, 4) == CaseTag::Invalid);
  CHECK(validate_dimension_condition(3, 1, 2) == CaseTag::Invalid);
  CHECK(validate_dimension_condition(1.5, 1, 3) == CaseTag::Invalid);
  CHECK(validate_dimension_condition(NAN, 0, 3) == CaseTag::Invalid);
}

TEST_CASE("sharp constant") {
  CHECK(sharp_constant(2, 0, 2) == doctest::Approx(1.0));
  CHECK(sharp_constant(2, 2, 3) == doctest::Approx(0.25));
  CHECK(sharp_constant(3, 1, 3) == doctest::Approx(4.0 / 9.0));
  CHECK_THROWS_AS(sharp_constant(2, 2, 2), Error);
}

TEST_CASE("unit ball volume") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
  CHECK(unit_ball_volume(4) == doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0));
}

TEST_CASE("numeric config validation") {
  NumericConfig c;
  CHECK_NOTHROW(c.validate());
  c.quad_tol = -1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.indicatrix_samples = 2;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("errors carry their code") {
  try {
    fail(ErrorCode::ZeroVector, "zero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVector);
  }
  CHECK(to_string(ErrorCode::DomainViolation) != to_string(ErrorCode::Parse));
}
