#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "phh/money.hpp"

using phh::Decimal;

TEST_CASE("decimal parsing covers integer and float lexemes") {
  auto zero = Decimal::parse("0");
  REQUIRE(zero);
  CHECK(!zero->float_form());
  CHECK(zero->to_string() == "0");

  auto zero_f = Decimal::parse("0.0");
  REQUIRE(zero_f);
  CHECK(zero_f->float_form());
  CHECK(zero_f->to_string() == "0.0");
  CHECK(*zero == *zero_f);  // numerically equal, forms differ

  auto three = Decimal::parse("3.0");
  REQUIRE(three);
  CHECK(three->to_string() == "3.0");

  auto grouped = Decimal::parse("1_000");
  REQUIRE(grouped);
  CHECK(grouped->to_string() == "1000");

  auto exp = Decimal::parse("1e6");
  REQUIRE(exp);
  CHECK(exp->float_form());
  CHECK(exp->to_string() == "1000000.0");

  auto frac = Decimal::parse("0.50");
  REQUIRE(frac);
  CHECK(frac->to_string() == "0.5");

  auto small = Decimal::parse("1.5e-2");
  REQUIRE(small);
  CHECK(small->to_string() == "0.015");

  auto neg = Decimal::parse("-2.5");
  REQUIRE(neg);
  CHECK(neg->is_negative());
  CHECK(neg->to_string() == "-2.5");
}

TEST_CASE("decimal parsing rejects what it cannot represent exactly") {
  CHECK(!Decimal::parse(""));
  CHECK(!Decimal::parse("abc"));
  CHECK(!Decimal::parse("007"));
  CHECK(!Decimal::parse(".5"));
  CHECK(!Decimal::parse("5."));
  CHECK(!Decimal::parse("inf"));
  CHECK(!Decimal::parse("-inf"));
  CHECK(!Decimal::parse("nan"));
  CHECK(!Decimal::parse("0x10"));
  CHECK(!Decimal::parse("1e-13"));       // finer than the supported scale
  CHECK(!Decimal::parse("1e40"));        // out of 64-bit range
  CHECK(!Decimal::parse("1__0"));
  CHECK(!Decimal::parse("_1"));
  CHECK(!Decimal::parse("1_"));
  CHECK(Decimal::parse("10_00.2_5"));
}

TEST_CASE("decimal arithmetic is exact") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 2000; ++iter) {
    auto make = [&rng] {
      std::int64_t units =
          static_cast<std::int64_t>(rng() % 2'000'000) - 1'000'000;
      int scale = static_cast<int>(rng() % 5);
      return *Decimal::from_units(units, scale, rng() % 2 == 0);
    };
    Decimal a = make(), b = make();
    CHECK((a + b) - b == a);
    CHECK((a + b) == (b + a));
  }

  // the classic binary-float trap: 0.1 + 0.2 == 0.3 exactly
  Decimal tenth = *Decimal::parse("0.1");
  Decimal fifth = *Decimal::parse("0.2");
  CHECK(tenth + fifth == *Decimal::parse("0.3"));
}

TEST_CASE("decimal comparison is numeric") {
  CHECK(*Decimal::parse("0.5") < *Decimal::parse("0.75"));
  CHECK(*Decimal::parse("2") == *Decimal::parse("2.0"));
  CHECK(*Decimal::parse("10") > *Decimal::parse("9.999"));
  CHECK(*Decimal::parse("-1") < *Decimal::parse("0"));
}

TEST_CASE("scaled unit extraction is exact or refuses") {
  Decimal half = *Decimal::parse("0.5");
  CHECK(half.units_at_scale(1) == 5);
  CHECK(half.units_at_scale(2) == 50);
  CHECK(!half.units_at_scale(0));
  Decimal five = *Decimal::parse("5");
  CHECK(five.units_at_scale(0) == 5);
  CHECK(five.units_at_scale(3) == 5000);
}

TEST_CASE("addition keeps the float form sticky") {
  Decimal a = *Decimal::parse("1.5");
  Decimal b = *Decimal::parse("2");
  CHECK((a + b).float_form());
  CHECK((a + b).to_string() == "3.5");
  Decimal c = *Decimal::parse("0.5");
  CHECK((a + c).to_string() == "2.0");  // stays float-form when whole
}
