#include "stepper/value.hpp"

#include <doctest.h>

#include <vector>

using namespace stepper;

namespace {

Value num(const char* text) { return *parse_atom_text(text); }

Value call(Value (*fn)(std::span<const Value>), std::vector<Value> args) { return fn(args); }

}  // namespace

TEST_CASE("atom text classification") {
  CHECK(std::holds_alternative<mpz_class>(num("42")));
  CHECK(std::holds_alternative<mpz_class>(num("-7")));
  CHECK(std::holds_alternative<mpz_class>(num("+3")));
  CHECK(std::holds_alternative<mpq_class>(num("1/2")));
  CHECK(std::holds_alternative<mpz_class>(num("4/2")));
  CHECK(std::holds_alternative<double>(num("0.25")));
  CHECK(std::get<bool>(num("#t")));
  CHECK_FALSE(std::get<bool>(num("#false")));
  CHECK(std::get<String>(num("\"a \\\"b\\\"\"")).text == "a \"b\"");
  CHECK(is_symbol(num("foo")));
  CHECK(is_symbol(num("+")));
  CHECK(is_symbol(num("...")));
  CHECK_FALSE(parse_atom_text("1/0").has_value());
  CHECK_FALSE(parse_atom_text("a(b").has_value());
  CHECK_FALSE(parse_atom_text("").has_value());
}

TEST_CASE("synthesized spellings") {
  CHECK(spell(Value{false}) == "#false");
  CHECK(spell(Value{true}) == "#true");
  CHECK(spell(num("6/4")) == "3/2");
  CHECK(spell(Value{2.0}) == "2.0");
  CHECK(spell(Value{0.5}) == "0.5");
  CHECK(spell(Value{String{"q\"x"}}) == "\"q\\\"x\"");
}

TEST_CASE("exact arithmetic") {
  CHECK(values_equal(call(arith::add, {num("2"), num("3")}), num("5")));
  CHECK(values_equal(call(arith::multiply, {num("5"), num("4")}), num("20")));
  CHECK(values_equal(call(arith::divide, {num("1"), num("3")}), num("1/3")));
  CHECK(values_equal(call(arith::divide, {num("8"), num("4")}), num("2")));
  CHECK(std::holds_alternative<mpz_class>(call(arith::add, {num("1/2"), num("1/2")})));
  CHECK(values_equal(call(arith::subtract, {num("5")}), num("-5")));
  CHECK(values_equal(call(arith::add, {}), num("0")));
  CHECK(values_equal(call(arith::multiply, {}), num("1")));
}

TEST_CASE("big integers do not overflow") {
  Value f = num("1");
  for (int i = 1; i <= 25; ++i) f = call(arith::multiply, {f, Value{mpz_class(i)}});
  CHECK(spell(f) == "15511210043330985984000000");
}

TEST_CASE("floats are contagious") {
  auto r = call(arith::multiply, {num("1.5"), num("2")});
  REQUIRE(std::holds_alternative<double>(r));
  CHECK(std::get<double>(r) == 3.0);
}

TEST_CASE("comparisons") {
  CHECK_FALSE(std::get<bool>(call(arith::less_equal, {num("5"), num("1")})));
  CHECK(std::get<bool>(call(arith::less_equal, {num("1"), num("1")})));
  CHECK(std::get<bool>(call(arith::less, {num("1"), num("2"), num("3")})));
  CHECK_FALSE(std::get<bool>(call(arith::less, {num("1"), num("3"), num("2")})));
  CHECK(std::get<bool>(call(arith::numeric_equal, {num("1/2"), num("0.5")})));
  CHECK(std::get<bool>(call(arith::greater_equal, {num("3"), num("3")})));
  CHECK(std::get<bool>(call(arith::greater, {num("4"), num("3")})));
}

TEST_CASE("identity predicates") {
  CHECK(std::get<bool>(call(arith::eq, {num("a"), num("a")})));
  CHECK_FALSE(std::get<bool>(call(arith::eq, {num("a"), num("b")})));
  CHECK(std::get<bool>(call(arith::eqv, {num("2"), num("2")})));
  CHECK_FALSE(std::get<bool>(call(arith::eqv, {num("2"), num("2.0")})));
  CHECK_THROWS_AS(call(arith::eq, {num("a")}), EvaluationError);
}

TEST_CASE("arithmetic errors") {
  CHECK_THROWS_AS(call(arith::divide, {num("1"), num("0")}), EvaluationError);
  CHECK_THROWS_AS(call(arith::add, {num("1"), num("x")}), EvaluationError);
  CHECK_THROWS_AS(call(arith::less, {num("\"a\""), num("1")}), EvaluationError);
}
