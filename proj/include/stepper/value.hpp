#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace stepper {

/// Raised by primitives and by the reducers.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Symbol {
  std::string name;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct String {
  std::string text;
  friend bool operator==(const String&, const String&) = default;
};

/// Parsed content of an atom.  Rationals are always normalized and never
/// have denominator 1 (those collapse to mpz_class).
using Value = std::variant<mpz_class, mpq_class, double, bool, String, Symbol>;

bool values_equal(const Value& a, const Value& b);

bool is_number(const Value& v);
bool is_symbol(const Value& v);
bool is_symbol(const Value& v, std::string_view name);

/// Lexical classification of atom text.  Returns nullopt for text that
/// cannot be an atom (contains delimiters, bad string escapes, zero
/// denominator).
std::optional<Value> parse_atom_text(std::string_view text);

/// Canonical spelling used when a value is synthesized (primitive results).
/// Booleans are spelled #true / #false.
std::string spell(const Value& v);

namespace arith {

Value add(std::span<const Value> args);
Value subtract(std::span<const Value> args);
Value multiply(std::span<const Value> args);
Value divide(std::span<const Value> args);

Value less(std::span<const Value> args);
Value less_equal(std::span<const Value> args);
Value greater(std::span<const Value> args);
Value greater_equal(std::span<const Value> args);
Value numeric_equal(std::span<const Value> args);

Value eq(std::span<const Value> args);
Value eqv(std::span<const Value> args);

}  // namespace arith

}  // namespace stepper
