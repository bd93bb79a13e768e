#include "stepper/value.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <system_error>

namespace stepper {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

std::string_view strip_sign(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  return s;
}

mpz_class parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

bool looks_decimal(std::string_view s) {
  s = strip_sign(s);
  std::string_view mantissa = s;
  std::string_view exponent;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    exponent = strip_sign(s.substr(e + 1));
    if (!all_digits(exponent)) return false;
  }
  auto dot = mantissa.find('.');
  if (dot == std::string_view::npos) {
    return !exponent.empty() && all_digits(mantissa);
  }
  auto whole = mantissa.substr(0, dot);
  auto frac = mantissa.substr(dot + 1);
  if (!whole.empty() && !all_digits(whole)) return false;
  if (!frac.empty() && !all_digits(frac)) return false;
  return !whole.empty() || !frac.empty();
}

Value normalize(mpq_class q) {
  q.canonicalize();
  if (q.get_den() == 1) return mpz_class(q.get_num());
  return q;
}

std::optional<Value> parse_string_literal(std::string_view text) {
  if (text.size() < 2 || text.back() != '"') return std::nullopt;
  std::string out;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    char c = text[i];
    if (c == '\\') {
      if (i + 2 >= text.size()) return std::nullopt;
      char next = text[++i];
      if (next != '"' && next != '\\') return std::nullopt;
      out.push_back(next);
    } else if (c == '"') {
      return std::nullopt;
    } else {
      out.push_back(c);
    }
  }
  return String{std::move(out)};
}

// Numeric tower helpers.

enum class Rank { integer, rational, real };

Rank rank_of(const Value& v) {
  if (std::holds_alternative<mpz_class>(v)) return Rank::integer;
  if (std::holds_alternative<mpq_class>(v)) return Rank::rational;
  if (std::holds_alternative<double>(v)) return Rank::real;
  throw EvaluationError("expected a number, got " + spell(v));
}

mpq_class as_rational(const Value& v) {
  if (auto z = std::get_if<mpz_class>(&v)) return mpq_class(*z);
  return std::get<mpq_class>(v);
}

double as_real(const Value& v) {
  if (auto z = std::get_if<mpz_class>(&v)) return z->get_d();
  if (auto q = std::get_if<mpq_class>(&v)) return q->get_d();
  return std::get<double>(v);
}

Rank join(std::span<const Value> args) {
  Rank r = Rank::integer;
  for (const auto& a : args) r = std::max(r, rank_of(a));
  return r;
}

Value check_finite(double d) {
  if (!std::isfinite(d)) throw EvaluationError("non-finite arithmetic result");
  return d;
}

template <typename RealOp, typename ExactOp>
Value fold(std::span<const Value> args, RealOp real_op, ExactOp exact_op) {
  if (join(args) == Rank::real) {
    double acc = as_real(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) acc = real_op(acc, as_real(args[i]));
    return check_finite(acc);
  }
  mpq_class acc = as_rational(args[0]);
  for (std::size_t i = 1; i < args.size(); ++i) acc = exact_op(acc, as_rational(args[i]));
  return normalize(acc);
}

int compare_numbers(const Value& a, const Value& b) {
  if (rank_of(a) == Rank::real || rank_of(b) == Rank::real) {
    double x = as_real(a), y = as_real(b);
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  return cmp(as_rational(a), as_rational(b));
}

Value chain(std::span<const Value> args, const std::function<bool(int)>& holds) {
  if (args.empty()) throw EvaluationError("comparison needs at least one argument");
  rank_of(args[0]);
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (!holds(compare_numbers(args[i - 1], args[i]))) {
      // Still type-check the remaining operands.
      for (std::size_t j = i + 1; j < args.size(); ++j) rank_of(args[j]);
      return false;
    }
  }
  return true;
}

void require_arity(std::span<const Value> args, std::size_t n, const char* name) {
  if (args.size() != n) {
    throw EvaluationError(std::string(name) + " expects " + std::to_string(n) + " arguments");
  }
}

}  // namespace

bool values_equal(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, mpz_class> || std::is_same_v<T, mpq_class>) {
          return cmp(x, y) == 0;
        } else {
          return x == y;
        }
      },
      a);
}

bool is_number(const Value& v) {
  return std::holds_alternative<mpz_class>(v) || std::holds_alternative<mpq_class>(v) ||
         std::holds_alternative<double>(v);
}

bool is_symbol(const Value& v) { return std::holds_alternative<Symbol>(v); }

bool is_symbol(const Value& v, std::string_view name) {
  auto s = std::get_if<Symbol>(&v);
  return s != nullptr && s->name == name;
}

std::optional<Value> parse_atom_text(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '"') return parse_string_literal(text);
  for (char c : text) {
    if (c == '(' || c == ')' || c == '"' || c == ';' || c == '\'' || c == ' ' || c == '\t' ||
        c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      return std::nullopt;
    }
  }
  if (text == "#t" || text == "#true") return true;
  if (text == "#f" || text == "#false") return false;

  auto unsigned_part = strip_sign(text);
  if (all_digits(unsigned_part)) return parse_integer(text);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (all_digits(strip_sign(num)) && all_digits(den)) {
      mpz_class d = parse_integer(den);
      if (d == 0) return std::nullopt;
      return normalize(mpq_class(parse_integer(num), d));
    }
  }

  if (looks_decimal(text)) {
    double d = 0;
    auto body = text.front() == '+' ? text.substr(1) : text;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), d);
    if (ec == std::errc() && ptr == body.data() + body.size()) return d;
  }

  return Symbol{std::string(text)};
}

std::string spell(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, mpz_class>) {
          return x.get_str();
        } else if constexpr (std::is_same_v<T, mpq_class>) {
          return x.get_num().get_str() + "/" + x.get_den().get_str();
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[64];
          auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
          std::string s(buf, ptr);
          if (s.find_first_of(".e") == std::string::npos) s += ".0";
          return s;
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "#true" : "#false";
        } else if constexpr (std::is_same_v<T, String>) {
          std::string out = "\"";
          for (char c : x.text) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
          }
          return out + "\"";
        } else {
          return x.name;
        }
      },
      v);
}

namespace arith {

Value add(std::span<const Value> args) {
  if (args.empty()) return mpz_class(0);
  return fold(args, std::plus<double>(), [](const mpq_class& a, const mpq_class& b) {
    return mpq_class(a + b);
  });
}

Value multiply(std::span<const Value> args) {
  if (args.empty()) return mpz_class(1);
  return fold(args, std::multiplies<double>(), [](const mpq_class& a, const mpq_class& b) {
    return mpq_class(a * b);
  });
}

Value subtract(std::span<const Value> args) {
  if (args.empty()) throw EvaluationError("- expects at least one argument");
  if (args.size() == 1) {
    const Value zero = mpz_class(0);
    const Value pair[] = {zero, args[0]};
    return subtract(pair);
  }
  return fold(args, std::minus<double>(), [](const mpq_class& a, const mpq_class& b) {
    return mpq_class(a - b);
  });
}

Value divide(std::span<const Value> args) {
  if (args.empty()) throw EvaluationError("/ expects at least one argument");
  if (args.size() == 1) {
    const Value one = mpz_class(1);
    const Value pair[] = {one, args[0]};
    return divide(pair);
  }
  return fold(args, std::divides<double>(), [](const mpq_class& a, const mpq_class& b) {
    if (b == 0) throw EvaluationError("division by zero");
    return mpq_class(a / b);
  });
}

Value less(std::span<const Value> args) {
  return chain(args, [](int c) { return c < 0; });
}
Value less_equal(std::span<const Value> args) {
  return chain(args, [](int c) { return c <= 0; });
}
Value greater(std::span<const Value> args) {
  return chain(args, [](int c) { return c > 0; });
}
Value greater_equal(std::span<const Value> args) {
  return chain(args, [](int c) { return c >= 0; });
}
Value numeric_equal(std::span<const Value> args) {
  return chain(args, [](int c) { return c == 0; });
}

// Strings are never eq?: each string literal is a distinct object.
Value eqv(std::span<const Value> args) {
  require_arity(args, 2, "eqv?");
  if (std::holds_alternative<String>(args[0])) return false;
  return values_equal(args[0], args[1]);
}

Value eq(std::span<const Value> args) {
  require_arity(args, 2, "eq?");
  return eqv(args);
}

}  // namespace arith

}  // namespace stepper
