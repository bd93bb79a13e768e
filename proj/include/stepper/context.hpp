#pragma once

#include "stepper/syntax.hpp"
#include "stepper/value.hpp"

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace stepper::eval {

using syntax::Expr;

using Primitive = std::function<Value(std::span<const Value>)>;

/// A name is bound either to a host primitive or to an expression (a lambda
/// for function definitions).
using Binding = std::variant<Primitive, Expr>;

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EvaluationContext {
 public:
  bool defines(const std::string& name) const { return definitions_.contains(name); }
  bool is_primitive(const std::string& name) const;
  bool defines_macro(const std::string&) const { return false; }

  /// Throws EvaluationError("undefined symbol: ...") for unknown names.
  const Binding& value(const std::string& name) const;

  void define(const std::string& name, Binding binding);

 private:
  std::map<std::string, Binding> definitions_;
};

/// Context with + - * / < <= > >= = eq? eqv? bound to host arithmetic.
EvaluationContext default_context();

/// Installs `(define (name args...) body)` as `(lambda (args...) body)` and
/// `(define name expr)` as `expr`.  Anything else is a LoadError naming the
/// offending form.
void load_prelude(EvaluationContext& ctx, std::span<const Expr> definitions);

/// Parses and loads a prelude source text.
void load_prelude(EvaluationContext& ctx, std::string_view source);

}  // namespace stepper::eval
