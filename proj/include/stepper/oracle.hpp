#pragma once

// Plain-tree reducer: identities and spacing are erased, no provenance is
// recorded.  It is the reference the provenance-tracking reducer is checked
// against, so it shares nothing with it beyond the context's primitives.

#include "stepper/context.hpp"
#include "stepper/syntax.hpp"
#include "stepper/value.hpp"

#include <string>
#include <variant>
#include <vector>

namespace stepper::eval {

struct Datum;

struct DatumList {
  std::vector<Datum> items;
  std::vector<Datum> tail;  // empty, or the single dotted tail
};

struct Datum {
  std::variant<Value, DatumList> node;

  bool is_list() const { return std::holds_alternative<DatumList>(node); }
  const DatumList& list() const { return std::get<DatumList>(node); }
  const Value& value() const { return std::get<Value>(node); }
};

bool operator==(const Datum& a, const Datum& b);

Datum erase(const syntax::Expr& e);
std::string to_string(const Datum& d);

/// One step of substitution-model reduction on a plain tree.  Returns the
/// input unchanged (by value) when it is in normal form.
Datum reduce_simple(const Datum& expr, const EvaluationContext& ctx);

}  // namespace stepper::eval
