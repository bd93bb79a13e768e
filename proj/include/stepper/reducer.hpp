#pragma once

#include "stepper/context.hpp"
#include "stepper/provenance.hpp"
#include "stepper/syntax.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stepper::eval {

/// Parameters of a lambda matched against operand expressions.  `params`
/// and `rest_param` are the parameter atoms themselves (their identities
/// carry provenance).
struct Bindings {
  struct Positional {
    Expr param;
    Expr value;  // null when the call supplied too few operands
  };
  std::vector<Positional> positional;
  Expr rest_param;
  std::vector<Expr> rest_values;

  /// Throws EvaluationError for malformed parameter lists.
  static Bindings bind(const Expr& params, const std::vector<Expr>& operands);

  /// Bindings minus the names (re)bound by an inner parameter list.
  Bindings shadowed_by(const Expr& params) const;
};

bool self_evaluating(const Expr& e);

/// Operands are projected to host values, the primitive applied and the
/// result spelled as a fresh atom.
Expr apply_primitive(const EvaluationContext& ctx, const std::string& op,
                     const std::vector<Expr>& operands);

struct StepResult {
  Expr expr;
  ProvenanceStore provenance;
};

/// Single-step reducer that records, for every node of the result, the
/// nodes of the input it was made from.
class Reducer {
 public:
  Reducer(const EvaluationContext& ctx, ProvenanceStore& store) : ctx_(ctx), store_(store) {}

  Expr reduce(const Expr& e);

  Expr substitute(const Bindings& b, const Expr& body);
  Expr counterpart(const Expr& variable, const Bindings& b);
  Expr deep_copy(const Expr& e);
  void transfer_heritage(const Bindings& b);

 private:
  /// A reduced expression and whether it differs structurally from the input.
  struct Outcome {
    Expr expr;
    bool changed;
  };

  Outcome step(const Expr& e);
  Outcome reduce_atom(const Expr& e);
  Outcome reduce_if(const Expr& e);
  Outcome reduce_combination(const Expr& e);
  std::optional<Expr> reduce_operands(const Expr& combination);
  Expr rebuild(const Expr& shell, std::vector<Expr> children, Expr tail);

  const EvaluationContext& ctx_;
  ProvenanceStore& store_;
};

StepResult reduce_step(const Expr& expr, const EvaluationContext& ctx);

}  // namespace stepper::eval
