#include "stepper/trace.hpp"

#include "stepper/reducer.hpp"

namespace stepper::eval {

TraceError::TraceError(std::size_t step, const std::string& message)
    : std::runtime_error("step " + std::to_string(step) + ": " + message),
      step_(step),
      reason_(message) {}

ReductionTrace::ReductionTrace(Expr start, EvaluationContext ctx, std::size_t max_steps)
    : ctx_(std::move(ctx)), max_steps_(max_steps) {
  snapshots_.push_back({std::move(start), {}});
}

bool ReductionTrace::extend() {
  if (failure_) throw *failure_;
  if (complete()) return false;
  const std::size_t step = snapshots_.size();
  StepResult next;
  try {
    next = reduce_step(snapshots_.back().expr, ctx_);
  } catch (const std::exception& e) {
    failure_.emplace(step, e.what());
    throw *failure_;
  }
  if (syntax::structural_equal(next.expr, snapshots_.back().expr)) {
    fixpoint_ = true;
    return false;
  }
  // At the cap the extra step only decides between fixpoint and truncation.
  if (step > max_steps_) {
    truncated_ = true;
    return false;
  }
  snapshots_.push_back({std::move(next.expr), std::move(next.provenance)});
  return true;
}

bool ReductionTrace::reach(std::size_t i) {
  while (snapshots_.size() <= i) {
    if (!extend()) return snapshots_.size() > i;
  }
  return true;
}

void ReductionTrace::extend_all() {
  while (extend()) {
  }
}

ReductionTrace reduction_trace(const Expr& expr, const EvaluationContext& ctx,
                               std::size_t max_steps) {
  ReductionTrace trace(expr, ctx, max_steps);
  trace.extend_all();
  return trace;
}

}  // namespace stepper::eval
