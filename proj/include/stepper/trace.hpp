#pragma once

#include "stepper/context.hpp"
#include "stepper/provenance.hpp"
#include "stepper/syntax.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>

namespace stepper::eval {

/// One expression of a trace.  `link` relates it to the previous snapshot
/// (empty for the first one).
struct Snapshot {
  Expr expr;
  ProvenanceStore link;
};

class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t step, const std::string& message);
  std::size_t step() const { return step_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t step_;
  std::string reason_;
};

/// Sequence of reduction steps, computed on demand.  Snapshots never change
/// once computed, so references stay valid while the trace grows.
class ReductionTrace {
 public:
  static constexpr std::size_t default_max_steps = 1000;

  ReductionTrace(Expr start, EvaluationContext ctx, std::size_t max_steps = default_max_steps);

  /// Computes one more snapshot.  Returns false when the trace was already
  /// complete or the step just taken proved it complete.  Throws TraceError
  /// (again on every later call) if reduction fails.
  bool extend();

  /// Extends until snapshot i exists; false if the trace ends before i.
  bool reach(std::size_t i);

  void extend_all();

  /// Snapshots computed so far.
  std::size_t size() const { return snapshots_.size(); }
  const Snapshot& operator[](std::size_t i) const { return snapshots_[i]; }
  const Snapshot& back() const { return snapshots_.back(); }

  /// True once no further snapshot can be produced.
  bool complete() const { return fixpoint_ || truncated_; }
  bool fixpoint() const { return fixpoint_; }
  bool truncated() const { return truncated_; }
  std::size_t max_steps() const { return max_steps_; }

  const EvaluationContext& context() const { return ctx_; }

 private:
  EvaluationContext ctx_;
  std::size_t max_steps_;
  std::deque<Snapshot> snapshots_;
  bool fixpoint_ = false;
  bool truncated_ = false;
  std::optional<TraceError> failure_;
};

/// Fully extended trace.
ReductionTrace reduction_trace(const Expr& expr, const EvaluationContext& ctx,
                               std::size_t max_steps = ReductionTrace::default_max_steps);

}  // namespace stepper::eval
