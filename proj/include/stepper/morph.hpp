#pragma once

#include "stepper/layout.hpp"
#include "stepper/provenance.hpp"
#include "stepper/render.hpp"

#include <functional>

namespace stepper::morph {

using syntax::Expr;

double lerp(double from, double to, double at);

/// What draw_tween decided for one element.
struct DrawEvent {
  enum class Kind { emerging, equal, boxes, tiles };
  Kind kind;
  const syntax::Node* foreground;  // null for gaps and dots
  const syntax::Node* background;  // null unless a counterpart was drawn
  double left;
  double top;
  double progress;  // intensity handed to the element's layer
  bool final_layer;
};

using Tracer = std::function<void(const DrawEvent&)>;

/// Interpolated rendering of one reduction step.
class Morph {
 public:
  Morph(Expr initial, Expr final, eval::ProvenanceStore link);

  /// Same step played backwards: endpoints and maps exchanged.
  Morph reversed() const;

  const Expr& initial() const { return initial_; }
  const Expr& final() const { return final_; }
  const eval::ProvenanceStore& link() const { return link_; }

  double progress() const { return progress_; }
  void set_progress(double p);

  layout::Extent initial_extent() const { return initial_layout_.extent(); }
  layout::Extent final_extent() const { return final_layout_.extent(); }
  layout::Extent maximum_extent() const;

  const layout::Layout& initial_layout() const { return initial_layout_; }
  const layout::Layout& final_layout() const { return final_layout_; }

  /// Layered draw: the layer with the lower intensity goes
  /// first so the other one paints over it.
  void draw(render::Painter& painter, const Tracer& tracer = {}) const;

  render::CellGrid render(render::Style style = render::Style::unicode,
                          const Tracer& tracer = {}) const;

 private:
  Expr initial_;
  Expr final_;
  eval::ProvenanceStore link_;
  layout::Layout initial_layout_;
  layout::Layout final_layout_;
  double progress_ = 0.0;
};

}  // namespace stepper::morph
