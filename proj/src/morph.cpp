#include "stepper/morph.hpp"

#include <algorithm>

namespace stepper::morph {

using layout::Layout;
using layout::Position;
using render::Painter;
using render::Translation;
using syntax::NodeId;

double lerp(double from, double to, double at) { return from + (to - from) * at; }

namespace {

/// One half of the morph: the elements of `source` travelling towards their
/// counterparts in `target`.
struct Layer {
  const Layout& source;
  const Layout& target;
  const eval::ProvenanceStore& link;
  bool use_origin;
  bool final_layer;
  Painter& painter;
  const Tracer& tracer;

  std::vector<Expr> counterparts(const Expr& e) const {
    auto ids = use_origin ? link.origin(e->id()) : link.progeny(e->id());
    std::vector<Expr> out;
    for (NodeId id : ids) {
      if (target.contains(id)) out.push_back(target.node(id));
    }
    return out;
  }

  void trace(DrawEvent::Kind kind, const syntax::Node* fg, const syntax::Node* bg, double left,
             double top, double progress) const {
    if (tracer) tracer({kind, fg, bg, left, top, progress, final_layer});
  }

  void tween(const Expr& e, double intensity, bool only_with_relatives) const {
    auto links = counterparts(e);
    if (links.empty()) {
      emerging(e, intensity);
      if (e->is_list()) children(e, intensity, only_with_relatives);
      return;
    }
    for (const auto& x : links) draw_morph(e, x, intensity, only_with_relatives);
  }

  /// Traverses the interior of `list`: children recurse, gaps and the dot
  /// can only fade.
  void children(const Expr& list, double intensity, bool only_with_relatives) const {
    for (const auto& item : source.items(list->id())) {
      if (auto child = std::get_if<Expr>(&item.element)) {
        tween(*child, intensity, only_with_relatives);
      } else if (!item.pieces.empty()) {
        trace(DrawEvent::Kind::emerging, nullptr, nullptr, item.position.left, item.position.top,
              intensity);
        painter.with_intensity(intensity, [&] { render::draw_pieces(painter, item, {0, 0}); });
      }
    }
  }

  void emerging(const Expr& e, double intensity) const {
    const Position p = source.position(e->id());
    trace(DrawEvent::Kind::emerging, e.get(), nullptr, p.left, p.top, intensity);
    painter.with_intensity(intensity, [&] {
      Translation t(painter, p.left, p.top);
      if (e->is_list()) {
        const auto outer = source.extent(e->id());
        painter.draw_box(outer.width, outer.height);
      } else {
        render::draw(painter, e, source);
      }
    });
  }

  void draw_morph(const Expr& fg, const Expr& bg, double progress, bool only_with_relatives) const {
    const Position p0 = source.position(fg->id());
    const Position p1 = target.position(bg->id());
    const double left = lerp(p0.left, p1.left, 1 - progress);
    const double top = lerp(p0.top, p1.top, 1 - progress);

    if (syntax::structural_equal(fg, bg)) {
      if (only_with_relatives && fg == bg) return;
      trace(DrawEvent::Kind::equal, fg.get(), bg.get(), left, top, progress);
      Translation t(painter, left, top);
      render::draw(painter, fg, source);
      return;
    }

    const auto e0 = source.extent(fg->id());
    const auto e1 = target.extent(bg->id());
    const double width = lerp(e0.width, e1.width, 1 - progress);
    const double height = lerp(e0.height, e1.height, 1 - progress);

    if (fg->is_list() && bg->is_list()) {
      trace(DrawEvent::Kind::boxes, fg.get(), bg.get(), left, top, progress);
      if (!only_with_relatives) {
        Translation t(painter, left, top);
        painter.draw_box(width, height);
      }
      children(fg, progress, only_with_relatives);
      return;
    }

    trace(DrawEvent::Kind::tiles, fg.get(), bg.get(), left, top, progress);
    {
      Translation t(painter, left, top);
      painter.with_intensity(1 - progress, [&] {
        painter.with_stretch(width / e1.width, height / e1.height,
                             [&] { render::draw(painter, bg, target); });
      });
      painter.with_intensity(progress, [&] {
        painter.with_stretch(width / e0.width, height / e0.height,
                             [&] { render::draw(painter, fg, source); });
      });
    }
    if (fg->is_list()) children(fg, progress, true);
  }
};

}  // namespace

Morph::Morph(Expr initial, Expr final, eval::ProvenanceStore link)
    : initial_(std::move(initial)),
      final_(std::move(final)),
      link_(std::move(link)),
      initial_layout_(initial_),
      final_layout_(final_) {}

Morph Morph::reversed() const {
  Morph m(final_, initial_, link_.reversed());
  m.set_progress(1 - progress_);
  return m;
}

void Morph::set_progress(double p) { progress_ = std::clamp(p, 0.0, 1.0); }

layout::Extent Morph::maximum_extent() const {
  const auto a = initial_extent(), b = final_extent();
  return {std::max(a.width, b.width), std::max(a.height, b.height)};
}

void Morph::draw(Painter& painter, const Tracer& tracer) const {
  Layer final_layer{final_layout_, initial_layout_, link_, true, true, painter, tracer};
  Layer initial_layer{initial_layout_, final_layout_, link_, false, false, painter, tracer};
  if (progress_ <= 0.5) {
    final_layer.tween(final_, progress_, false);
    initial_layer.tween(initial_, 1 - progress_, false);
  } else {
    initial_layer.tween(initial_, 1 - progress_, false);
    final_layer.tween(final_, progress_, false);
  }
}

render::CellGrid Morph::render(render::Style style, const Tracer& tracer) const {
  const auto ext = maximum_extent();
  render::GridPainter painter(ext.width, ext.height, style);
  draw(painter, tracer);
  return painter.grid();
}

}  // namespace stepper::morph
