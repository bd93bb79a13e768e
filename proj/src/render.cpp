#include "stepper/render.hpp"

#include <algorithm>
#include <cmath>

namespace stepper::render {

Level quantize(double intensity) {
  if (intensity < 0.05) return Level::invisible;
  if (intensity < 0.35) return Level::faint;
  if (intensity < 0.7) return Level::dim;
  return Level::normal;
}

char level_code(Level level) {
  switch (level) {
    case Level::invisible: return 'i';
    case Level::faint: return 'f';
    case Level::dim: return 'd';
    case Level::normal: return 'n';
  }
  return 'i';
}

CellGrid::CellGrid(int width, int height)
    : width_(std::max(width, 0)),
      height_(std::max(height, 0)),
      cells_(static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {}

void CellGrid::put(int x, int y, std::string glyph, Level level) {
  if (level == Level::invisible) return;
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  auto& c = cells_[static_cast<std::size_t>(y * width_ + x)];
  if (c.written && level < c.level) return;
  c = Cell{std::move(glyph), level, true};
}

std::vector<std::vector<const CellGrid::Cell*>> CellGrid::visible_rows() const {
  std::vector<std::vector<const Cell*>> rows;
  for (int y = 0; y < height_; ++y) {
    int end = width_;
    while (end > 0 && !cell(end - 1, y).written) --end;
    std::vector<const Cell*> row;
    for (int x = 0; x < end; ++x) row.push_back(&cell(x, y));
    rows.push_back(std::move(row));
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  return rows;
}

std::string CellGrid::dump() const {
  std::string out;
  auto rows = visible_rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r > 0) out += '\n';
    for (const Cell* c : rows[r]) out += c->written ? c->glyph : " ";
  }
  return out;
}

std::string CellGrid::attributed_dump() const {
  std::string out;
  auto rows = visible_rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r > 0) out += '\n';
    for (const Cell* c : rows[r]) out += c->written ? level_code(c->level) : 'i';
    out += ' ';
    for (const Cell* c : rows[r]) out += c->written ? c->glyph : " ";
  }
  return out;
}

int round_cell(double x) { return static_cast<int>(std::floor(x + 0.5 + 1e-9)); }

int stretched_size(double size, double factor) { return std::max(1, round_cell(size * factor)); }

std::size_t stretched_text_length(std::size_t length, double factor) {
  double kept = std::ceil(static_cast<double>(length) * factor - 1e-9);
  if (kept <= 0) return 0;
  return std::min(length, static_cast<std::size_t>(kept));
}

GridPainter::GridPainter(int width, int height, Style style) : grid_(width, height), style_(style) {}

void GridPainter::translate(double dx, double dy) {
  if (!offsets_.empty() && offsets_.back().first == -dx && offsets_.back().second == -dy) {
    offsets_.pop_back();
  } else {
    offsets_.emplace_back(dx, dy);
  }
}

std::pair<double, double> GridPainter::origin() const {
  double x = 0, y = 0;
  for (const auto& [dx, dy] : offsets_) {
    x += dx;
    y += dy;
  }
  return {x, y};
}

void GridPainter::with_intensity(double i, const std::function<void()>& block) {
  const double saved = intensity_;
  intensity_ *= std::clamp(i, 0.0, 1.0);
  try {
    block();
  } catch (...) {
    intensity_ = saved;
    throw;
  }
  intensity_ = saved;
}

void GridPainter::with_stretch(double sx, double sy, const std::function<void()>& block) {
  const double saved_x = sx_, saved_y = sy_;
  sx_ *= sx;
  sy_ *= sy;
  try {
    block();
  } catch (...) {
    sx_ = saved_x;
    sy_ = saved_y;
    throw;
  }
  sx_ = saved_x;
  sy_ = saved_y;
}

void GridPainter::draw_box(double width, double height) {
  const Level level = quantize(intensity_);
  if (level == Level::invisible) return;
  auto [ox, oy] = origin();
  const int x0 = round_cell(ox), y0 = round_cell(oy);
  const int w = stretched_size(width, sx_), h = stretched_size(height, sy_);
  const bool ascii = style_ == Style::ascii;
  const std::string vertical = ascii ? "|" : "│";
  for (int y = 1; y + 1 < h; ++y) {
    grid_.put(x0, y0 + y, vertical, level);
    grid_.put(x0 + w - 1, y0 + y, vertical, level);
  }
  grid_.put(x0, y0, ascii ? "+" : "╭", level);
  grid_.put(x0 + w - 1, y0, ascii ? "+" : "╮", level);
  grid_.put(x0, y0 + h - 1, ascii ? "+" : "╰", level);
  grid_.put(x0 + w - 1, y0 + h - 1, ascii ? "+" : "╯", level);
}

void GridPainter::draw_text(std::string_view text) {
  const Level level = quantize(intensity_);
  if (level == Level::invisible) return;
  auto [ox, oy] = origin();
  const int x0 = round_cell(ox), y0 = round_cell(oy);
  auto glyphs = syntax::code_points(text);
  const std::size_t n = stretched_text_length(glyphs.size(), sx_);
  for (std::size_t i = 0; i < n; ++i) {
    grid_.put(x0 + static_cast<int>(i), y0, std::move(glyphs[i]), level);
  }
}

void draw_pieces(Painter& painter, const layout::Item& item, layout::Position reference) {
  for (const auto& piece : item.pieces) {
    Translation t(painter, piece.position.left - reference.left, piece.position.top - reference.top);
    painter.draw_text(piece.text);
  }
}

void draw(Painter& painter, const Expr& e, const layout::Layout& layout) {
  if (e->is_atom()) {
    painter.draw_text(e->atom().text);
    return;
  }
  const auto here = layout.position(e->id());
  const auto ext = layout.extent(e->id());
  painter.draw_box(ext.width, ext.height);
  for (const auto& item : layout.items(e->id())) {
    if (auto child = std::get_if<Expr>(&item.element)) {
      Translation t(painter, item.position.left - here.left, item.position.top - here.top);
      draw(painter, *child, layout);
    } else {
      draw_pieces(painter, item, here);
    }
  }
}

CellGrid render_static(const Expr& e, Style style) {
  layout::Layout layout(e);
  const auto ext = layout.extent();
  GridPainter painter(ext.width, ext.height, style);
  draw(painter, e, layout);
  return painter.grid();
}

}  // namespace stepper::render
