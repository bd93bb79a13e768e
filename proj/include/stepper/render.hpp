#pragma once

#include "stepper/layout.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stepper::render {

using syntax::Expr;

enum class Level : std::uint8_t { invisible, faint, dim, normal };

Level quantize(double intensity);
char level_code(Level level);

enum class Style { unicode, ascii };

/// Terminal screen buffer.  A cell keeps the glyph of the latest write whose
/// level is at least the level already stored there.
class CellGrid {
 public:
  CellGrid(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  void put(int x, int y, std::string glyph, Level level);

  bool written(int x, int y) const { return cell(x, y).written; }
  const std::string& glyph(int x, int y) const { return cell(x, y).glyph; }
  Level level(int x, int y) const { return cell(x, y).level; }

  /// Rows joined by '\n'; unwritten cells print as spaces, trailing unwritten
  /// cells and trailing empty rows are dropped.
  std::string dump() const;

  /// Like dump(), with each row preceded by its i/f/d/n attribute string and
  /// a space.
  std::string attributed_dump() const;

 private:
  struct Cell {
    std::string glyph = " ";
    Level level = Level::invisible;
    bool written = false;
  };
  const Cell& cell(int x, int y) const { return cells_[static_cast<std::size_t>(y * width_ + x)]; }
  std::vector<std::vector<const Cell*>> visible_rows() const;

  int width_;
  int height_;
  std::vector<Cell> cells_;
};

/// Drawing surface.  Coordinates are in cells and may be fractional.
class Painter {
 public:
  virtual ~Painter() = default;

  virtual void translate(double dx, double dy) = 0;
  /// Runs `block` with the current intensity multiplied by `i`.
  virtual void with_intensity(double i, const std::function<void()>& block) = 0;
  /// Runs `block` with the current stretch multiplied by (sx, sy).
  virtual void with_stretch(double sx, double sy, const std::function<void()>& block) = 0;
  /// Box of the given size whose top-left corner is the current origin.
  virtual void draw_box(double width, double height) = 0;
  virtual void draw_text(std::string_view text) = 0;

  virtual double intensity() const = 0;
  virtual std::pair<double, double> stretch() const = 0;
};

/// Translates the painter for the lifetime of the guard.
class Translation {
 public:
  Translation(Painter& painter, double dx, double dy) : painter_(painter), dx_(dx), dy_(dy) {
    painter_.translate(dx_, dy_);
  }
  ~Translation() { painter_.translate(-dx_, -dy_); }
  Translation(const Translation&) = delete;
  Translation& operator=(const Translation&) = delete;

 private:
  Painter& painter_;
  double dx_;
  double dy_;
};

/// Rounds a fractional cell coordinate, halves going up.
int round_cell(double x);

/// Width (or height) of a box dimension after stretching.
int stretched_size(double size, double factor);

/// Number of leading code points of a `length`-character text kept under a
/// horizontal stretch.
std::size_t stretched_text_length(std::size_t length, double factor);

class GridPainter : public Painter {
 public:
  GridPainter(int width, int height, Style style = Style::unicode);

  void translate(double dx, double dy) override;
  void with_intensity(double i, const std::function<void()>& block) override;
  void with_stretch(double sx, double sy, const std::function<void()>& block) override;
  void draw_box(double width, double height) override;
  void draw_text(std::string_view text) override;

  double intensity() const override { return intensity_; }
  std::pair<double, double> stretch() const override { return {sx_, sy_}; }
  std::pair<double, double> origin() const;

  const CellGrid& grid() const { return grid_; }

 private:
  CellGrid grid_;
  Style style_;
  std::vector<std::pair<double, double>> offsets_;
  double intensity_ = 1.0;
  double sx_ = 1.0;
  double sy_ = 1.0;
};

/// Draws `e` at the painter's origin using the geometry recorded in
/// `layout` (which must contain e).
void draw(Painter& painter, const Expr& e, const layout::Layout& layout);

/// Draws the visible parts of a gap or dot item of a list of `layout`,
/// relative to the list position `reference`.
void draw_pieces(Painter& painter, const layout::Item& item, layout::Position reference);

CellGrid render_static(const Expr& e, Style style = Style::unicode);

}  // namespace stepper::render
