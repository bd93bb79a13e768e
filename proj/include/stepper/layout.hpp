#pragma once

#include "stepper/syntax.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace stepper::layout {

using syntax::Expr;
using syntax::NodeId;

struct Extent {
  int width = 0;
  int height = 1;
  friend bool operator==(const Extent&, const Extent&) = default;
};

/// Top-left cell, relative to the measured root.
struct Position {
  int left = 0;
  int top = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

/// Cursor state while walking the interior of one box.  Columns and rows are
/// relative to the interior's top-left cell.
struct Traversal {
  int column = 0;
  int row = 0;
  int line_height = 1;
  int max_column = 0;
};

struct Gap {
  const syntax::Space* space;
  std::size_t index;
};

struct Dot {};

using Element = std::variant<Expr, Gap, Dot>;

/// Visits gap, child, gap, ..., final gap (with the dot and tail in their
/// places) in reading order.  The traversal passed along is the state at the
/// start of the element.
void traverse(const Expr& list, const std::function<void(const Element&, const Traversal&)>& visit);

Extent extent(const Expr& e);

std::unordered_map<NodeId, Position> measure_positions(const Expr& root);

/// A run of visible text inside a box (comment line or dot).
struct TextPiece {
  std::string text;
  Position position;
};

/// One element of a box interior, placed.
struct Item {
  Element element;
  Position position;              // start of the element
  std::vector<TextPiece> pieces;  // visible parts of gaps and dots
};

/// Positions, extents and interior items of every node of one tree.
class Layout {
 public:
  explicit Layout(const Expr& root);

  const Expr& root() const { return root_; }
  Extent extent() const { return extent(root_->id()); }

  bool contains(NodeId id) const { return nodes_.contains(id); }
  const Expr& node(NodeId id) const { return nodes_.at(id).node; }
  Position position(NodeId id) const { return nodes_.at(id).position; }
  Extent extent(NodeId id) const { return nodes_.at(id).extent; }

  /// Interior items of a list node, in reading order.
  const std::vector<Item>& items(NodeId list) const { return nodes_.at(list).items; }

  std::unordered_map<NodeId, Position> positions() const;

 private:
  struct Info {
    Expr node;
    Position position;
    Extent extent;
    std::vector<Item> items;
  };

  Extent place(const Expr& e, Position at);

  Expr root_;
  std::unordered_map<NodeId, Info> nodes_;
};

}  // namespace stepper::layout
