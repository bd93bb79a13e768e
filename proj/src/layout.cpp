#include "stepper/layout.hpp"

#include <algorithm>

namespace stepper::layout {

namespace {

int width_of(std::string_view text) { return static_cast<int>(syntax::display_width(text)); }

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (true) {
    auto end = text.find('\n', start);
    lines.push_back(text.substr(start, end == std::string::npos ? end : end - start));
    if (end == std::string::npos) return lines;
    start = end + 1;
  }
}

void new_line(Traversal& t, int indent) {
  t.row += t.line_height;
  t.line_height = 1;
  t.column = indent;
  t.max_column = std::max(t.max_column, t.column);
}

void put_text(Traversal& t, const std::string& text, std::vector<TextPiece>* out) {
  if (out) out->push_back({text, {t.column, t.row}});
  t.column += width_of(text);
  t.max_column = std::max(t.max_column, t.column);
}

/// Moves the cursor past a gap; visible pieces are reported relative to the
/// interior.
void walk_space(Traversal& t, const syntax::Space& space, std::vector<TextPiece>* out) {
  for (const auto& segment : space.segments) {
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, syntax::Whitespace>) {
            t.column += width_of(s.text);
            t.max_column = std::max(t.max_column, t.column);
          } else if constexpr (std::is_same_v<S, syntax::LineComment>) {
            put_text(t, s.text, out);
          } else if constexpr (std::is_same_v<S, syntax::BlockComment>) {
            auto lines = split_lines(s.text);
            for (std::size_t i = 0; i < lines.size(); ++i) {
              if (i > 0) new_line(t, 0);
              if (!lines[i].empty()) put_text(t, lines[i], out);
            }
          } else {
            new_line(t, s.indent);
          }
        },
        segment);
  }
}

Extent box_around(const Traversal& t) { return {t.max_column + 4, t.row + t.line_height + 2}; }

template <typename Visit>
void walk(const Expr& list, Visit&& visit) {
  const auto& l = list->list();
  visit(Element{Gap{&l.gaps[0], 0}});
  for (std::size_t i = 0; i < l.children.size(); ++i) {
    visit(Element{l.children[i]});
    visit(Element{Gap{&l.gaps[i + 1], i + 1}});
  }
  if (l.tail) {
    visit(Element{Dot{}});
    visit(Element{Gap{&l.gaps[l.gap_after_dot()], l.gap_after_dot()}});
    visit(Element{l.tail});
    visit(Element{Gap{&l.gaps.back(), l.gaps.size() - 1}});
  }
}

void advance_child(Traversal& t, Extent e) {
  t.column += e.width;
  t.line_height = std::max(t.line_height, e.height);
  t.max_column = std::max(t.max_column, t.column);
}

}  // namespace

void traverse(const Expr& list,
              const std::function<void(const Element&, const Traversal&)>& visit) {
  Traversal t;
  walk(list, [&](const Element& element) {
    visit(element, t);
    if (auto e = std::get_if<Expr>(&element)) {
      advance_child(t, extent(*e));
    } else if (auto g = std::get_if<Gap>(&element)) {
      walk_space(t, *g->space, nullptr);
    } else {
      put_text(t, ".", nullptr);
    }
  });
}

Extent extent(const Expr& e) {
  if (e->is_atom()) return {width_of(e->atom().text), 1};
  Traversal t;
  walk(e, [&](const Element& element) {
    if (auto c = std::get_if<Expr>(&element)) {
      advance_child(t, extent(*c));
    } else if (auto g = std::get_if<Gap>(&element)) {
      walk_space(t, *g->space, nullptr);
    } else {
      put_text(t, ".", nullptr);
    }
  });
  return box_around(t);
}

std::unordered_map<NodeId, Position> measure_positions(const Expr& root) {
  return Layout(root).positions();
}

Layout::Layout(const Expr& root) : root_(root) { place(root_, {0, 0}); }

Extent Layout::place(const Expr& e, Position at) {
  if (e->is_atom()) {
    Extent ext{width_of(e->atom().text), 1};
    nodes_.try_emplace(e->id(), Info{e, at, ext, {}});
    return ext;
  }
  const Position interior{at.left + 2, at.top + 1};
  auto absolute = [&](int column, int row) { return Position{interior.left + column, interior.top + row}; };
  std::vector<Item> items;
  Traversal t;
  walk(e, [&](const Element& element) {
    Item item{element, absolute(t.column, t.row), {}};
    if (auto c = std::get_if<Expr>(&element)) {
      advance_child(t, place(*c, item.position));
    } else {
      std::vector<TextPiece> pieces;
      if (auto g = std::get_if<Gap>(&element)) {
        walk_space(t, *g->space, &pieces);
      } else {
        put_text(t, ".", &pieces);
      }
      for (auto& p : pieces) p.position = absolute(p.position.left, p.position.top);
      item.pieces = std::move(pieces);
    }
    items.push_back(std::move(item));
  });
  Extent ext = box_around(t);
  nodes_.try_emplace(e->id(), Info{e, at, ext, std::move(items)});
  return ext;
}

std::unordered_map<NodeId, Position> Layout::positions() const {
  std::unordered_map<NodeId, Position> out;
  for (const auto& [id, info] : nodes_) out.emplace(id, info.position);
  return out;
}

}  // namespace stepper::layout
