#pragma once

#include "stepper/value.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stepper::syntax {

/// Identity token of a syntax node.  Allocated from a process-wide monotone
/// counter and never reused.
struct NodeId {
  std::uint64_t value = 0;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

NodeId fresh_id();

struct Whitespace {
  std::string text;  // never contains '\n'
  friend bool operator==(const Whitespace&, const Whitespace&) = default;
};

struct LineComment {
  std::string text;  // starts with ';', excludes the terminating newline
  friend bool operator==(const LineComment&, const LineComment&) = default;
};

struct BlockComment {
  std::string text;  // includes the #| |# delimiters
  friend bool operator==(const BlockComment&, const BlockComment&) = default;
};

/// A newline followed by `indent` spaces.
struct LineBreak {
  int indent = 0;
  friend bool operator==(const LineBreak&, const LineBreak&) = default;
};

using Segment = std::variant<Whitespace, LineComment, BlockComment, LineBreak>;

/// Whatever sits between two elements of a list: whitespace, comments and
/// line breaks, in source order.
struct Space {
  std::vector<Segment> segments;

  std::string to_string() const;
  bool empty() const { return segments.empty(); }
  friend bool operator==(const Space&, const Space&) = default;
};

/// One plain space.
Space default_gap();

class Node;
using Expr = std::shared_ptr<const Node>;

struct Atom {
  std::string text;
  Value value;
};

/// Gap layout: gaps[0] precedes the first child, gaps[i] follows child i-1.
/// Without a tail there are children.size() + 1 gaps, the last one before the
/// closing parenthesis.  With a tail there are children.size() + 3: before
/// the dot, after the dot, and before the closing parenthesis.
struct ListNode {
  std::vector<Expr> children;
  Expr tail;
  std::vector<Space> gaps;
  bool quote_sugar = false;  // read from 'x, printed back as 'x

  std::size_t gap_before_dot() const { return children.size(); }
  std::size_t gap_after_dot() const { return children.size() + 1; }
};

std::size_t expected_gap_count(std::size_t children, bool has_tail);

class Node {
 public:
  Node(NodeId id, Atom atom) : id_(id), data_(std::move(atom)) {}
  Node(NodeId id, ListNode list) : id_(id), data_(std::move(list)) {}

  NodeId id() const { return id_; }
  bool is_atom() const { return std::holds_alternative<Atom>(data_); }
  bool is_list() const { return std::holds_alternative<ListNode>(data_); }
  const Atom& atom() const { return std::get<Atom>(data_); }
  const ListNode& list() const { return std::get<ListNode>(data_); }

 private:
  NodeId id_;
  std::variant<Atom, ListNode> data_;
};

/// Atom from its spelling.  Throws std::invalid_argument for text that is
/// not a valid atom.
Expr make_atom(std::string text);

/// Atom spelling a synthesized value.
Expr make_atom(const Value& value);

/// List with synthesized spacing: no space inside the parentheses, one space
/// between neighbouring elements.
Expr make_list(std::vector<Expr> children, Expr tail = nullptr);

/// List with explicit gaps; throws std::invalid_argument if the gap count or
/// tail shape is inconsistent.
Expr make_list(std::vector<Expr> children, Expr tail, std::vector<Space> gaps,
               bool quote_sugar = false);

/// Same shape and spacing, fresh identities throughout.
Expr copy_fresh(const Expr& e);

/// Same children and spacing under a fresh shell identity.
Expr copy_shell(const Expr& e);

const Symbol* symbol_of(const Expr& e);
bool is_symbol(const Expr& e, std::string_view name);

/// True for `(head x ...)` lists of exactly `arity` elements and no tail.
bool is_form(const Expr& e, std::string_view head, std::size_t arity);

/// A source text: the expression plus whatever surrounds it.
struct Document {
  Space leading;
  Expr root;
  Space trailing;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Reads exactly one datum; print(parse(s)) == s for "\n"-terminated sources.
Document parse(std::string_view source);

/// Reads exactly one datum and drops the surrounding space.
Expr parse_expr(std::string_view source);

/// Reads every top-level datum (used for prelude files).
std::vector<Expr> parse_all(std::string_view source);

std::string print(const Expr& e);
std::string print(const Document& d);

/// Shape and atom values; identities and spacing are ignored.
bool structural_equal(const Expr& a, const Expr& b);

/// Calls `fn` on `e` and every descendant (children then tail), pre-order.
void for_each_node(const Expr& e, const std::function<void(const Expr&)>& fn);

/// Number of code points; every code point occupies one terminal cell.
std::size_t display_width(std::string_view utf8);

/// Splits UTF-8 text into code points (each returned as its byte sequence).
std::vector<std::string> code_points(std::string_view utf8);

}  // namespace stepper::syntax

template <>
struct std::hash<stepper::syntax::NodeId> {
  std::size_t operator()(const stepper::syntax::NodeId& id) const noexcept {
    return std::hash<std::uint64_t>()(id.value);
  }
};
