#include "stepper/syntax.hpp"

#include <string>

namespace stepper::syntax {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

std::string normalize_newlines(std::string_view source) {
  std::string out;
  out.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (source[i] == '\r' && i + 1 < source.size() && source[i + 1] == '\n') continue;
    out.push_back(source[i]);
  }
  return out;
}

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

bool is_delimiter(char c) {
  return is_blank(c) || c == '\n' || c == '(' || c == ')' || c == '"' || c == ';' || c == '\'';
}

class Reader {
 public:
  explicit Reader(std::string text) : text_(std::move(text)) {}

  bool at_end() const { return pos_ >= text_.size(); }

  Space read_space() {
    Space space;
    while (!at_end()) {
      char c = peek();
      if (c == '\n') {
        advance();
        int indent = 0;
        while (!at_end() && peek() == ' ') {
          advance();
          ++indent;
        }
        space.segments.push_back(LineBreak{indent});
      } else if (is_blank(c)) {
        std::size_t start = pos_;
        while (!at_end() && is_blank(peek())) advance();
        space.segments.push_back(Whitespace{text_.substr(start, pos_ - start)});
      } else if (c == ';') {
        std::size_t start = pos_;
        while (!at_end() && peek() != '\n') advance();
        space.segments.push_back(LineComment{text_.substr(start, pos_ - start)});
      } else if (c == '#' && peek(1) == '|') {
        space.segments.push_back(BlockComment{read_block_comment()});
      } else {
        break;
      }
    }
    return space;
  }

  Expr read_datum() {
    if (at_end()) fail("unexpected end of input");
    char c = peek();
    if (c == '(') return read_list();
    if (c == ')') fail("unexpected ')'");
    if (c == '\'') return read_quote();
    if (c == '"') return read_string();
    return read_atom();
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(message, line_, column_); }

  [[noreturn]] static void fail_at(const std::string& message, int line, int column) {
    throw ParseError(message, line, column);
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;
    }
    ++pos_;
  }

  std::string read_block_comment() {
    int line = line_, column = column_;
    std::size_t start = pos_;
    int depth = 0;
    while (!at_end()) {
      if (peek() == '#' && peek(1) == '|') {
        advance();
        advance();
        ++depth;
      } else if (peek() == '|' && peek(1) == '#') {
        advance();
        advance();
        if (--depth == 0) return text_.substr(start, pos_ - start);
      } else {
        advance();
      }
    }
    fail_at("unterminated block comment", line, column);
  }

  bool at_dot() const {
    return peek() == '.' && (pos_ + 1 >= text_.size() || is_delimiter(peek(1)));
  }

  Expr read_list() {
    int line = line_, column = column_;
    advance();  // (
    std::vector<Expr> children;
    std::vector<Space> gaps;
    Expr tail;
    gaps.push_back(read_space());
    while (true) {
      if (at_end()) fail_at("unbalanced '('", line, column);
      if (peek() == ')') {
        advance();
        break;
      }
      if (at_dot()) {
        if (children.empty()) fail("dot without a preceding element");
        advance();
        gaps.push_back(read_space());
        if (at_end()) fail_at("unbalanced '('", line, column);
        if (peek() == ')' || at_dot()) fail("expected an element after the dot");
        int tail_line = line_, tail_column = column_;
        tail = read_datum();
        if (tail->is_list() && tail->list().tail) {
          fail_at("dotted tail cannot itself be dotted", tail_line, tail_column);
        }
        gaps.push_back(read_space());
        if (at_end()) fail_at("unbalanced '('", line, column);
        if (peek() != ')') fail("expected ')' after the dotted tail");
        advance();
        break;
      }
      children.push_back(read_datum());
      gaps.push_back(read_space());
    }
    return make_list(std::move(children), std::move(tail), std::move(gaps));
  }

  Expr read_quote() {
    advance();  // '
    if (at_end() || (is_delimiter(peek()) && peek() != '(' && peek() != '\'' && peek() != '"')) {
      fail("expected a datum right after the quote");
    }
    if (peek() == '#' && peek(1) == '|') fail("expected a datum right after the quote");
    auto datum = read_datum();
    std::vector<Space> gaps{Space{}, default_gap(), Space{}};
    return make_list({make_atom("quote"), datum}, nullptr, std::move(gaps), true);
  }

  Expr read_string() {
    int line = line_, column = column_;
    std::size_t start = pos_;
    advance();
    while (true) {
      if (at_end()) fail_at("unterminated string", line, column);
      char c = peek();
      if (c == '\\') {
        advance();
        if (at_end()) fail_at("unterminated string", line, column);
        if (peek() != '"' && peek() != '\\') fail("unsupported escape sequence");
        advance();
      } else if (c == '"') {
        advance();
        break;
      } else if (c == '\n') {
        fail("newline inside a string literal");
      } else {
        advance();
      }
    }
    if (!at_end() && !is_delimiter(peek())) fail("expected a delimiter after the string");
    return make_atom(text_.substr(start, pos_ - start));
  }

  Expr read_atom() {
    int line = line_, column = column_;
    std::size_t start = pos_;
    while (!at_end() && !is_delimiter(peek())) advance();
    std::string text = text_.substr(start, pos_ - start);
    if (text == ".") fail_at("unexpected '.'", line, column);
    if (!parse_atom_text(text)) fail_at("invalid atom '" + text + "'", line, column);
    return make_atom(std::move(text));
  }

  std::string text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

Document parse(std::string_view source) {
  Reader reader(normalize_newlines(source));
  Document doc;
  doc.leading = reader.read_space();
  if (reader.at_end()) reader.fail("empty input");
  doc.root = reader.read_datum();
  doc.trailing = reader.read_space();
  if (!reader.at_end()) reader.fail("unexpected second expression");
  return doc;
}

Expr parse_expr(std::string_view source) { return parse(source).root; }

std::vector<Expr> parse_all(std::string_view source) {
  Reader reader(normalize_newlines(source));
  std::vector<Expr> out;
  reader.read_space();
  while (!reader.at_end()) {
    out.push_back(reader.read_datum());
    reader.read_space();
  }
  return out;
}

}  // namespace stepper::syntax
