#include "stepper/syntax.hpp"

#include <atomic>

namespace stepper::syntax {

NodeId fresh_id() {
  static std::atomic<std::uint64_t> counter{0};
  return NodeId{++counter};
}

std::string Space::to_string() const {
  std::string out;
  for (const auto& seg : segments) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, LineBreak>) {
            out.push_back('\n');
            out.append(static_cast<std::size_t>(s.indent), ' ');
          } else {
            out += s.text;
          }
        },
        seg);
  }
  return out;
}

Space default_gap() { return Space{{Whitespace{" "}}}; }

std::size_t expected_gap_count(std::size_t children, bool has_tail) {
  return has_tail ? children + 3 : children + 1;
}

Expr make_atom(std::string text) {
  auto value = parse_atom_text(text);
  if (!value) throw std::invalid_argument("not an atom: " + text);
  return std::make_shared<const Node>(fresh_id(), Atom{std::move(text), std::move(*value)});
}

Expr make_atom(const Value& value) {
  return std::make_shared<const Node>(fresh_id(), Atom{spell(value), value});
}

Expr make_list(std::vector<Expr> children, Expr tail) {
  std::vector<Space> gaps(expected_gap_count(children.size(), tail != nullptr));
  for (std::size_t i = 1; i + 1 < gaps.size(); ++i) gaps[i] = default_gap();
  return make_list(std::move(children), std::move(tail), std::move(gaps));
}

Expr make_list(std::vector<Expr> children, Expr tail, std::vector<Space> gaps, bool quote_sugar) {
  if (gaps.size() != expected_gap_count(children.size(), tail != nullptr)) {
    throw std::invalid_argument("gap count does not match list shape");
  }
  if (tail) {
    if (children.empty()) throw std::invalid_argument("dotted list needs a head element");
    if (tail->is_list() && tail->list().tail) {
      throw std::invalid_argument("dotted tail cannot itself be dotted");
    }
  }
  if (quote_sugar && (children.size() != 2 || tail || !is_symbol(children[0], "quote"))) {
    throw std::invalid_argument("quote shorthand must wrap (quote x)");
  }
  return std::make_shared<const Node>(
      fresh_id(), ListNode{std::move(children), std::move(tail), std::move(gaps), quote_sugar});
}

Expr copy_fresh(const Expr& e) {
  if (e->is_atom()) return std::make_shared<const Node>(fresh_id(), e->atom());
  const auto& l = e->list();
  std::vector<Expr> children;
  children.reserve(l.children.size());
  for (const auto& c : l.children) children.push_back(copy_fresh(c));
  return make_list(std::move(children), l.tail ? copy_fresh(l.tail) : nullptr, l.gaps,
                   l.quote_sugar);
}

Expr copy_shell(const Expr& e) {
  if (e->is_atom()) return std::make_shared<const Node>(fresh_id(), e->atom());
  return std::make_shared<const Node>(fresh_id(), e->list());
}

const Symbol* symbol_of(const Expr& e) {
  if (!e || !e->is_atom()) return nullptr;
  return std::get_if<Symbol>(&e->atom().value);
}

bool is_symbol(const Expr& e, std::string_view name) {
  auto s = symbol_of(e);
  return s != nullptr && s->name == name;
}

bool is_form(const Expr& e, std::string_view head, std::size_t arity) {
  if (!e->is_list()) return false;
  const auto& l = e->list();
  return !l.tail && l.children.size() == arity && is_symbol(l.children[0], head);
}

std::string print(const Expr& e) {
  if (e->is_atom()) return e->atom().text;
  const auto& l = e->list();
  if (l.quote_sugar) return "'" + print(l.children[1]);
  std::string out = "(";
  out += l.gaps[0].to_string();
  for (std::size_t i = 0; i < l.children.size(); ++i) {
    out += print(l.children[i]);
    out += l.gaps[i + 1].to_string();
  }
  if (l.tail) {
    out += ".";
    out += l.gaps[l.gap_after_dot()].to_string();
    out += print(l.tail);
    out += l.gaps.back().to_string();
  }
  out += ")";
  return out;
}

std::string print(const Document& d) {
  return d.leading.to_string() + print(d.root) + d.trailing.to_string();
}

bool structural_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (a->is_atom() != b->is_atom()) return false;
  if (a->is_atom()) return values_equal(a->atom().value, b->atom().value);
  const auto& la = a->list();
  const auto& lb = b->list();
  if (la.children.size() != lb.children.size()) return false;
  if ((la.tail == nullptr) != (lb.tail == nullptr)) return false;
  for (std::size_t i = 0; i < la.children.size(); ++i) {
    if (!structural_equal(la.children[i], lb.children[i])) return false;
  }
  return !la.tail || structural_equal(la.tail, lb.tail);
}

void for_each_node(const Expr& e, const std::function<void(const Expr&)>& fn) {
  fn(e);
  if (!e->is_list()) return;
  for (const auto& c : e->list().children) for_each_node(c, fn);
  if (e->list().tail) for_each_node(e->list().tail, fn);
}

std::size_t display_width(std::string_view utf8) {
  std::size_t n = 0;
  for (unsigned char c : utf8) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<std::string> code_points(std::string_view utf8) {
  std::vector<std::string> out;
  for (unsigned char c : utf8) {
    if ((c & 0xC0) != 0x80 || out.empty()) {
      out.emplace_back(1, static_cast<char>(c));
    } else {
      out.back().push_back(static_cast<char>(c));
    }
  }
  return out;
}

}  // namespace stepper::syntax
