#include "stepper/syntax.hpp"

#include "corpus.hpp"

#include <doctest.h>

#include <set>

using namespace stepper;
using namespace stepper::syntax;

namespace {

std::set<std::uint64_t> ids_of(const Expr& e) {
  std::set<std::uint64_t> ids;
  for_each_node(e, [&](const Expr& n) { ids.insert(n->id().value); });
  return ids;
}

std::size_t count_nodes(const Expr& e) {
  std::size_t n = 0;
  for_each_node(e, [&](const Expr&) { ++n; });
  return n;
}

}  // namespace

TEST_CASE("parse a call") {
  auto e = parse_expr("(! 5)");
  REQUIRE(e->is_list());
  const auto& l = e->list();
  REQUIRE(l.children.size() == 2);
  CHECK(is_symbol(l.children[0], "!"));
  CHECK(l.children[1]->atom().text == "5");
  CHECK(std::holds_alternative<mpz_class>(l.children[1]->atom().value));
  REQUIRE(l.gaps.size() == 3);
  CHECK(l.gaps[0].empty());
  CHECK(l.gaps[1] == default_gap());
  CHECK(l.gaps[2].empty());
}

TEST_CASE("single atom") {
  auto e = parse_expr("x");
  REQUIRE(e->is_atom());
  CHECK(stepper::is_symbol(e->atom().value, "x"));
}

TEST_CASE("comments are kept in the gap that holds them") {
  auto doc = parse("(a ;c\n b)");
  const auto& gap = doc.root->list().gaps[1];
  REQUIRE(gap.segments.size() == 3);
  CHECK(std::get<Whitespace>(gap.segments[0]).text == " ");
  CHECK(std::get<LineComment>(gap.segments[1]).text == ";c");
  CHECK(std::get<LineBreak>(gap.segments[2]).indent == 1);
  CHECK(print(doc) == "(a ;c\n b)");
}

TEST_CASE("printing parsed input reproduces it") {
  for (const char* s : {"( a  b )", "(if #f 1 2)", "'x", "(a . b)", "()", "( )", "#| c |# x ; d\n"}) {
    CAPTURE(s);
    CHECK(print(parse(s)) == s);
  }
}

TEST_CASE("round trip over the source corpus") {
  auto files = corpus::source_files();
  REQUIRE(files.size() >= 30);
  for (const auto& f : files) {
    CAPTURE(f.filename().string());
    auto text = corpus::read(f);
    CHECK(print(parse(text)) == text);
  }
}

TEST_CASE("carriage returns are normalized") {
  CHECK(print(parse("(a\r\n b)")) == "(a\n b)");
}

TEST_CASE("synthesized lists use default gaps") {
  auto e = make_list({make_atom("+"), make_atom("2"), make_atom("3")});
  CHECK(print(e) == "(+ 2 3)");
  auto pair = make_list({make_atom("a"), make_atom("b")});
  CHECK(print(pair) == "(a b)");
  CHECK(default_gap().to_string() == " ");
  CHECK(print(make_list({make_atom("a")}, make_atom("b"))) == "(a . b)");
}

TEST_CASE("gap counts") {
  CHECK(expected_gap_count(0, false) == 1);
  CHECK(expected_gap_count(2, false) == 3);
  CHECK(expected_gap_count(2, true) == 5);
  CHECK(parse_expr("(a b . c)")->list().gaps.size() == 5);
  CHECK_THROWS_AS(make_list({make_atom("a")}, nullptr, {Space{}}), std::invalid_argument);
  CHECK_THROWS_AS(make_list({make_atom("a")}, parse_expr("(b . c)")), std::invalid_argument);
}

TEST_CASE("structural equality ignores spacing and identity") {
  CHECK(structural_equal(parse_expr("(+ 1 2)"), parse_expr("(+  1   2)")));
  CHECK_FALSE(structural_equal(parse_expr("(+ 1 2)"), parse_expr("(+ 1 3)")));
  CHECK_FALSE(structural_equal(parse_expr("(a b)"), parse_expr("(a . b)")));
  CHECK_FALSE(structural_equal(parse_expr("(a)"), parse_expr("a")));
  CHECK(structural_equal(parse_expr("1/2"), parse_expr("2/4")));
  auto e = parse_expr("(a (b c) . d)");
  CHECK(structural_equal(e, copy_fresh(e)));
}

TEST_CASE("structural equality is an equivalence on the corpus") {
  std::vector<Expr> items;
  for (const auto& s : corpus::expressions()) items.push_back(parse_expr(s));
  for (const auto& a : items) {
    CHECK(structural_equal(a, a));
    for (const auto& b : items) {
      CHECK(structural_equal(a, b) == structural_equal(b, a));
      for (const auto& c : items) {
        if (structural_equal(a, b) && structural_equal(b, c)) CHECK(structural_equal(a, c));
      }
    }
  }
}

TEST_CASE("fresh identities") {
  auto a = parse_expr("(f (g x) y)");
  auto b = parse_expr("(f (g x) y)");
  auto ia = ids_of(a), ib = ids_of(b);
  CHECK(ia.size() == count_nodes(a));
  for (auto id : ia) CHECK_FALSE(ib.contains(id));

  auto c = copy_fresh(a);
  CHECK(print(c) == print(a));
  for (auto id : ids_of(c)) CHECK_FALSE(ia.contains(id));

  auto shell = copy_shell(a);
  CHECK(shell->id() != a->id());
  CHECK(shell->list().children[0] == a->list().children[0]);
}

TEST_CASE("quote shorthand") {
  auto e = parse_expr("'(1 2)");
  CHECK(is_form(e, "quote", 2));
  CHECK(e->list().quote_sugar);
  CHECK(print(e) == "'(1 2)");
  CHECK(print(parse_expr("(quote x)")) == "(quote x)");
}

TEST_CASE("parse errors carry positions") {
  auto fails_at = [](const char* source, int line, int column) {
    CAPTURE(source);
    try {
      parse(source);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
    }
  };
  fails_at("", 1, 1);
  fails_at("  ; only a comment\n", 2, 1);
  fails_at("(a (b)", 1, 1);
  fails_at("(a\n  (b c", 2, 3);
  fails_at("a)", 1, 2);
  fails_at("(a) b", 1, 5);
  fails_at("(. a)", 1, 2);
  fails_at("(a . b c)", 1, 8);
  fails_at("(a . (b . c))", 1, 6);
  fails_at("\"abc", 1, 1);
  fails_at("(#| open", 1, 2);
}

TEST_CASE("display width counts code points") {
  CHECK(display_width("abc") == 3);
  CHECK(display_width("λ→") == 2);
  CHECK(code_points("aλb").size() == 3);
}

TEST_CASE("atoms reject invalid text") {
  CHECK_THROWS_AS(make_atom("a b"), std::invalid_argument);
  CHECK_THROWS_AS(make_atom(""), std::invalid_argument);
  CHECK(make_atom(Value{mpz_class(120)})->atom().text == "120");
}
