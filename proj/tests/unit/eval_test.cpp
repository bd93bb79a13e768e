#include "stepper/context.hpp"
#include "stepper/oracle.hpp"
#include "stepper/reducer.hpp"
#include "stepper/trace.hpp"

#include "corpus.hpp"

#include <doctest.h>

#include <set>

using namespace stepper;
using namespace stepper::eval;
using syntax::parse_expr;
using syntax::print;

namespace {

const char* factorial = "(define (! n) (if (<= n 1) 1 (* n (! (- n 1)))))";

EvaluationContext factorial_context() {
  auto ctx = default_context();
  load_prelude(ctx, std::string_view(factorial));
  return ctx;
}

bool erases_to(const Expr& e, const char* text) { return erase(e) == erase(parse_expr(text)); }

std::vector<Expr> atoms_spelled(const Expr& root, const std::string& text) {
  std::vector<Expr> out;
  syntax::for_each_node(root, [&](const Expr& n) {
    if (n->is_atom() && n->atom().text == text) out.push_back(n);
  });
  return out;
}

std::set<std::uint64_t> ids_of(const Expr& e) {
  std::set<std::uint64_t> ids;
  syntax::for_each_node(e, [&](const Expr& n) { ids.insert(n->id().value); });
  return ids;
}

NodeId id() { return syntax::fresh_id(); }

}  // namespace

TEST_CASE("default context") {
  auto ctx = default_context();
  std::vector<Value> args{Value{mpz_class(2)}, Value{mpz_class(3)}};
  CHECK(values_equal(std::get<Primitive>(ctx.value("+"))(args), Value{mpz_class(5)}));
  CHECK_FALSE(ctx.defines("!"));
  CHECK(ctx.is_primitive("<="));
  for (const char* name : {"+", "-", "*", "/", "<", "<=", ">", ">=", "=", "eq?", "eqv?"}) {
    CHECK(ctx.is_primitive(name));
  }
  CHECK_FALSE(ctx.defines_macro("if"));
  CHECK_THROWS_WITH_AS(ctx.value("nope"), "undefined symbol: nope", EvaluationError);
}

TEST_CASE("loading a prelude") {
  auto ctx = factorial_context();
  REQUIRE(ctx.defines("!"));
  CHECK_FALSE(ctx.is_primitive("!"));
  const auto& lambda = std::get<Expr>(ctx.value("!"));
  CHECK(syntax::is_form(lambda, "lambda", 3));
  CHECK(erases_to(lambda, "(lambda (n) (if (<= n 1) 1 (* n (! (- n 1)))))"));

  load_prelude(ctx, std::string_view("(define x 5) (define x 6) (define (f . r) r)"));
  CHECK(print(std::get<Expr>(ctx.value("x"))) == "6");
  CHECK(erases_to(std::get<Expr>(ctx.value("f")), "(lambda r r)"));

  for (const char* bad : {"(define)", "(define 5 1)", "(+ 1 2)", "(define (5) 1)", "(define x 1 2)", "x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(load_prelude(ctx, std::string_view(bad)), LoadError);
  }
  try {
    load_prelude(ctx, std::string_view("(define 5 1)"));
  } catch (const LoadError& e) {
    CHECK(std::string(e.what()).find("(define 5 1)") != std::string::npos);
  }
}

TEST_CASE("simple reducer steps") {
  auto ctx = factorial_context();
  auto step = [&](const char* text) { return reduce_simple(erase(parse_expr(text)), ctx); };
  CHECK(step("(! 5)") == erase(parse_expr("(if (<= 5 1) 1 (* 5 (! (- 5 1))))")));
  CHECK(step("(if (<= 5 1) 1 K)") == erase(parse_expr("(if #false 1 K)")));
  CHECK(step("(quote (a b))") == erase(parse_expr("(quote (a b))")));
  CHECK(step("(if #f 1 2)") == erase(parse_expr("2")));
  CHECK(step("(if 0 1 2)") == erase(parse_expr("1")));
  CHECK(step("(+ 1 (* 2 3))") == erase(parse_expr("(+ 1 6)")));
  CHECK(step("(lambda (x) (+ 1 2))") == erase(parse_expr("(lambda (x) (+ 1 2))")));
  CHECK(step("((lambda (x) x) '(a b))") == erase(parse_expr("(quote (a b))")));
  CHECK_THROWS_AS(step("(+ y 1)"), EvaluationError);
  CHECK_THROWS_AS(step("(/ 1 0)"), EvaluationError);
}

TEST_CASE("mark-origin") {
  ProvenanceStore s;
  auto a = id(), b = id(), c = id();
  CHECK(s.origin(a) == IdList{a});
  CHECK(s.progeny(a) == IdList{a});
  s.mark_origin(a, b);
  CHECK(s.origin(a) == IdList{b});
  CHECK(s.progeny(b) == IdList{a});
  CHECK(s.check_invariants().empty());
  s.mark_origin(a, c);
  CHECK(s.origin(a) == IdList{c});
  CHECK(s.progeny(c) == IdList{a});
  CHECK(s.progeny(b).empty());
  CHECK(s.check_invariants().empty());
}

TEST_CASE("add-origin") {
  ProvenanceStore s;
  auto a = id(), b = id(), c = id();
  s.add_origin(a, b);
  CHECK(s.origin(a) == IdList{b});
  CHECK(s.progeny(b) == IdList{a});
  s.add_origin(a, b);
  CHECK(s.origin(a) == IdList{b});
  s.add_origin(a, c);
  CHECK(s.origin(a) == IdList{c, b});
  CHECK(s.check_invariants().empty());
}

TEST_CASE("dissolve and eradicate") {
  ProvenanceStore s;
  auto atom = parse_expr("a");
  s.dissolve(atom);
  CHECK(s.progeny(atom->id()).empty());
  CHECK(s.origin(atom->id()).empty());

  auto list = parse_expr("(f x)");
  auto keep = list->list().children[1];
  auto heir = id();
  s.mark_origin(heir, keep->id());
  s.dissolve(list);
  CHECK(s.progeny(list->id()).empty());
  CHECK(s.progeny(list->list().children[0]->id()).empty());
  CHECK(s.progeny(keep->id()) == IdList{heir});

  ProvenanceStore t;
  auto copy = syntax::copy_fresh(list);
  t.mark_origin(copy->id(), list->id());
  t.eradicate(copy, ProvenanceStore::always);
  syntax::for_each_node(copy, [&](const Expr& n) { CHECK(t.origin(n->id()).empty()); });
  CHECK(t.progeny(list->id()).empty());
  CHECK(t.check_invariants().empty());
}

TEST_CASE("reversed store swaps the maps") {
  ProvenanceStore s;
  auto a = id(), b = id();
  s.mark_origin(a, b);
  auto r = s.reversed();
  CHECK(r.progeny(a) == IdList{b});
  CHECK(r.origin(b) == IdList{a});
}

TEST_CASE("if false selects the else branch") {
  auto ctx = default_context();
  auto e = parse_expr("(if #f 1 2)");
  auto r = reduce_step(e, ctx);
  REQUIRE(r.expr->is_atom());
  CHECK(r.expr->atom().text == "2");
  const auto& else_branch = e->list().children[3];
  CHECK(r.expr->id() != else_branch->id());
  CHECK(r.provenance.origin(r.expr->id()) == IdList{else_branch->id()});
  CHECK(r.provenance.progeny(e->id()).empty());
  CHECK(r.provenance.progeny(e->list().children[0]->id()).empty());
  CHECK(r.provenance.check_invariants().empty());
}

TEST_CASE("stepping (! 1) creates six ones, three of them from the operand") {
  auto ctx = factorial_context();
  auto e = parse_expr("(! 1)");
  const auto operand = e->list().children[1]->id();
  auto r = reduce_step(e, ctx);
  CHECK(erases_to(r.expr, "(if (<= 1 1) 1 (* 1 (! (- 1 1))))"));
  auto ones = atoms_spelled(r.expr, "1");
  CHECK(ones.size() == 6);
  int from_operand = 0;
  for (const auto& one : ones) from_operand += r.provenance.origin(one->id()) == IdList{operand};
  CHECK(from_operand == 3);
  CHECK(r.provenance.progeny(operand).size() == 3);
  CHECK(r.provenance.check_invariants().empty());
}

TEST_CASE("primitive results originate from the application") {
  auto ctx = default_context();
  auto e = parse_expr("(+ 2 3)");
  auto r = reduce_step(e, ctx);
  CHECK(print(r.expr) == "5");
  CHECK(r.provenance.origin(r.expr->id()) == IdList{e->id()});
}

TEST_CASE("substitution into a body") {
  auto ctx = default_context();
  auto r = reduce_step(parse_expr("((lambda (n) (if (<= n 1) 1 n)) 5)"), ctx);
  CHECK(erases_to(r.expr, "(if (<= 5 1) 1 5)"));

  auto shadow = reduce_step(parse_expr("((lambda (x) (lambda (x) x)) 1)"), ctx);
  CHECK(erases_to(shadow.expr, "(lambda (x) x)"));

  auto spaced = reduce_step(parse_expr("((lambda (x) (f   x)) 1)"), ctx);
  CHECK(print(spaced.expr) == "(f   1)");
}

TEST_CASE("counterparts") {
  ProvenanceStore store;
  auto ctx = default_context();
  Reducer reducer(ctx, store);

  auto n = parse_expr("n");
  auto five = parse_expr("5");
  auto params = parse_expr("(n)");
  auto b = Bindings::bind(params, {five});
  auto c = reducer.counterpart(n, b);
  CHECK(print(c) == "5");
  CHECK(c->id() != five->id());
  CHECK(store.origin(c->id()) == IdList{params->list().children[0]->id()});

  auto m = parse_expr("m");
  CHECK(reducer.counterpart(m, b) == m);

  auto pair = parse_expr("(a b)");
  auto x = Bindings::bind(parse_expr("(x)"), {pair});
  CHECK(erases_to(reducer.substitute(x, parse_expr("x")), "(quote (a b))"));

  auto rest = Bindings::bind(parse_expr("r"), {parse_expr("(1 2)")});
  CHECK(erases_to(reducer.counterpart(parse_expr("r"), rest), "(quote ((1 2)))"));
}

TEST_CASE("self-evaluating forms") {
  CHECK(self_evaluating(parse_expr("5")));
  CHECK(self_evaluating(parse_expr("#t")));
  CHECK(self_evaluating(parse_expr("\"s\"")));
  CHECK_FALSE(self_evaluating(parse_expr("foo")));
  CHECK(self_evaluating(parse_expr("(lambda (x) x)")));
  CHECK_FALSE(self_evaluating(parse_expr("(a b)")));
}

TEST_CASE("higher-order arguments are not quoted") {
  auto ctx = default_context();
  auto r = reduce_step(parse_expr("((lambda (f) (f 2)) (lambda (x) (* x x)))"), ctx);
  CHECK(erases_to(r.expr, "((lambda (x) (* x x)) 2)"));
}

TEST_CASE("heritage of parameters") {
  auto ctx = default_context();
  auto unused = parse_expr("((lambda (x) 7) 5)");
  auto r = reduce_step(unused, ctx);
  CHECK(r.provenance.progeny(unused->list().children[1]->id()).empty());
  CHECK(r.provenance.check_invariants().empty());

  auto variadic = parse_expr("((lambda (x . r) r) 1 2 3)");
  auto v = reduce_step(variadic, ctx);
  CHECK(erases_to(v.expr, "(quote (2 3))"));
  const auto& ops = variadic->list().children;
  CHECK(v.provenance.progeny(ops[2]->id()) == IdList{v.expr->id()});
  CHECK(v.provenance.progeny(ops[3]->id()) == IdList{v.expr->id()});
  CHECK(v.provenance.progeny(ops[1]->id()).empty());
  CHECK(v.provenance.check_invariants().empty());
}

TEST_CASE("deep copy") {
  ProvenanceStore store;
  auto ctx = default_context();
  Reducer reducer(ctx, store);
  auto five = parse_expr("5");
  auto c = reducer.deep_copy(five);
  CHECK(c->id() != five->id());
  CHECK(store.origin(c->id()) == IdList{five->id()});

  auto nested = parse_expr("(a (b))");
  auto copy = reducer.deep_copy(nested);
  CHECK(syntax::structural_equal(copy, nested));
  auto before = ids_of(nested);
  for (auto i : ids_of(copy)) CHECK_FALSE(before.contains(i));

  for (const auto& file : corpus::source_files()) {
    auto doc = syntax::parse(corpus::read(file));
    doc.root = reducer.deep_copy(doc.root);
    CHECK(print(doc) == corpus::read(file));
  }
}

TEST_CASE("primitive application") {
  auto ctx = default_context();
  auto args = [](std::initializer_list<const char*> xs) {
    std::vector<Expr> out;
    for (auto x : xs) out.push_back(parse_expr(x));
    return out;
  };
  CHECK(print(apply_primitive(ctx, "<=", args({"5", "1"}))) == "#false");
  CHECK(print(apply_primitive(ctx, "*", args({"5", "4"}))) == "20");
  CHECK(print(apply_primitive(ctx, "eq?", args({"'a", "'a"}))) == "#true");
  CHECK_THROWS_AS(apply_primitive(ctx, "/", args({"1", "0"})), EvaluationError);
  CHECK_THROWS_AS(apply_primitive(ctx, "+", args({"1", "(lambda (x) x)"})), EvaluationError);
}

TEST_CASE("rebuilt shells keep their spacing") {
  auto ctx = default_context();
  auto r = reduce_step(parse_expr("(+ (*  2 3)   4)"), ctx);
  CHECK(print(r.expr) == "(+ 6   4)");
  auto i = reduce_step(parse_expr("(if  (< 1 2)\n    a b)"), ctx);
  CHECK(print(i.expr) == "(if  #true\n    a b)");
}

TEST_CASE("evaluation errors") {
  auto ctx = default_context();
  CHECK_THROWS_WITH_AS(reduce_step(parse_expr("(+ y 1)"), ctx), "undefined symbol: y", EvaluationError);
  CHECK_THROWS_AS(reduce_step(parse_expr("((lambda (x y) y) 1)"), ctx), EvaluationError);
  CHECK_THROWS_AS(reduce_step(parse_expr("((lambda (x) x) 1 . 2)"), ctx), EvaluationError);
}

TEST_CASE("trace of factorial") {
  auto trace = reduction_trace(parse_expr("(! 5)"), factorial_context());
  CHECK(trace.fixpoint());
  CHECK_FALSE(trace.truncated());
  CHECK(print(trace.back().expr) == "120");
  CHECK(trace[0].link.explicit_origins().empty());
}

TEST_CASE("trace of an atom") {
  auto trace = reduction_trace(parse_expr("7"), default_context());
  CHECK(trace.size() == 1);
  CHECK(trace.fixpoint());
}

TEST_CASE("diverging trace is truncated") {
  auto e = parse_expr("((lambda (f) (f f)) (lambda (f) (+ 1 (f f))))");
  auto trace = reduction_trace(e, default_context(), 50);
  CHECK(trace.truncated());
  CHECK_FALSE(trace.fixpoint());
  CHECK(trace.size() == 51);

  auto zero = reduction_trace(e, default_context(), 0);
  CHECK(zero.truncated());
  CHECK(zero.size() == 1);

  auto exact = reduction_trace(parse_expr("(+ 1 2)"), default_context(), 1);
  CHECK(exact.fixpoint());
  CHECK(exact.size() == 2);
}

TEST_CASE("trace is lazy") {
  ReductionTrace trace(parse_expr("(! 5)"), factorial_context());
  CHECK(trace.size() == 1);
  CHECK(trace.reach(2));
  CHECK(trace.size() == 3);
  CHECK_FALSE(trace.complete());
  CHECK_FALSE(trace.reach(1000));
  CHECK(trace.fixpoint());
}

TEST_CASE("trace errors carry the step index") {
  ReductionTrace trace(parse_expr("(+ 1 (* 2 3) (/ 1 0))"), default_context());
  try {
    trace.extend_all();
    FAIL("no error");
  } catch (const TraceError& e) {
    CHECK(e.step() == 2);
    CHECK(trace.size() == 2);
  }
  CHECK_THROWS_AS(trace.extend(), TraceError);
}

TEST_CASE("provenance reducer agrees with the simple reducer") {
  auto ctx = corpus::context();
  for (const auto& text : corpus::expressions()) {
    CAPTURE(text);
    auto e = parse_expr(text);
    for (int step = 0; step < 2000; ++step) {
      auto expected = reduce_simple(erase(e), ctx);
      auto r = reduce_step(e, ctx);
      REQUIRE(erase(r.expr) == expected);
      CHECK(r.provenance.check_invariants() == "");
      if (syntax::structural_equal(r.expr, e)) break;
      e = r.expr;
    }
  }
}

TEST_CASE("new nodes never reuse identities") {
  auto ctx = corpus::context();
  for (const auto& text : corpus::expressions()) {
    CAPTURE(text);
    auto trace = reduction_trace(parse_expr(text), ctx);
    std::set<std::uint64_t> seen = ids_of(trace[0].expr);
    for (std::size_t i = 1; i < trace.size(); ++i) {
      auto before = ids_of(trace[i - 1].expr);
      for (auto n : ids_of(trace[i].expr)) {
        if (!before.contains(n)) CHECK_FALSE(seen.contains(n));
      }
      auto now = ids_of(trace[i].expr);
      seen.insert(now.begin(), now.end());
    }
  }
}
