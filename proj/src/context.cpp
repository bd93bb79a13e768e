#include "stepper/context.hpp"

namespace stepper::eval {

bool EvaluationContext::is_primitive(const std::string& name) const {
  auto it = definitions_.find(name);
  return it != definitions_.end() && std::holds_alternative<Primitive>(it->second);
}

const Binding& EvaluationContext::value(const std::string& name) const {
  auto it = definitions_.find(name);
  if (it == definitions_.end()) throw EvaluationError("undefined symbol: " + name);
  return it->second;
}

void EvaluationContext::define(const std::string& name, Binding binding) {
  definitions_.insert_or_assign(name, std::move(binding));
}

EvaluationContext default_context() {
  EvaluationContext ctx;
  ctx.define("+", arith::add);
  ctx.define("-", arith::subtract);
  ctx.define("*", arith::multiply);
  ctx.define("/", arith::divide);
  ctx.define("<", arith::less);
  ctx.define("<=", arith::less_equal);
  ctx.define(">", arith::greater);
  ctx.define(">=", arith::greater_equal);
  ctx.define("=", arith::numeric_equal);
  ctx.define("eq?", arith::eq);
  ctx.define("eqv?", arith::eqv);
  return ctx;
}

namespace {

[[noreturn]] void malformed(const Expr& form) {
  throw LoadError("malformed definition: " + syntax::print(form));
}

bool is_parameter_list(const Expr& e) {
  if (syntax::symbol_of(e)) return true;
  if (!e->is_list() || e->list().quote_sugar) return false;
  for (const auto& c : e->list().children) {
    if (!syntax::symbol_of(c)) return false;
  }
  return !e->list().tail || syntax::symbol_of(e->list().tail);
}

}  // namespace

void load_prelude(EvaluationContext& ctx, std::span<const Expr> definitions) {
  for (const auto& form : definitions) {
    if (!syntax::is_form(form, "define", 3)) malformed(form);
    const auto& target = form->list().children[1];
    const auto& body = form->list().children[2];
    if (auto name = syntax::symbol_of(target)) {
      ctx.define(name->name, body);
      continue;
    }
    if (!target->is_list() || target->list().quote_sugar || target->list().children.empty()) {
      malformed(form);
    }
    const auto& sig = target->list();
    auto name = syntax::symbol_of(sig.children[0]);
    if (!name) malformed(form);

    Expr params;
    if (sig.children.size() == 1 && sig.tail) {
      params = sig.tail;  // (define (f . rest) ...)
    } else {
      std::vector<Expr> names(sig.children.begin() + 1, sig.children.end());
      params = syntax::make_list(std::move(names), sig.tail);
    }
    if (!is_parameter_list(params)) malformed(form);
    ctx.define(name->name, syntax::make_list({syntax::make_atom("lambda"), params, body}));
  }
}

void load_prelude(EvaluationContext& ctx, std::string_view source) {
  auto forms = syntax::parse_all(source);
  load_prelude(ctx, forms);
}

}  // namespace stepper::eval
