#include "stepper/reducer.hpp"

namespace stepper::eval {

using syntax::is_form;
using syntax::symbol_of;

namespace {

std::vector<Expr> operands_of(const Expr& combination) {
  const auto& l = combination->list();
  if (l.tail) throw EvaluationError("improper argument list");
  return {l.children.begin() + 1, l.children.end()};
}

bool binds_name(const Expr& params, const std::string& name) {
  if (auto s = symbol_of(params)) return s->name == name;
  if (!params->is_list()) return false;
  for (const auto& p : params->list().children) {
    if (syntax::is_symbol(p, name)) return true;
  }
  return params->list().tail && syntax::is_symbol(params->list().tail, name);
}

Expr quote_wrap(Expr e) { return syntax::make_list({syntax::make_atom("quote"), std::move(e)}); }

Value project(const Expr& e) {
  if (e->is_atom() && !is_symbol(e->atom().value)) return e->atom().value;
  if (is_form(e, "quote", 2) && e->list().children[1]->is_atom()) {
    return e->list().children[1]->atom().value;
  }
  throw EvaluationError("primitive applied to a non-atomic value: " + syntax::print(e));
}

}  // namespace

Bindings Bindings::bind(const Expr& params, const std::vector<Expr>& operands) {
  Bindings b;
  if (symbol_of(params)) {
    b.rest_param = params;
    b.rest_values = operands;
    return b;
  }
  if (!params->is_list() || params->list().quote_sugar) {
    throw EvaluationError("malformed lambda parameters");
  }
  const auto& names = params->list();
  for (std::size_t i = 0; i < names.children.size(); ++i) {
    if (!symbol_of(names.children[i])) throw EvaluationError("malformed lambda parameters");
    b.positional.push_back({names.children[i], i < operands.size() ? operands[i] : nullptr});
  }
  if (names.tail) {
    if (!symbol_of(names.tail)) throw EvaluationError("malformed lambda parameters");
    b.rest_param = names.tail;
    for (std::size_t i = names.children.size(); i < operands.size(); ++i) {
      b.rest_values.push_back(operands[i]);
    }
  }
  return b;
}

Bindings Bindings::shadowed_by(const Expr& params) const {
  Bindings out;
  for (const auto& p : positional) {
    if (!binds_name(params, symbol_of(p.param)->name)) out.positional.push_back(p);
  }
  if (rest_param && !binds_name(params, symbol_of(rest_param)->name)) {
    out.rest_param = rest_param;
    out.rest_values = rest_values;
  }
  return out;
}

bool self_evaluating(const Expr& e) {
  if (e->is_atom()) return !is_symbol(e->atom().value);
  return is_form(e, "lambda", 3) || is_form(e, "quote", 2);
}

Expr apply_primitive(const EvaluationContext& ctx, const std::string& op,
                     const std::vector<Expr>& operands) {
  std::vector<Value> args;
  args.reserve(operands.size());
  for (const auto& o : operands) args.push_back(project(o));
  const auto& fn = std::get<Primitive>(ctx.value(op));
  return syntax::make_atom(fn(args));
}

Expr Reducer::rebuild(const Expr& shell, std::vector<Expr> children, Expr tail) {
  return syntax::make_list(std::move(children), std::move(tail), shell->list().gaps);
}

Expr Reducer::deep_copy(const Expr& e) {
  Expr result;
  if (e->is_atom()) {
    result = syntax::copy_shell(e);
  } else {
    const auto& l = e->list();
    std::vector<Expr> children;
    children.reserve(l.children.size());
    for (const auto& c : l.children) children.push_back(deep_copy(c));
    result = syntax::make_list(std::move(children), l.tail ? deep_copy(l.tail) : nullptr, l.gaps,
                               l.quote_sugar);
  }
  store_.mark_origin(result->id(), e->id());
  return result;
}

Expr Reducer::counterpart(const Expr& variable, const Bindings& b) {
  const auto& name = symbol_of(variable)->name;
  for (const auto& p : b.positional) {
    if (symbol_of(p.param)->name != name) continue;
    if (!p.value) throw EvaluationError("missing argument for " + name);
    Expr result = deep_copy(p.value);
    if (!self_evaluating(result)) result = quote_wrap(result);
    store_.eradicate(result, ProvenanceStore::always);
    store_.add_origin(result->id(), p.param->id());
    return result;
  }
  if (b.rest_param && symbol_of(b.rest_param)->name == name) {
    std::vector<Expr> copies;
    for (const auto& v : b.rest_values) copies.push_back(deep_copy(v));
    Expr result = quote_wrap(syntax::make_list(std::move(copies)));
    store_.eradicate(result, ProvenanceStore::always);
    store_.add_origin(result->id(), b.rest_param->id());
    return result;
  }
  return variable;
}

Expr Reducer::substitute(const Bindings& b, const Expr& body) {
  if (is_form(body, "quote", 2)) return body;
  if (is_form(body, "lambda", 3)) {
    const auto& l = body->list();
    return rebuild(body, {l.children[0], l.children[1],
                          substitute(b.shadowed_by(l.children[1]), l.children[2])},
                   nullptr);
  }
  if (body->is_list()) {
    const auto& l = body->list();
    if (l.children.empty()) return body;
    std::vector<Expr> children;
    children.reserve(l.children.size());
    for (const auto& c : l.children) children.push_back(substitute(b, c));
    Expr result = rebuild(body, std::move(children), l.tail ? substitute(b, l.tail) : nullptr);
    store_.mark_origin(result->id(), body->id());
    return result;
  }
  if (symbol_of(body)) return counterpart(body, b);
  return body;
}

void Reducer::transfer_heritage(const Bindings& b) {
  auto heirs = [&](const Expr& param) {
    if (!store_.has_explicit_progeny(param->id())) return IdList{};
    return store_.progeny(param->id());
  };
  for (const auto& p : b.positional) {
    if (!p.value) continue;
    IdList children = heirs(p.param);
    store_.set_progeny(p.value->id(), children);
    for (NodeId child : children) store_.repoint_origin(child, p.param->id(), p.value->id());
    store_.set_progeny(p.param->id(), {});
  }
  if (b.rest_param) {
    IdList children = heirs(b.rest_param);
    for (const auto& v : b.rest_values) store_.set_progeny(v->id(), children);
    if (!b.rest_values.empty()) {
      for (NodeId child : children) {
        store_.repoint_origin(child, b.rest_param->id(), b.rest_values.front()->id());
        for (std::size_t i = 1; i < b.rest_values.size(); ++i) {
          store_.add_origin(child, b.rest_values[i]->id());
        }
      }
    }
    store_.set_progeny(b.rest_param->id(), {});
  }
}

Expr Reducer::reduce(const Expr& e) { return step(e).expr; }

Reducer::Outcome Reducer::step(const Expr& e) {
  if (e->is_atom()) return reduce_atom(e);
  if (is_form(e, "if", 4)) return reduce_if(e);
  if (is_form(e, "lambda", 3) || is_form(e, "quote", 2)) return {e, false};
  if (e->list().children.empty()) return {e, false};
  return reduce_combination(e);
}

Reducer::Outcome Reducer::reduce_atom(const Expr& e) {
  auto s = symbol_of(e);
  if (!s) return {e, false};
  if (!ctx_.defines(s->name)) throw EvaluationError("undefined symbol: " + s->name);
  if (ctx_.is_primitive(s->name)) return {e, false};
  Expr result = syntax::copy_fresh(std::get<Expr>(ctx_.value(s->name)));
  store_.dissolve(e);
  store_.mark_origin(result->id(), e->id());
  return {result, !syntax::structural_equal(result, e)};
}

Reducer::Outcome Reducer::reduce_if(const Expr& e) {
  const auto& c = e->list().children;
  const Expr& test = c[1];
  auto select = [&](const Expr& branch) {
    store_.dissolve(e);
    Expr result = deep_copy(branch);
    store_.mark_origin(result->id(), branch->id());
    return Outcome{result, true};
  };
  if (test->is_atom()) {
    auto b = std::get_if<bool>(&test->atom().value);
    if (b && !*b) return select(c[3]);
  }
  auto test2 = step(test);
  if (!test2.changed) return select(c[2]);
  Expr result = rebuild(e, {c[0], test2.expr, c[2], c[3]}, nullptr);
  store_.mark_origin(result->id(), e->id());
  store_.mark_origin(test2.expr->id(), test->id());
  return {result, true};
}

std::optional<Expr> Reducer::reduce_operands(const Expr& combination) {
  const auto& l = combination->list();
  auto with_operands = [&](std::vector<Expr> children, Expr tail) {
    Expr op2 = syntax::copy_shell(children[0]);
    store_.mark_origin(op2->id(), children[0]->id());
    children[0] = op2;
    return rebuild(combination, std::move(children), std::move(tail));
  };
  for (std::size_t i = 1; i < l.children.size(); ++i) {
    auto r = step(l.children[i]);
    if (r.changed) {
      auto children = l.children;
      children[i] = r.expr;
      return with_operands(std::move(children), l.tail);
    }
  }
  if (l.tail) {
    auto r = step(l.tail);
    if (r.changed) return with_operands(l.children, r.expr);
  }
  return std::nullopt;
}

Reducer::Outcome Reducer::reduce_combination(const Expr& e) {
  const auto& l = e->list();
  const Expr& op = l.children[0];
  if (auto s = symbol_of(op); s && ctx_.defines_macro(s->name)) {
    throw EvaluationError("Macros not supported (yet)");
  }
  if (auto changed = reduce_operands(e)) {
    store_.mark_origin((*changed)->id(), e->id());
    return {*changed, true};
  }
  auto outcome = [&](Expr result) { return Outcome{result, !syntax::structural_equal(result, e)}; };

  if (auto s = symbol_of(op)) {
    if (ctx_.is_primitive(s->name)) {
      Expr result = apply_primitive(ctx_, s->name, operands_of(e));
      store_.mark_origin(result->id(), e->id());
      return {result, true};
    }
    if (!ctx_.defines(s->name)) return {e, false};
    Expr definition = syntax::copy_fresh(std::get<Expr>(ctx_.value(s->name)));
    if (is_form(definition, "lambda", 3)) {
      const auto& lambda = definition->list();
      auto bindings = Bindings::bind(lambda.children[1], operands_of(e));
      Expr result = substitute(bindings, lambda.children[2]);
      transfer_heritage(bindings);
      store_.dissolve(e);
      store_.mark_origin(result->id(), op->id());
      return outcome(result);
    }
    // A name bound to something other than a lambda: splice the value into
    // operator position and keep reducing within the same step.
    store_.mark_origin(definition->id(), op->id());
    std::vector<Expr> children = l.children;
    children[0] = definition;
    Expr combination = rebuild(e, std::move(children), l.tail);
    store_.mark_origin(combination->id(), e->id());
    return outcome(step(combination).expr);
  }

  if (is_form(op, "lambda", 3)) {
    const auto& lambda = op->list();
    auto bindings = Bindings::bind(lambda.children[1], operands_of(e));
    store_.dissolve(e);
    Expr result = substitute(bindings, lambda.children[2]);
    transfer_heritage(bindings);
    return outcome(result);
  }

  if (op->is_list() && !op->list().children.empty()) {
    auto op2 = step(op);
    if (!op2.changed) return {e, false};
    std::vector<Expr> children = l.children;
    children[0] = op2.expr;
    Expr result = rebuild(e, std::move(children), l.tail);
    store_.mark_origin(result->id(), e->id());
    store_.mark_origin(op2.expr->id(), op->id());
    return {result, true};
  }
  return {e, false};
}

StepResult reduce_step(const Expr& expr, const EvaluationContext& ctx) {
  StepResult out;
  Reducer reducer(ctx, out.provenance);
  out.expr = reducer.reduce(expr);
  return out;
}

}  // namespace stepper::eval
