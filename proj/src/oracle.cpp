#include "stepper/oracle.hpp"

#include <optional>

namespace stepper::eval {

namespace {

bool values_match(const Value& a, const Value& b) { return values_equal(a, b); }

bool datum_symbol(const Datum& d, std::string_view name) {
  return !d.is_list() && is_symbol(d.value(), name);
}

const Symbol* datum_symbol(const Datum& d) {
  return d.is_list() ? nullptr : std::get_if<Symbol>(&d.value());
}

bool is_form(const Datum& d, std::string_view head, std::size_t arity) {
  if (!d.is_list()) return false;
  const auto& l = d.list();
  return l.tail.empty() && l.items.size() == arity && datum_symbol(l.items[0], head);
}

Datum make(std::vector<Datum> items, std::vector<Datum> tail = {}) {
  return Datum{DatumList{std::move(items), std::move(tail)}};
}

Datum quoted(Datum d) { return make({Datum{Symbol{"quote"}}, std::move(d)}); }

bool self_evaluating(const Datum& d) {
  if (!d.is_list()) return !is_symbol(d.value());
  return is_form(d, "lambda", 3) || is_form(d, "quote", 2);
}

struct Bindings {
  struct Positional {
    std::string name;
    std::optional<Datum> value;
  };
  std::vector<Positional> positional;
  std::optional<std::string> rest;
  std::vector<Datum> rest_values;
};

Bindings bind(const Datum& params, const DatumList& operands) {
  if (!operands.tail.empty()) throw EvaluationError("improper argument list");
  Bindings b;
  if (auto s = datum_symbol(params)) {
    b.rest = s->name;
    b.rest_values = operands.items;
    return b;
  }
  if (!params.is_list()) throw EvaluationError("malformed lambda parameters");
  const auto& names = params.list();
  for (std::size_t i = 0; i < names.items.size(); ++i) {
    auto s = datum_symbol(names.items[i]);
    if (!s) throw EvaluationError("malformed lambda parameters");
    std::optional<Datum> v;
    if (i < operands.items.size()) v = operands.items[i];
    b.positional.push_back({s->name, std::move(v)});
  }
  if (!names.tail.empty()) {
    auto s = datum_symbol(names.tail[0]);
    if (!s) throw EvaluationError("malformed lambda parameters");
    b.rest = s->name;
    for (std::size_t i = names.items.size(); i < operands.items.size(); ++i) {
      b.rest_values.push_back(operands.items[i]);
    }
  }
  return b;
}

bool binds_name(const Datum& params, const std::string& name) {
  if (auto s = datum_symbol(params)) return s->name == name;
  if (!params.is_list()) return false;
  for (const auto& p : params.list().items) {
    if (datum_symbol(p, name)) return true;
  }
  return !params.list().tail.empty() && datum_symbol(params.list().tail[0], name);
}

Bindings without(const Bindings& b, const Datum& params) {
  Bindings out;
  for (const auto& p : b.positional) {
    if (!binds_name(params, p.name)) out.positional.push_back(p);
  }
  if (b.rest && !binds_name(params, *b.rest)) {
    out.rest = b.rest;
    out.rest_values = b.rest_values;
  }
  return out;
}

Datum counterpart(const Datum& variable, const Bindings& b) {
  const auto& name = std::get<Symbol>(variable.value()).name;
  for (const auto& p : b.positional) {
    if (p.name != name) continue;
    if (!p.value) throw EvaluationError("missing argument for " + name);
    return self_evaluating(*p.value) ? *p.value : quoted(*p.value);
  }
  if (b.rest && *b.rest == name) return quoted(make(b.rest_values));
  return variable;
}

Datum substitute(const Bindings& b, const Datum& expr) {
  if (is_form(expr, "quote", 2)) return expr;
  if (is_form(expr, "lambda", 3)) {
    const auto& l = expr.list();
    return make({l.items[0], l.items[1], substitute(without(b, l.items[1]), l.items[2])});
  }
  if (expr.is_list()) {
    const auto& l = expr.list();
    if (l.items.empty()) return expr;
    std::vector<Datum> items;
    for (const auto& i : l.items) items.push_back(substitute(b, i));
    std::vector<Datum> tail;
    for (const auto& t : l.tail) tail.push_back(substitute(b, t));
    return make(std::move(items), std::move(tail));
  }
  if (datum_symbol(expr)) return counterpart(expr, b);
  return expr;
}

Value project(const Datum& d) {
  if (!d.is_list() && !is_symbol(d.value())) return d.value();
  if (is_form(d, "quote", 2) && !d.list().items[1].is_list()) return d.list().items[1].value();
  throw EvaluationError("primitive applied to a non-atomic value: " + to_string(d));
}

class Simple {
 public:
  explicit Simple(const EvaluationContext& ctx) : ctx_(ctx) {}

  Datum reduce(const Datum& e) {
    if (!e.is_list()) return reduce_atom(e);
    const auto& l = e.list();

    if (is_form(e, "if", 4)) {
      const auto& test = l.items[1];
      if (!test.is_list() && std::holds_alternative<bool>(test.value()) &&
          !std::get<bool>(test.value())) {
        return l.items[3];
      }
      Datum test2 = reduce(test);
      if (test2 == test) return l.items[2];
      return make({l.items[0], test2, l.items[2], l.items[3]});
    }
    if (is_form(e, "lambda", 3) || is_form(e, "quote", 2)) return e;
    if (l.items.empty()) return e;

    const Datum& op = l.items[0];
    if (auto s = datum_symbol(op); s && ctx_.defines_macro(s->name)) {
      throw EvaluationError("Macros not supported (yet)");
    }
    DatumList operands{{l.items.begin() + 1, l.items.end()}, l.tail};
    DatumList operands2 = reduce_operands(operands);
    if (!(Datum{operands2} == Datum{operands})) return combine(op, operands2);

    if (auto s = datum_symbol(op)) {
      if (ctx_.is_primitive(s->name)) return apply(s->name, operands);
      if (ctx_.defines(s->name)) {
        return reduce(combine(erase(std::get<Expr>(ctx_.value(s->name))), operands));
      }
      return e;
    }
    if (is_form(op, "lambda", 3)) {
      return substitute(bind(op.list().items[1], operands), op.list().items[2]);
    }
    if (op.is_list() && !op.list().items.empty()) return combine(reduce(op), operands);
    return e;
  }

 private:
  Datum reduce_atom(const Datum& e) {
    auto s = datum_symbol(e);
    if (!s) return e;
    if (!ctx_.defines(s->name)) throw EvaluationError("undefined symbol: " + s->name);
    if (ctx_.is_primitive(s->name)) return e;
    return erase(std::get<Expr>(ctx_.value(s->name)));
  }

  DatumList reduce_operands(const DatumList& ops) {
    DatumList out = ops;
    for (auto& item : out.items) {
      Datum r = reduce(item);
      if (!(r == item)) {
        item = std::move(r);
        return out;
      }
    }
    if (!out.tail.empty()) out.tail[0] = reduce(out.tail[0]);
    return out;
  }

  static Datum combine(const Datum& op, const DatumList& operands) {
    std::vector<Datum> items{op};
    items.insert(items.end(), operands.items.begin(), operands.items.end());
    return make(std::move(items), operands.tail);
  }

  Datum apply(const std::string& name, const DatumList& operands) {
    if (!operands.tail.empty()) throw EvaluationError("improper argument list");
    std::vector<Value> args;
    for (const auto& o : operands.items) args.push_back(project(o));
    const auto& fn = std::get<Primitive>(ctx_.value(name));
    return Datum{fn(args)};
  }

  const EvaluationContext& ctx_;
};

}  // namespace

bool operator==(const Datum& a, const Datum& b) {
  if (a.is_list() != b.is_list()) return false;
  if (!a.is_list()) return values_match(a.value(), b.value());
  const auto& la = a.list();
  const auto& lb = b.list();
  if (la.items.size() != lb.items.size() || la.tail.size() != lb.tail.size()) return false;
  for (std::size_t i = 0; i < la.items.size(); ++i) {
    if (!(la.items[i] == lb.items[i])) return false;
  }
  return la.tail.empty() || la.tail[0] == lb.tail[0];
}

Datum erase(const syntax::Expr& e) {
  if (e->is_atom()) return Datum{e->atom().value};
  const auto& l = e->list();
  std::vector<Datum> items;
  items.reserve(l.children.size());
  for (const auto& c : l.children) items.push_back(erase(c));
  std::vector<Datum> tail;
  if (l.tail) tail.push_back(erase(l.tail));
  return make(std::move(items), std::move(tail));
}

std::string to_string(const Datum& d) {
  if (!d.is_list()) return spell(d.value());
  std::string out = "(";
  const auto& l = d.list();
  for (std::size_t i = 0; i < l.items.size(); ++i) {
    if (i > 0) out += " ";
    out += to_string(l.items[i]);
  }
  if (!l.tail.empty()) out += " . " + to_string(l.tail[0]);
  return out + ")";
}

Datum reduce_simple(const Datum& expr, const EvaluationContext& ctx) {
  return Simple(ctx).reduce(expr);
}

}  // namespace stepper::eval
