#include "piw/encodings.hpp"

#include <stdexcept>

namespace piw {

std::string scheme_name(Scheme s) { return s == Scheme::boudol ? "boudol" : "ht"; }

std::optional<Scheme> parse_scheme(const std::string& text) {
  if (text == "boudol" || text == "b") return Scheme::boudol;
  if (text == "ht" || text == "honda-tokoro" || text == "hondatokoro") return Scheme::honda_tokoro;
  return std::nullopt;
}

std::pair<Name, Name> fresh_pair(const NameSet& avoid) {
  for (std::size_t k = 1;; ++k) {
    Name u = reserved_name("u" + std::to_string(k));
    Name v = reserved_name("v" + std::to_string(k));
    if (!avoid.count(u) && !avoid.count(v)) return {u, v};
  }
}

namespace {

Process async_out(const Name& x, const Name& z) { return Process::output(x, z); }

// Output and input clauses with the protocol names supplied by the caller,
// shared between the translation and its contexts.
Process output_clause(Scheme scheme, const Name& x, const Name& z, const Name& u, const Name& v,
                      const Process& cont) {
  if (scheme == Scheme::boudol) {
    // (u)(x!u | u(v).(v!z | T(P)))
    return Process::restrict(
        u, Process::par(async_out(x, u), Process::input(u, v, Process::par(async_out(v, z), cont))));
  }
  // x(u).(u!z | T(P))
  return Process::input(x, u, Process::par(async_out(u, z), cont));
}

Process input_clause(Scheme scheme, const Name& x, const Name& y, const Name& u, const Name& v,
                     const Process& cont) {
  if (scheme == Scheme::boudol) {
    // x(u).(v)(u!v | v(y).T(P))
    return Process::input(
        x, u, Process::restrict(v, Process::par(async_out(u, v), Process::input(v, y, cont))));
  }
  // (u)(x!u | u(y).T(P))
  return Process::restrict(u, Process::par(async_out(x, u), Process::input(u, y, cont)));
}

Process translate(Scheme scheme, const Process& p) {
  switch (p.kind()) {
    case Kind::nil:
    case Kind::success:
    case Kind::hole:
      return p;
    case Kind::output: {
      NameSet avoid = fn(p.body());
      avoid.insert(p.channel());
      avoid.insert(p.datum());
      auto [u, v] = fresh_pair(avoid);
      return output_clause(scheme, p.channel(), p.datum(), u, v, translate(scheme, p.body()));
    }
    case Kind::input: {
      NameSet avoid = fn(p.body());
      avoid.insert(p.channel());
      auto [u, v] = fresh_pair(avoid);
      return input_clause(scheme, p.channel(), p.binder(), u, v, translate(scheme, p.body()));
    }
    case Kind::par:
      return Process::par(translate(scheme, p.left()), translate(scheme, p.right()));
    case Kind::restrict:
      return Process::restrict(p.binder(), translate(scheme, p.body()));
    case Kind::repl:
      return Process::repl(translate(scheme, p.body()));
  }
  return p;
}

}  // namespace

Process encode(Scheme scheme, const Process& p, bool allow_reserved) {
  if (!allow_reserved && has_reserved_free_names(p))
    throw std::invalid_argument("source term has reserved free names");
  return translate(scheme, p);
}

bool Context::univariate() const {
  std::vector<int> seen(holes + 1, 0);
  auto walk = [&](auto&& self, const Process& t) -> void {
    switch (t.kind()) {
      case Kind::hole:
        if (t.hole_index() >= 1 && static_cast<std::size_t>(t.hole_index()) <= holes) ++seen[t.hole_index()];
        return;
      case Kind::output:
      case Kind::input:
      case Kind::restrict:
      case Kind::repl:
        self(self, t.body());
        return;
      case Kind::par:
        self(self, t.left());
        self(self, t.right());
        return;
      default:
        return;
    }
  };
  walk(walk, term);
  for (std::size_t i = 1; i <= holes; ++i)
    if (seen[i] != 1) return false;
  return true;
}

namespace {

Process fill_rec(const Process& t, const std::vector<Process>& args, bool avoid_capture,
                 const NameSet& all_arg_names, const NameSet& keep);

void holes_in(const Process& t, std::vector<int>& out) {
  switch (t.kind()) {
    case Kind::hole:
      out.push_back(t.hole_index());
      return;
    case Kind::output:
    case Kind::input:
    case Kind::restrict:
    case Kind::repl:
      holes_in(t.body(), out);
      return;
    case Kind::par:
      holes_in(t.left(), out);
      holes_in(t.right(), out);
      return;
    default:
      return;
  }
}

const Process& arg_at(const std::vector<Process>& args, int index) {
  if (index < 1 || static_cast<std::size_t>(index) > args.size())
    throw std::invalid_argument("context hole [_" + std::to_string(index) + "] has no argument");
  return args[static_cast<std::size_t>(index - 1)];
}

// Binder of a context node, renamed when it would capture a free name of an
// argument plugged below it.
std::pair<Name, Process> guard_binder(const Name& b, const Process& body, const std::vector<Process>& args,
                                      bool avoid_capture, const NameSet& all_arg_names, const NameSet& keep) {
  if (!avoid_capture || keep.count(b)) return {b, body};
  std::vector<int> below;
  holes_in(body, below);
  bool captures = false;
  for (int h : below)
    if (fn(arg_at(args, h)).count(b)) captures = true;
  if (!captures) return {b, body};
  NameSet avoid = all_arg_names;
  for (const Name& n : names(body)) avoid.insert(n);
  avoid.insert(b);
  Name b2 = fresh_variant(b, avoid);
  return {b2, substitute(body, b, b2)};
}

Process fill_rec(const Process& t, const std::vector<Process>& args, bool avoid_capture,
                 const NameSet& all_arg_names, const NameSet& keep) {
  switch (t.kind()) {
    case Kind::hole:
      return arg_at(args, t.hole_index());
    case Kind::nil:
    case Kind::success:
      return t;
    case Kind::output:
      return Process::output(t.channel(), t.datum(), fill_rec(t.body(), args, avoid_capture, all_arg_names, keep));
    case Kind::input: {
      auto [b, body] = guard_binder(t.binder(), t.body(), args, avoid_capture, all_arg_names, keep);
      return Process::input(t.channel(), b, fill_rec(body, args, avoid_capture, all_arg_names, keep));
    }
    case Kind::restrict: {
      auto [b, body] = guard_binder(t.binder(), t.body(), args, avoid_capture, all_arg_names, keep);
      return Process::restrict(b, fill_rec(body, args, avoid_capture, all_arg_names, keep));
    }
    case Kind::repl:
      return Process::repl(fill_rec(t.body(), args, avoid_capture, all_arg_names, keep));
    case Kind::par:
      return Process::par(fill_rec(t.left(), args, avoid_capture, all_arg_names, keep),
                          fill_rec(t.right(), args, avoid_capture, all_arg_names, keep));
  }
  return t;
}

}  // namespace

Process fill(const Context& c, const std::vector<Process>& args) { return fill_rec(c.term, args, false, {}, {}); }

Process fill_capture_avoiding(const Context& c, const std::vector<Process>& args) {
  NameSet all;
  for (const Process& a : args)
    for (const Name& n : names(a)) all.insert(n);
  return fill_rec(c.term, args, true, all, c.operator_binders);
}

std::size_t Operator::arity() const {
  switch (kind) {
    case OperatorKind::nil:
    case OperatorKind::success:
      return 0;
    case OperatorKind::par:
      return 2;
    default:
      return 1;
  }
}

Process Operator::apply(const std::vector<Process>& args) const {
  if (args.size() != arity()) throw std::invalid_argument("operator " + describe() + ": wrong number of arguments");
  switch (kind) {
    case OperatorKind::nil:
      return Process::nil();
    case OperatorKind::success:
      return Process::success();
    case OperatorKind::output:
      return Process::output(x, y, args[0]);
    case OperatorKind::input:
      return Process::input(x, y, args[0]);
    case OperatorKind::par:
      return Process::par(args[0], args[1]);
    case OperatorKind::restrict:
      return Process::restrict(x, args[0]);
    case OperatorKind::repl:
      return Process::repl(args[0]);
  }
  return Process::nil();
}

std::string Operator::describe() const {
  switch (kind) {
    case OperatorKind::nil:
      return "nil";
    case OperatorKind::success:
      return "success";
    case OperatorKind::output:
      return "output(" + x.str() + "," + y.str() + ")";
    case OperatorKind::input:
      return "input(" + x.str() + "," + y.str() + ")";
    case OperatorKind::par:
      return "par";
    case OperatorKind::restrict:
      return "restrict(" + x.str() + ")";
    case OperatorKind::repl:
      return "repl";
  }
  return "?";
}

std::pair<Operator, std::vector<Process>> decompose(const Process& p) {
  switch (p.kind()) {
    case Kind::output:
      return {Operator{OperatorKind::output, p.channel(), p.datum()}, {p.body()}};
    case Kind::input:
      return {Operator{OperatorKind::input, p.channel(), p.binder()}, {p.body()}};
    case Kind::par:
      return {Operator{OperatorKind::par, {}, {}}, {p.left(), p.right()}};
    case Kind::restrict:
      return {Operator{OperatorKind::restrict, p.binder(), {}}, {p.body()}};
    case Kind::repl:
      return {Operator{OperatorKind::repl, {}, {}}, {p.body()}};
    case Kind::success:
      return {Operator{OperatorKind::success, {}, {}}, {}};
    default:
      return {Operator{OperatorKind::nil, {}, {}}, {}};
  }
}

namespace {

Context context_with(Scheme scheme, const Operator& op, const std::pair<Name, Name>& uv) {
  const Process h1 = Process::hole(1);
  switch (op.kind) {
    case OperatorKind::nil:
      return {Process::nil(), 0, {}};
    case OperatorKind::success:
      return {Process::success(), 0, {}};
    case OperatorKind::output:
      return {output_clause(scheme, op.x, op.y, uv.first, uv.second, h1), 1, {}};
    case OperatorKind::input:
      return {input_clause(scheme, op.x, op.y, uv.first, uv.second, h1), 1, {op.y}};
    case OperatorKind::par:
      return {Process::par(h1, Process::hole(2)), 2, {}};
    case OperatorKind::restrict:
      return {Process::restrict(op.x, h1), 1, {op.x}};
    case OperatorKind::repl:
      return {Process::repl(h1), 1, {}};
  }
  return {Process::nil(), 0, {}};
}

}  // namespace

Context encoding_context(Scheme scheme, const Operator& op, const NameSet& names) {
  NameSet avoid = names;
  if (op.kind == OperatorKind::output) {
    avoid.insert(op.x);
    avoid.insert(op.y);
  } else if (op.kind == OperatorKind::input) {
    avoid.insert(op.x);
  }
  return context_with(scheme, op, fresh_pair(avoid));
}

Context fixed_encoding_context(Scheme scheme, const Operator& op) {
  return context_with(scheme, op, fresh_pair({}));
}

}  // namespace piw
