#include "piw/process.hpp"

#include <stdexcept>

namespace piw {

namespace {

std::shared_ptr<const detail::Node> make_node(detail::Node n) {
  return std::make_shared<const detail::Node>(std::move(n));
}

}  // namespace

// A null node is Nil, so default-constructed members of Node need no allocation.
Process::Process() = default;

Process::Process(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

Process Process::nil() { return Process(); }

Process Process::success() {
  detail::Node n;
  n.kind = Kind::success;
  return Process(make_node(std::move(n)));
}

Process Process::output(Name chan, Name datum, Process cont) {
  detail::Node n;
  n.kind = Kind::output;
  n.a = std::move(chan);
  n.b = std::move(datum);
  n.p = std::move(cont);
  return Process(make_node(std::move(n)));
}

Process Process::input(Name chan, Name binder, Process cont) {
  detail::Node n;
  n.kind = Kind::input;
  n.a = std::move(chan);
  n.b = std::move(binder);
  n.p = std::move(cont);
  return Process(make_node(std::move(n)));
}

Process Process::par(Process left, Process right) {
  detail::Node n;
  n.kind = Kind::par;
  n.p = std::move(left);
  n.q = std::move(right);
  return Process(make_node(std::move(n)));
}

Process Process::restrict(Name binder, Process body) {
  detail::Node n;
  n.kind = Kind::restrict;
  n.a = std::move(binder);
  n.p = std::move(body);
  return Process(make_node(std::move(n)));
}

Process Process::repl(Process body) {
  detail::Node n;
  n.kind = Kind::repl;
  n.p = std::move(body);
  return Process(make_node(std::move(n)));
}

Process Process::hole(int index) {
  detail::Node n;
  n.kind = Kind::hole;
  n.hole = index;
  return Process(make_node(std::move(n)));
}

Kind Process::kind() const { return node_ ? node_->kind : Kind::nil; }

const Name& Process::channel() const {
  if (kind() != Kind::output && kind() != Kind::input) throw std::logic_error("channel(): not a prefix");
  return node_->a;
}

const Name& Process::datum() const {
  if (kind() != Kind::output) throw std::logic_error("datum(): not an output");
  return node_->b;
}

const Name& Process::binder() const {
  if (kind() == Kind::input) return node_->b;
  if (kind() == Kind::restrict) return node_->a;
  throw std::logic_error("binder(): not a binding construct");
}

const Process& Process::body() const {
  switch (kind()) {
    case Kind::output:
    case Kind::input:
    case Kind::restrict:
    case Kind::repl:
      return node_->p;
    default:
      throw std::logic_error("body(): no body");
  }
}

const Process& Process::left() const {
  if (kind() != Kind::par) throw std::logic_error("left(): not a parallel composition");
  return node_->p;
}

const Process& Process::right() const {
  if (kind() != Kind::par) throw std::logic_error("right(): not a parallel composition");
  return node_->q;
}

int Process::hole_index() const {
  if (kind() != Kind::hole) throw std::logic_error("hole_index(): not a hole");
  return node_->hole;
}

bool Process::operator==(const Process& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return kind() == other.kind();
  const detail::Node& x = *node_;
  const detail::Node& y = *other.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Kind::nil:
    case Kind::success:
      return true;
    case Kind::hole:
      return x.hole == y.hole;
    case Kind::output:
    case Kind::input:
      return x.a == y.a && x.b == y.b && x.p == y.p;
    case Kind::restrict:
      return x.a == y.a && x.p == y.p;
    case Kind::repl:
      return x.p == y.p;
    case Kind::par:
      return x.p == y.p && x.q == y.q;
  }
  return false;
}

namespace {

void collect_names(const Process& p, NameSet& bound_scope, NameSets& out) {
  auto occur = [&](const Name& n) {
    if (bound_scope.count(n) == 0) out.free.insert(n);
    out.all.insert(n);
  };
  auto under_binder = [&](const Name& b, const Process& body) {
    out.bound.insert(b);
    out.all.insert(b);
    bool fresh = bound_scope.insert(b).second;
    collect_names(body, bound_scope, out);
    if (fresh) bound_scope.erase(b);
  };
  switch (p.kind()) {
    case Kind::nil:
    case Kind::success:
    case Kind::hole:
      return;
    case Kind::output:
      occur(p.channel());
      occur(p.datum());
      collect_names(p.body(), bound_scope, out);
      return;
    case Kind::input:
      occur(p.channel());
      under_binder(p.binder(), p.body());
      return;
    case Kind::restrict:
      under_binder(p.binder(), p.body());
      return;
    case Kind::repl:
      collect_names(p.body(), bound_scope, out);
      return;
    case Kind::par:
      collect_names(p.left(), bound_scope, out);
      collect_names(p.right(), bound_scope, out);
      return;
  }
}

void collect_free(const Process& p, const NameSet& bound, NameSet& out);

void collect_free_under(const Name& b, const Process& body, const NameSet& bound, NameSet& out) {
  if (bound.count(b)) {
    collect_free(body, bound, out);
  } else {
    NameSet inner = bound;
    inner.insert(b);
    collect_free(body, inner, out);
  }
}

void collect_free(const Process& p, const NameSet& bound, NameSet& out) {
  switch (p.kind()) {
    case Kind::nil:
    case Kind::success:
    case Kind::hole:
      return;
    case Kind::output:
      if (!bound.count(p.channel())) out.insert(p.channel());
      if (!bound.count(p.datum())) out.insert(p.datum());
      collect_free(p.body(), bound, out);
      return;
    case Kind::input:
      if (!bound.count(p.channel())) out.insert(p.channel());
      collect_free_under(p.binder(), p.body(), bound, out);
      return;
    case Kind::restrict:
      collect_free_under(p.binder(), p.body(), bound, out);
      return;
    case Kind::repl:
      collect_free(p.body(), bound, out);
      return;
    case Kind::par:
      collect_free(p.left(), bound, out);
      collect_free(p.right(), bound, out);
      return;
  }
}

void collect_all(const Process& p, NameSet& out) {
  switch (p.kind()) {
    case Kind::nil:
    case Kind::success:
    case Kind::hole:
      return;
    case Kind::output:
      out.insert(p.channel());
      out.insert(p.datum());
      collect_all(p.body(), out);
      return;
    case Kind::input:
      out.insert(p.channel());
      out.insert(p.binder());
      collect_all(p.body(), out);
      return;
    case Kind::restrict:
      out.insert(p.binder());
      collect_all(p.body(), out);
      return;
    case Kind::repl:
      collect_all(p.body(), out);
      return;
    case Kind::par:
      collect_all(p.left(), out);
      collect_all(p.right(), out);
      return;
  }
}

}  // namespace

NameSets free_names(const Process& p) {
  NameSets out;
  NameSet scope;
  collect_names(p, scope, out);
  return out;
}

NameSet fn(const Process& p) {
  NameSet out;
  collect_free(p, {}, out);
  return out;
}

NameSet names(const Process& p) {
  NameSet out;
  collect_all(p, out);
  return out;
}

std::size_t size(const Process& p) {
  auto count = [](auto&& self, const Process& t) -> std::size_t {
    switch (t.kind()) {
      case Kind::nil:
        return 0;
      case Kind::success:
      case Kind::hole:
        return 1;
      case Kind::output:
      case Kind::input:
      case Kind::restrict:
      case Kind::repl:
        return 1 + self(self, t.body());
      case Kind::par:
        return 1 + self(self, t.left()) + self(self, t.right());
    }
    return 0;
  };
  std::size_t n = count(count, p);
  return n == 0 ? 1 : n;
}

bool is_asynchronous(const Process& p) {
  switch (p.kind()) {
    case Kind::output:
      return p.body().is_nil();
    case Kind::input:
    case Kind::restrict:
    case Kind::repl:
      return is_asynchronous(p.body());
    case Kind::par:
      return is_asynchronous(p.left()) && is_asynchronous(p.right());
    default:
      return true;
  }
}

bool is_replication_free(const Process& p) {
  switch (p.kind()) {
    case Kind::repl:
      return false;
    case Kind::output:
    case Kind::input:
    case Kind::restrict:
      return is_replication_free(p.body());
    case Kind::par:
      return is_replication_free(p.left()) && is_replication_free(p.right());
    default:
      return true;
  }
}

bool uses_only_source_names(const Process& p) {
  for (const Name& n : names(p))
    if (n.reserved()) return false;
  return true;
}

bool has_reserved_free_names(const Process& p) {
  for (const Name& n : fn(p))
    if (n.reserved()) return true;
  return false;
}

Name fresh_variant(const Name& hint, const NameSet& avoid) {
  Name candidate = hint;
  while (avoid.count(candidate)) candidate.id += '\'';
  return candidate;
}

namespace {

Process rename_rec(const Process& p, const NameMap& sigma);

Name map_name(const NameMap& sigma, const Name& n) {
  auto it = sigma.find(n);
  return it == sigma.end() ? n : it->second;
}

// Renames under a binder: the binder shadows any entry for itself, and is
// alpha-converted when some free name of the body would be mapped onto it.
std::pair<Name, Process> rename_under(const Name& b, const Process& body, const NameMap& sigma) {
  NameMap inner = sigma;
  inner.erase(b);
  if (inner.empty()) return {b, body};
  NameSet body_free = fn(body);
  bool relevant = false;
  bool captures = false;
  for (const Name& n : body_free) {
    if (n == b) continue;
    auto it = inner.find(n);
    if (it == inner.end()) continue;
    relevant = true;
    if (it->second == b) captures = true;
  }
  if (!relevant) return {b, body};
  if (!captures) return {b, rename_rec(body, inner)};
  NameSet avoid = names(body);
  avoid.insert(b);
  for (const Name& n : body_free) avoid.insert(map_name(inner, n));
  Name b2 = fresh_variant(b, avoid);
  inner[b] = b2;
  return {b2, rename_rec(body, inner)};
}

Process rename_rec(const Process& p, const NameMap& sigma) {
  switch (p.kind()) {
    case Kind::nil:
    case Kind::success:
    case Kind::hole:
      return p;
    case Kind::output:
      return Process::output(map_name(sigma, p.channel()), map_name(sigma, p.datum()),
                             rename_rec(p.body(), sigma));
    case Kind::input: {
      auto [b, body] = rename_under(p.binder(), p.body(), sigma);
      return Process::input(map_name(sigma, p.channel()), b, body);
    }
    case Kind::restrict: {
      auto [b, body] = rename_under(p.binder(), p.body(), sigma);
      return Process::restrict(b, body);
    }
    case Kind::repl:
      return Process::repl(rename_rec(p.body(), sigma));
    case Kind::par:
      return Process::par(rename_rec(p.left(), sigma), rename_rec(p.right(), sigma));
  }
  return p;
}

}  // namespace

Process rename(const Process& p, const NameMap& sigma) {
  NameMap effective;
  for (const auto& [from, to] : sigma)
    if (from != to) effective.emplace(from, to);
  if (effective.empty()) return p;
  return rename_rec(p, effective);
}

Process substitute(const Process& p, const Name& y, const Name& w) {
  if (y == w) return p;
  return rename(p, NameMap{{y, w}});
}

namespace {

struct AlphaNormalizer {
  NameSet avoid;
  int counter = 0;

  Name next() {
    for (;;) {
      Name n = reserved_name("a" + std::to_string(++counter));
      if (!avoid.count(n)) return n;
    }
  }

  Process run(const Process& p, const NameMap& env) {
    switch (p.kind()) {
      case Kind::nil:
      case Kind::success:
      case Kind::hole:
        return p;
      case Kind::output:
        return Process::output(map_name(env, p.channel()), map_name(env, p.datum()), run(p.body(), env));
      case Kind::input: {
        Name b = next();
        NameMap inner = env;
        inner[p.binder()] = b;
        return Process::input(map_name(env, p.channel()), b, run(p.body(), inner));
      }
      case Kind::restrict: {
        Name b = next();
        NameMap inner = env;
        inner[p.binder()] = b;
        return Process::restrict(b, run(p.body(), inner));
      }
      case Kind::repl:
        return Process::repl(run(p.body(), env));
      case Kind::par: {
        Process l = run(p.left(), env);
        return Process::par(l, run(p.right(), env));
      }
    }
    return p;
  }
};

}  // namespace

Process alpha_normalize(const Process& p) {
  AlphaNormalizer normalizer{fn(p)};
  return normalizer.run(p, {});
}

bool alpha_eq(const Process& p, const Process& q) { return alpha_normalize(p) == alpha_normalize(q); }

}  // namespace piw
