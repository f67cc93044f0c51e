#include "piw/observables.hpp"

#include "piw/semantics.hpp"

namespace piw {

std::string render_barb(const Barb& b) {
  switch (b.kind) {
    case BarbKind::in:
      return b.channel.str() + "?";
    case BarbKind::out:
      return b.channel.str() + "!";
    case BarbKind::chan:
      return b.channel.str();
    case BarbKind::succ:
      return "ok";
  }
  return "?";
}

namespace {

void collect(const Process& p, NameSet& restricted, BarbSet& out) {
  switch (p.kind()) {
    case Kind::output:
      if (!restricted.count(p.channel())) out.insert(Barb::out(p.channel()));
      return;
    case Kind::input:
      if (!restricted.count(p.channel())) out.insert(Barb::in(p.channel()));
      return;
    case Kind::success:
      out.insert(Barb::succ());
      return;
    case Kind::par:
      collect(p.left(), restricted, out);
      collect(p.right(), restricted, out);
      return;
    case Kind::restrict: {
      bool added = restricted.insert(p.binder()).second;
      collect(p.body(), restricted, out);
      if (added) restricted.erase(p.binder());
      return;
    }
    case Kind::repl:
      collect(p.body(), restricted, out);
      return;
    default:
      return;
  }
}

}  // namespace

BarbSet strong_barbs(const Process& p) {
  BarbSet out;
  NameSet restricted;
  collect(p, restricted, out);
  BarbSet chans;
  for (const Barb& b : out)
    if (b.kind == BarbKind::in || b.kind == BarbKind::out) chans.insert(Barb::chan(b.channel));
  out.insert(chans.begin(), chans.end());
  return out;
}

BarbSet filter_barbs(const BarbSet& barbs, const std::set<BarbKind>& kinds) {
  BarbSet out;
  for (const Barb& b : barbs)
    if (kinds.count(b.kind)) out.insert(b);
  return out;
}

WeakBarbs weak_barbs(const Process& p, std::size_t depth) {
  StateSpace space(LabelMode::tau_only, depth);
  std::size_t root = space.add(p, 0);
  space.explore(root);
  WeakBarbs result;
  result.exhaustive = true;
  for (std::size_t s = 0; s < space.size(); ++s) {
    BarbSet b = strong_barbs(space.term(s));
    result.definite.insert(b.begin(), b.end());
    if (space.is_frontier(s)) result.exhaustive = false;
  }
  return result;
}

}  // namespace piw
