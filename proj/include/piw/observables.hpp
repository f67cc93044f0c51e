#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>

#include "piw/process.hpp"

namespace piw {

enum class BarbKind : std::uint8_t { in, out, chan, succ };

struct Barb {
  BarbKind kind = BarbKind::succ;
  Name channel;  // unused for succ

  static Barb in(Name x) { return {BarbKind::in, std::move(x)}; }
  static Barb out(Name x) { return {BarbKind::out, std::move(x)}; }
  static Barb chan(Name x) { return {BarbKind::chan, std::move(x)}; }
  static Barb succ() { return {}; }

  auto operator<=>(const Barb&) const = default;
};

using BarbSet = std::set<Barb>;

/// "x?", "x!", "x" or "ok".
std::string render_barb(const Barb& b);

/// Unguarded prefixes outside a restriction of their channel, plus a
/// top-level success. Channel barbs are added for every input or output barb.
BarbSet strong_barbs(const Process& p);

/// Keeps only barbs of the given kinds.
BarbSet filter_barbs(const BarbSet& barbs, const std::set<BarbKind>& kinds);

struct WeakBarbs {
  BarbSet definite;
  bool exhaustive = false;
};

/// Barbs of every state reachable by at most `depth` reductions.
WeakBarbs weak_barbs(const Process& p, std::size_t depth);

}  // namespace piw
