#include "piw/congruence.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "piw/syntax.hpp"

namespace piw {

namespace {

class Canonicalizer {
 public:
  explicit Canonicalizer(const Process& root) {
    for (const Name& n : fn(root))
      if (n.reserved()) avoid_.insert(n);
  }

  Process level(const Process& p, std::size_t depth) {
    std::vector<Name> binders;
    std::vector<Process> raw;
    flatten(p, binders, raw);

    std::vector<NameSet> raw_free;
    raw_free.reserve(raw.size());
    for (const Process& c : raw) raw_free.push_back(fn(c));
    std::vector<Name> used;
    for (const Name& b : binders) {
      for (const NameSet& f : raw_free) {
        if (f.count(b)) {
          used.push_back(b);
          break;
        }
      }
    }
    const std::size_t k = used.size();

    std::vector<Process> comps;
    comps.reserve(raw.size());
    for (const Process& c : raw) comps.push_back(component(c, depth + k));

    if (k == 0) return assemble(depth, {}, sorted(comps));

    // Components sharing a binder form a cluster. Each cluster picks its own
    // binder order, then clusters are ordered by their local rendering, so
    // identical private parts never multiply the search.
    std::vector<std::size_t> parent(k);
    for (std::size_t i = 0; i < k; ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    std::vector<std::vector<std::size_t>> comp_binders(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (std::size_t i = 0; i < k; ++i)
        if (raw_free[c].count(used[i])) comp_binders[c].push_back(i);
      for (std::size_t j = 1; j < comp_binders[c].size(); ++j)
        parent[find(comp_binders[c][j])] = find(comp_binders[c][0]);
    }
    std::map<std::size_t, Cluster> clusters;
    for (std::size_t i = 0; i < k; ++i) clusters[find(i)].binders.push_back(used[i]);
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (!comp_binders[c].empty()) clusters[find(comp_binders[c][0])].comps.push_back(comps[c]);

    std::vector<Cluster> ordered;
    for (auto& [root, cl] : clusters) {
      order_cluster(cl);
      ordered.push_back(std::move(cl));
    }
    std::sort(ordered.begin(), ordered.end(), [](const Cluster& a, const Cluster& b) { return a.key < b.key; });

    NameMap assign;
    std::vector<Name> names_out;
    for (const Cluster& cl : ordered)
      for (const Name& b : cl.binders) {
        Name n = level_name(depth + names_out.size() + 1);
        assign[b] = n;
        names_out.push_back(n);
      }
    std::vector<Process> renamed;
    renamed.reserve(comps.size());
    for (const Process& c : comps) renamed.push_back(rename(c, assign));
    return assemble(depth, names_out, sorted(renamed));
  }

 private:
  struct Cluster {
    std::vector<Name> binders;  // placeholders, reordered by order_cluster
    std::vector<Process> comps;
    std::string key;
  };

  // Orders the binders of a cluster by an alpha-invariant signature, trying
  // every order within a tie group, and records the smallest rendering made
  // with position-indexed local names.
  static void order_cluster(Cluster& cl) {
    const std::size_t k = cl.binders.size();
    std::vector<std::string> signature(k);
    for (std::size_t i = 0; i < k; ++i) {
      NameMap marks;
      for (std::size_t j = 0; j < k; ++j) marks[cl.binders[j]] = reserved_name(i == j ? "@" : "?");
      std::vector<std::string> parts;
      for (const Process& c : cl.comps) {
        if (!fn(c).count(cl.binders[i])) continue;
        parts.push_back(render_term(rename(c, marks)));
      }
      std::sort(parts.begin(), parts.end());
      for (const std::string& s : parts) signature[i] += s + "\n";
    }
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return signature[a] < signature[b]; });
    std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) in `order`
    for (std::size_t i = 0; i < k;) {
      std::size_t j = i;
      while (j < k && signature[order[j]] == signature[order[i]]) ++j;
      groups.emplace_back(i, j);
      i = j;
    }

    bool have_best = false;
    std::vector<std::size_t> best_order;
    auto evaluate = [&] {
      NameMap assign;
      for (std::size_t j = 0; j < k; ++j) assign[cl.binders[order[j]]] = reserved_name("@" + std::to_string(j + 1));
      std::vector<std::string> parts;
      parts.reserve(cl.comps.size());
      for (const Process& c : cl.comps) parts.push_back(render_term(rename(c, assign)));
      std::sort(parts.begin(), parts.end());
      std::string key;
      for (const std::string& s : parts) key += s + "\n";
      if (!have_best || key < cl.key) {
        have_best = true;
        cl.key = std::move(key);
        best_order = order;
      }
    };
    permute_groups(order, groups, 0, evaluate);
    std::vector<Name> reordered;
    for (std::size_t j : best_order) reordered.push_back(cl.binders[j]);
    cl.binders = std::move(reordered);
  }

  NameSet avoid_;
  std::size_t placeholder_counter_ = 0;

  Name level_name(std::size_t d) const {
    Name n = reserved_name("b" + std::to_string(d));
    return fresh_variant(n, avoid_);
  }

  Name placeholder() { return reserved_name("#" + std::to_string(++placeholder_counter_)); }

  void flatten(const Process& p, std::vector<Name>& binders, std::vector<Process>& out) {
    switch (p.kind()) {
      case Kind::nil:
        return;
      case Kind::par:
        flatten(p.left(), binders, out);
        flatten(p.right(), binders, out);
        return;
      case Kind::restrict: {
        Name ph = placeholder();
        binders.push_back(ph);
        flatten(substitute(p.body(), p.binder(), ph), binders, out);
        return;
      }
      default:
        out.push_back(p);
        return;
    }
  }

  Process component(const Process& c, std::size_t depth) {
    switch (c.kind()) {
      case Kind::output:
        return Process::output(c.channel(), c.datum(), level(c.body(), depth));
      case Kind::input: {
        Name b = level_name(depth + 1);
        return Process::input(c.channel(), b, level(substitute(c.body(), c.binder(), b), depth + 1));
      }
      case Kind::repl:
        return Process::repl(level(c.body(), depth));
      default:
        return c;
    }
  }

  static std::vector<Process> sorted(std::vector<Process> comps) {
    std::vector<std::pair<std::string, Process>> items;
    items.reserve(comps.size());
    for (Process& c : comps) items.emplace_back(render_term(c), std::move(c));
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Process> out;
    for (auto& it : items) out.push_back(std::move(it.second));
    return out;
  }

  static Process assemble(std::size_t, const std::vector<Name>& binders,
                          const std::vector<Process>& comps) {
    return assemble_level(Level{binders, comps});
  }

  template <typename F>
  static void permute_groups(std::vector<std::size_t>& order,
                             const std::vector<std::pair<std::size_t, std::size_t>>& groups,
                             std::size_t g, F& visit) {
    if (g == groups.size()) {
      visit();
      return;
    }
    auto [b, e] = groups[g];
    std::sort(order.begin() + b, order.begin() + e);
    do {
      permute_groups(order, groups, g + 1, visit);
    } while (std::next_permutation(order.begin() + b, order.begin() + e));
  }
};

void one_step_unfoldings(const Process& p, std::vector<Process>& out) {
  auto wrap = [&](const Process& inner, auto rebuild) {
    std::vector<Process> sub;
    one_step_unfoldings(inner, sub);
    for (const Process& s : sub) out.push_back(rebuild(s));
  };
  switch (p.kind()) {
    case Kind::nil:
    case Kind::success:
    case Kind::hole:
      return;
    case Kind::output:
      wrap(p.body(), [&](const Process& s) { return Process::output(p.channel(), p.datum(), s); });
      return;
    case Kind::input:
      wrap(p.body(), [&](const Process& s) { return Process::input(p.channel(), p.binder(), s); });
      return;
    case Kind::restrict:
      wrap(p.body(), [&](const Process& s) { return Process::restrict(p.binder(), s); });
      return;
    case Kind::repl:
      out.push_back(Process::par(p.body(), p));
      wrap(p.body(), [&](const Process& s) { return Process::repl(s); });
      return;
    case Kind::par:
      wrap(p.left(), [&](const Process& s) { return Process::par(s, p.right()); });
      wrap(p.right(), [&](const Process& s) { return Process::par(p.left(), s); });
      return;
  }
}

}  // namespace

CongruenceNF normalize(const Process& p, std::size_t unfold_budget) {
  Canonicalizer c(p);
  return CongruenceNF{c.level(p, 0), unfold_budget};
}

Process canonical(const Process& p) { return normalize(p).canonical; }

std::string canonical_key(const Process& p) { return render_term(canonical(p)); }

std::vector<Process> unfoldings(const Process& p, std::size_t budget) {
  std::vector<Process> result{canonical(p)};
  std::unordered_set<std::string> seen{render_term(result.front())};
  std::vector<Process> frontier = result;
  for (std::size_t round = 0; round < budget && !frontier.empty(); ++round) {
    std::vector<Process> next;
    for (const Process& t : frontier) {
      std::vector<Process> steps;
      one_step_unfoldings(t, steps);
      for (const Process& s : steps) {
        Process nf = canonical(s);
        if (seen.insert(render_term(nf)).second) {
          result.push_back(nf);
          next.push_back(nf);
        }
      }
    }
    frontier = std::move(next);
  }
  return result;
}

bool congruent(const Process& p, const Process& q, std::size_t unfold_budget) {
  Process np = canonical(p);
  Process nq = canonical(q);
  if (np == nq) return true;
  if (unfold_budget == 0) return false;
  std::unordered_set<std::string> left;
  for (const Process& t : unfoldings(np, unfold_budget)) left.insert(render_term(t));
  for (const Process& t : unfoldings(nq, unfold_budget))
    if (left.count(render_term(t))) return true;
  return false;
}

Level split_level(const Process& canonical_form) {
  Level level;
  Process p = canonical_form;
  while (p.kind() == Kind::restrict) {
    level.binders.push_back(p.binder());
    p = p.body();
  }
  std::vector<Process> stack{p};
  std::vector<Process> reversed;
  // Left-nested chains are walked right-to-left, then reversed.
  while (!stack.empty()) {
    Process t = stack.back();
    stack.pop_back();
    if (t.kind() == Kind::par) {
      stack.push_back(t.left());
      stack.push_back(t.right());
    } else if (!t.is_nil()) {
      reversed.push_back(t);
    }
  }
  level.components.assign(reversed.rbegin(), reversed.rend());
  return level;
}

Process assemble_level(const Level& level) {
  Process body = Process::nil();
  for (std::size_t i = 0; i < level.components.size(); ++i)
    body = i == 0 ? level.components[i] : Process::par(body, level.components[i]);
  for (auto it = level.binders.rbegin(); it != level.binders.rend(); ++it)
    body = Process::restrict(*it, body);
  return body;
}

}  // namespace piw
