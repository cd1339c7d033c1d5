#include "covkit/bratteli.hpp"

#include "covkit/build.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace covkit {

bool BrEdge::operator<(const BrEdge& o) const {
  if (range != o.range) return range < o.range;
  if (order != o.order) return order < o.order;
  return source < o.source;
}

namespace {

// Indices into b.edges[n-1] of the fiber of v, sorted by order (by source on
// unordered diagrams).
std::vector<int> fiber_indices(const BratteliPrefix& b, int n, int v) {
  const auto& level = b.edges.at(n - 1);
  std::vector<int> out;
  for (std::size_t k = 0; k < level.size(); ++k)
    if (level[k].range == v) out.push_back(static_cast<int>(k));
  std::sort(out.begin(), out.end(), [&](int a, int c) {
    if (level[a].order != level[c].order) return level[a].order < level[c].order;
    return level[a].source < level[c].source;
  });
  return out;
}

// Backward-greedy path into vertex v at the deepest level, picking the edge
// at `pick` position within each fiber (0 = minimal, fiber size - 1 = maximal).
PathPrefix extremal_into(const BratteliPrefix& b, int v, bool maximal) {
  PathPrefix p;
  p.edge_index.assign(b.depth(), 0);
  for (int n = b.depth(); n >= 1; --n) {
    std::vector<int> fiber = fiber_indices(b, n, v);
    int idx = maximal ? fiber.back() : fiber.front();
    p.edge_index[n - 1] = idx;
    v = b.edges[n - 1][idx].source;
  }
  return p;
}

void require_ordered(const BratteliPrefix& b) {
  if (!b.ordered)
    throw DomainError(Errc::InvalidInput, "operation needs an ordered diagram");
}

void require_path(const BratteliPrefix& b, const PathPrefix& p) {
  if (!path_is_valid(b, p))
    throw DomainError(Errc::InvalidPath, "path does not fit the diagram");
}

}  // namespace

std::vector<std::string> validate_bratteli(const BratteliPrefix& b) {
  std::vector<std::string> violations;
  if (b.level_sizes.empty()) {
    violations.push_back("no levels");
    return violations;
  }
  if (b.level_sizes[0] != 1)
    violations.push_back("level 0 has " + std::to_string(b.level_sizes[0]) +
                         " vertices, expected 1");
  for (std::size_t n = 0; n < b.level_sizes.size(); ++n)
    if (b.level_sizes[n] < 1)
      violations.push_back("level " + std::to_string(n) + " is empty");
  if (static_cast<int>(b.edges.size()) != b.depth()) {
    violations.push_back("expected " + std::to_string(b.depth()) +
                         " edge sets, found " + std::to_string(b.edges.size()));
    return violations;
  }

  for (int n = 1; n <= b.depth(); ++n) {
    const std::string where = "edge set " + std::to_string(n);
    std::set<int> sources, ranges;
    for (const BrEdge& e : b.edges[n - 1]) {
      if (e.source < 1 || e.source > b.level_sizes[n - 1])
        violations.push_back(where + ": source " + std::to_string(e.source) +
                             " out of range");
      else
        sources.insert(e.source);
      if (e.range < 1 || e.range > b.level_sizes[n])
        violations.push_back(where + ": range " + std::to_string(e.range) +
                             " out of range");
      else
        ranges.insert(e.range);
      if (!b.ordered && e.order != 0)
        violations.push_back(where + ": order " + std::to_string(e.order) +
                             " on an unordered diagram");
    }
    for (int v = 1; v <= b.level_sizes[n - 1]; ++v)
      if (!sources.count(v))
        violations.push_back(where + ": vertex " + std::to_string(v) +
                             " of level " + std::to_string(n - 1) +
                             " has no outgoing edge");
    for (int v = 1; v <= b.level_sizes[n]; ++v)
      if (!ranges.count(v))
        violations.push_back(where + ": vertex " + std::to_string(v) +
                             " of level " + std::to_string(n) +
                             " has no incoming edge");
    if (b.ordered) {
      for (int v = 1; v <= b.level_sizes[n]; ++v) {
        std::vector<int> orders;
        for (const BrEdge& e : b.edges[n - 1])
          if (e.range == v) orders.push_back(e.order);
        std::sort(orders.begin(), orders.end());
        for (std::size_t k = 0; k < orders.size(); ++k)
          if (orders[k] != static_cast<int>(k) + 1) {
            violations.push_back(where + ": fiber of vertex " + std::to_string(v) +
                                 " is not numbered 1.." +
                                 std::to_string(orders.size()));
            break;
          }
      }
    }
  }
  return violations;
}

std::vector<BrEdge> incoming_fiber(const BratteliPrefix& b, int n, int v) {
  if (n < 1 || n > b.depth())
    throw DomainError(Errc::BadLevel, "level " + std::to_string(n) + " out of range");
  if (v < 1 || v > b.level_sizes[n])
    throw DomainError(Errc::InvalidInput, "vertex " + std::to_string(v) +
                                              " out of range at level " +
                                              std::to_string(n));
  std::vector<BrEdge> out;
  for (int k : fiber_indices(b, n, v)) out.push_back(b.edges[n - 1][k]);
  return out;
}

bool path_is_valid(const BratteliPrefix& b, const PathPrefix& p) {
  if (static_cast<int>(p.edge_index.size()) != b.depth()) return false;
  int at = 1;
  for (int n = 1; n <= b.depth(); ++n) {
    int idx = p.edge_index[n - 1];
    if (idx < 0 || idx >= static_cast<int>(b.edges[n - 1].size())) return false;
    const BrEdge& e = b.edges[n - 1][idx];
    if (e.source != at) return false;
    at = e.range;
  }
  return true;
}

int path_terminal(const BratteliPrefix& b, const PathPrefix& p) {
  require_path(b, p);
  if (p.edge_index.empty()) return 1;
  return b.edges.back()[p.edge_index.back()].range;
}

int compare_paths(const BratteliPrefix& b, const PathPrefix& a, const PathPrefix& c) {
  require_ordered(b);
  require_path(b, a);
  require_path(b, c);
  if (path_terminal(b, a) != path_terminal(b, c))
    throw DomainError(Errc::InvalidInput,
                      "paths with different terminal vertices are incomparable");
  for (int n = b.depth(); n >= 1; --n) {
    const BrEdge& ea = b.edges[n - 1][a.edge_index[n - 1]];
    const BrEdge& ec = b.edges[n - 1][c.edge_index[n - 1]];
    if (ea.order != ec.order) return ea.order < ec.order ? -1 : 1;
  }
  return 0;
}

BratteliPrefix telescope_bratteli(const BratteliPrefix& b, int m, int n) {
  if (m < 0 || n <= m || n > b.depth())
    throw DomainError(Errc::BadLevel,
                      "need 0 <= m < n <= " + std::to_string(b.depth()));

  BratteliPrefix out;
  out.ordered = b.ordered;
  out.level_sizes.assign(b.level_sizes.begin(), b.level_sizes.begin() + m + 1);
  out.level_sizes.insert(out.level_sizes.end(), b.level_sizes.begin() + n,
                         b.level_sizes.end());
  out.edges.assign(b.edges.begin(), b.edges.begin() + m);

  // paths_to[v]: edge-index sequences through levels m+1..t ending at v.
  std::vector<std::vector<std::vector<int>>> paths_to(b.level_sizes[m] + 1);
  for (int v = 1; v <= b.level_sizes[m]; ++v) paths_to[v] = {{}};
  for (int t = m + 1; t <= n; ++t) {
    std::vector<std::vector<std::vector<int>>> next(b.level_sizes[t] + 1);
    for (std::size_t k = 0; k < b.edges[t - 1].size(); ++k) {
      const BrEdge& e = b.edges[t - 1][k];
      for (const auto& path : paths_to[e.source]) {
        std::vector<int> longer = path;
        longer.push_back(static_cast<int>(k));
        next[e.range].push_back(std::move(longer));
      }
    }
    paths_to = std::move(next);
  }

  std::vector<BrEdge> composite;
  for (int v = 1; v <= b.level_sizes[n]; ++v) {
    auto fiber = paths_to[v];
    std::sort(fiber.begin(), fiber.end(),
              [&](const std::vector<int>& x, const std::vector<int>& y) {
                for (int t = n; t > m; --t) {
                  const BrEdge& ex = b.edges[t - 1][x[t - m - 1]];
                  const BrEdge& ey = b.edges[t - 1][y[t - m - 1]];
                  if (b.ordered && ex.order != ey.order) return ex.order < ey.order;
                  if (!b.ordered && ex.source != ey.source) return ex.source < ey.source;
                }
                return x < y;
              });
    for (std::size_t k = 0; k < fiber.size(); ++k) {
      const BrEdge& first = b.edges[m][fiber[k][0]];
      composite.push_back(
          {first.source, v, b.ordered ? static_cast<int>(k) + 1 : 0});
    }
  }
  std::sort(composite.begin(), composite.end());
  out.edges.push_back(std::move(composite));
  out.edges.insert(out.edges.end(), b.edges.begin() + n, b.edges.end());
  return out;
}

ExtremalReport extremal_paths(const BratteliPrefix& b) {
  require_ordered(b);
  const int N = b.depth();
  ExtremalReport rep;
  for (int v = 1; v <= b.level_sizes[N]; ++v) {
    rep.max_paths.push_back(extremal_into(b, v, true));
    rep.min_paths.push_back(extremal_into(b, v, false));
  }

  auto unique_truncations = [&](const std::vector<PathPrefix>& paths) {
    std::set<std::vector<int>> seen;
    for (const PathPrefix& p : paths) {
      std::vector<int> trunc = p.edge_index;
      if (!trunc.empty()) trunc.pop_back();
      seen.insert(trunc);
    }
    return seen.size() <= 1;
  };
  rep.unique_max_prefix = unique_truncations(rep.max_paths);
  rep.unique_min_prefix = unique_truncations(rep.min_paths);

  rep.min_sources_constant = true;
  for (int t = 1; t <= N; ++t) {
    std::set<int> sources;
    for (int v = 1; v <= b.level_sizes[t]; ++v) {
      std::vector<int> fiber = fiber_indices(b, t, v);
      sources.insert(b.edges[t - 1][fiber.front()].source);
    }
    if (sources.size() > 1) rep.min_sources_constant = false;
  }

  for (int start = 1; start < N; ++start) {
    // reached[u] = level-t vertices reachable from vertex u of level `start`.
    std::vector<std::set<int>> reached(b.level_sizes[start] + 1);
    for (int u = 1; u <= b.level_sizes[start]; ++u) reached[u] = {u};
    int least = -1;
    for (int t = start + 1; t <= N && least < 0; ++t) {
      std::vector<std::set<int>> next(b.level_sizes[start] + 1);
      for (const BrEdge& e : b.edges[t - 1])
        for (int u = 1; u <= b.level_sizes[start]; ++u)
          if (reached[u].count(e.source)) next[u].insert(e.range);
      reached = std::move(next);
      bool full = true;
      for (int u = 1; u <= b.level_sizes[start]; ++u)
        if (static_cast<int>(reached[u].size()) != b.level_sizes[t]) full = false;
      if (full) least = t;
    }
    rep.reach_to_top.push_back(least);
  }

  // The top gap alone cannot witness growing connectivity, so the level just
  // below the deepest one is exempt from the check.
  rep.simplicity_on_prefix = true;
  for (int start = 1; start <= N - 2; ++start)
    if (rep.reach_to_top[start - 1] < 0) rep.simplicity_on_prefix = false;

  rep.properly_ordered_on_prefix = rep.min_sources_constant &&
                                   rep.unique_min_prefix &&
                                   rep.simplicity_on_prefix;
  return rep;
}

VershikResult vershik_step(const BratteliPrefix& b, const PathPrefix& p, bool wrap) {
  require_ordered(b);
  require_path(b, p);

  VershikResult res;
  for (int n = 1; n <= b.depth(); ++n) {
    int idx = p.edge_index[n - 1];
    const BrEdge& e = b.edges[n - 1][idx];
    std::vector<int> fiber = fiber_indices(b, n, e.range);
    auto pos = std::find(fiber.begin(), fiber.end(), idx) - fiber.begin();
    if (pos + 1 < static_cast<long>(fiber.size())) {
      int succ = fiber[pos + 1];
      BratteliPrefix below;
      below.level_sizes.assign(b.level_sizes.begin(), b.level_sizes.begin() + n);
      below.edges.assign(b.edges.begin(), b.edges.begin() + n - 1);
      below.ordered = b.ordered;
      PathPrefix next = extremal_into(below, b.edges[n - 1][succ].source, false);
      next.edge_index.push_back(succ);
      next.edge_index.insert(next.edge_index.end(), p.edge_index.begin() + n,
                             p.edge_index.end());
      res.next = std::move(next);
      return res;
    }
  }
  res.at_maximum = true;
  if (wrap) res.next = extremal_into(b, 1, false);
  return res;
}

std::vector<PathPrefix> vershik_orbit(const BratteliPrefix& b, const PathPrefix& start,
                                      int max_steps, bool wrap) {
  require_path(b, start);
  std::vector<PathPrefix> orbit{start};
  for (int step = 0; step < max_steps; ++step) {
    VershikResult res = vershik_step(b, orbit.back(), wrap);
    if (!res.next) break;
    if (wrap && *res.next == start) break;
    orbit.push_back(std::move(*res.next));
  }
  return orbit;
}

BratteliPrefix kr_to_bratteli(const StructuredCovering& sc) {
  const int N = sc.depth();
  if (N < 1) throw DomainError(Errc::BadLevel, "no structured levels");
  BratteliPrefix b;
  b.ordered = true;
  b.level_sizes.push_back(1);
  for (int n = 1; n <= N; ++n) {
    b.level_sizes.push_back(sc.circuit_count(n));
    std::vector<BrEdge> level;
    for (int i = 1; i <= sc.circuit_count(n); ++i) {
      const auto& letters = sc.word(n, i).letters;
      for (std::size_t j = 0; j < letters.size(); ++j)
        level.push_back({letters[j], i, static_cast<int>(j) + 1});
    }
    std::sort(level.begin(), level.end());
    b.edges.push_back(std::move(level));
  }
  return b;
}

TowerFromDiagram bratteli_to_kr(const BratteliPrefix& b) {
  std::vector<std::string> violations = validate_bratteli(b);
  if (!violations.empty())
    throw DomainError(Errc::InvalidInput, "diagram invalid: " + violations.front());
  if (!b.ordered)
    throw DomainError(Errc::NotProperlyOrdered, "diagram carries no edge orders");
  const int N = b.depth();
  if (N < 1) throw DomainError(Errc::BadLevel, "diagram has no edge sets");

  ExtremalReport rep = extremal_paths(b);
  if (!rep.properly_ordered_on_prefix) {
    std::string why = !rep.min_sources_constant
                          ? "minimal edges do not share a source at every level"
                      : !rep.unique_min_prefix
                          ? "minimal path truncations disagree"
                          : "connectivity never saturates below the top level";
    throw DomainError(Errc::NotProperlyOrdered, why);
  }

  TowerFromDiagram out;
  out.relabel.assign(N + 1, {});
  out.relabel[0] = {0, 1};
  for (int n = 1; n <= N; ++n) {
    std::vector<int>& map = out.relabel[n];
    map.assign(b.level_sizes[n] + 1, 0);
    if (n == N) {
      for (int v = 1; v <= b.level_sizes[n]; ++v) map[v] = v;
      continue;
    }
    std::vector<int> fiber = fiber_indices(b, n + 1, 1);
    int w = b.edges[n][fiber.front()].source;
    for (int v = 1; v <= b.level_sizes[n]; ++v)
      map[v] = v == w ? 1 : (v < w ? v + 1 : v);
  }

  WordTable level_words(N);
  for (int n = 1; n <= N; ++n) {
    level_words[n - 1].resize(b.level_sizes[n]);
    for (int v = 1; v <= b.level_sizes[n]; ++v) {
      std::vector<int> letters;
      for (int k : fiber_indices(b, n, v))
        letters.push_back(out.relabel[n - 1][b.edges[n - 1][k].source]);
      level_words[n - 1][out.relabel[n][v] - 1] = std::move(letters);
    }
  }
  out.tower = kr_tower_from_words(level_words);
  return out;
}

}  // namespace covkit
