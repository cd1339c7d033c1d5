#include "covkit/covering.hpp"

#include <algorithm>

namespace covkit {

std::vector<std::string> validate_covering(const CoveringPrefix& c) {
  std::vector<std::string> violations;
  if (c.levels.empty()) {
    violations.push_back("no levels");
    return violations;
  }
  if (c.covers.size() + 1 != c.levels.size())
    violations.push_back("expected " + std::to_string(c.levels.size() - 1) +
                         " covers, found " + std::to_string(c.covers.size()));

  if (!(c.levels[0] == singleton_loop()) &&
      !(c.levels[0].vertices.size() == 1 && c.levels[0].edges.size() == 1 &&
        c.levels[0].edges[0].first == c.levels[0].edges[0].second))
    violations.push_back("level 0 is not a singleton loop graph");

  for (std::size_t n = 0; n < c.levels.size(); ++n)
    for (const auto& v : validate_graph(c.levels[n]))
      violations.push_back("level " + std::to_string(n) + ": " + v);

  for (std::size_t n = 0; n < c.covers.size() && n + 1 < c.levels.size(); ++n) {
    const GraphHom& h = c.covers[n];
    std::string where = "cover " + std::to_string(n) + " (level " +
                        std::to_string(n + 1) + " -> " + std::to_string(n) + ")";
    if (!(h.source == c.levels[n + 1])) {
      violations.push_back(where + ": source graph is not level " + std::to_string(n + 1));
      continue;
    }
    if (!(h.target == c.levels[n])) {
      violations.push_back(where + ": target graph is not level " + std::to_string(n));
      continue;
    }
    HomProfile p = hom_profile(h);
    if (!p.is_hom) violations.push_back(where + ": not a graph homomorphism");
    if (!p.is_edge_surjective) violations.push_back(where + ": not edge-surjective");
    if (!p.is_positive_directional)
      violations.push_back(where + ": not positive-directional");
  }
  return violations;
}

GraphHom composed_cover(const CoveringPrefix& c, int m, int n) {
  if (n < 0 || m < n || m > c.depth())
    throw DomainError(Errc::BadLevel, "composed_cover(" + std::to_string(m) + "," +
                                          std::to_string(n) + ") out of range");
  GraphHom h = identity_hom(c.levels[m]);
  for (int k = m - 1; k >= n; --k) h = compose_homs(c.covers[k], h);
  return h;
}

CoveringPrefix telescope(const CoveringPrefix& c, const std::vector<int>& keep) {
  if (keep.empty() || keep.front() != 0)
    throw DomainError(Errc::BadIndexSet, "index list must start at 0");
  for (std::size_t k = 0; k + 1 < keep.size(); ++k)
    if (keep[k] >= keep[k + 1])
      throw DomainError(Errc::BadIndexSet, "index list must be strictly increasing");
  if (keep.back() > c.depth())
    throw DomainError(Errc::BadIndexSet,
                      "index " + std::to_string(keep.back()) + " exceeds depth " +
                          std::to_string(c.depth()));

  CoveringPrefix out;
  for (int n : keep) out.levels.push_back(c.levels[n]);
  for (std::size_t k = 0; k + 1 < keep.size(); ++k)
    out.covers.push_back(composed_cover(c, keep[k + 1], keep[k]));
  return out;
}

std::vector<Thread> threads_at_depth(const CoveringPrefix& c, int depth) {
  if (depth < 0 || depth > c.depth())
    throw DomainError(Errc::BadLevel, "depth " + std::to_string(depth) + " out of range");
  // The top coordinate determines the rest, so one thread per vertex.
  std::vector<Thread> threads;
  threads.reserve(c.levels[depth].vertices.size());
  for (const auto& v : c.levels[depth].vertices) {
    Thread t;
    t.coordinates.assign(depth + 1, VertexId{});
    t.coordinates[depth] = v;
    for (int i = depth - 1; i >= 0; --i)
      t.coordinates[i] = c.covers[i].vertex_map.at(t.coordinates[i + 1]);
    threads.push_back(std::move(t));
  }
  return threads;
}

ThreadRelation successor_relation_at_depth(const CoveringPrefix& c, int depth) {
  ThreadRelation r;
  r.depth = depth;
  r.threads = threads_at_depth(c, depth);
  const int count = static_cast<int>(r.threads.size());
  r.successor_count.assign(count, 0);
  r.predecessor_count.assign(count, 0);

  for (int s = 0; s < count; ++s) {
    for (int t = 0; t < count; ++t) {
      bool related = true;
      for (int i = 0; i <= depth && related; ++i)
        related = c.levels[i].has_edge(r.threads[s].coordinates[i],
                                       r.threads[t].coordinates[i]);
      if (related) {
        r.pairs.emplace_back(s, t);
        ++r.successor_count[s];
        ++r.predecessor_count[t];
      }
    }
  }

  r.all_covers_bidirectional = true;
  for (int n = 0; n < depth; ++n)
    if (!hom_profile(c.covers[n]).is_bidirectional) r.all_covers_bidirectional = false;
  return r;
}

}  // namespace covkit
