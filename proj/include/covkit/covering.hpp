#pragma once

#include <string>
#include <vector>

#include "covkit/graph.hpp"

namespace covkit {

// A finite prefix G_0 <- G_1 <- ... <- G_N of a graph covering.  covers[n]
// maps levels[n+1] onto levels[n]; level 0 is the singleton loop.
struct CoveringPrefix {
  std::vector<DirectedGraph> levels;
  std::vector<GraphHom> covers;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
};

// Violations of the covering invariants on the prefix: level count vs cover
// count, G_0 shape, per-level graph validity, per-cover endpoint graphs and
// cover flags.  Statements hold on the prefix only.
std::vector<std::string> validate_covering(const CoveringPrefix& c);

// Composite cover levels[m] -> levels[n] for m >= n (identity when m == n).
GraphHom composed_cover(const CoveringPrefix& c, int m, int n);

// Keeps the levels named by `keep` (must start at 0, strictly increasing)
// and joins them by composite covers.  Throws DomainError(BadIndexSet).
CoveringPrefix telescope(const CoveringPrefix& c, const std::vector<int>& keep);

// A depth-n thread (x_0, ..., x_n) with x_i = cover_i(x_{i+1}).  Threads are
// in bijection with V(G_n) via the top coordinate.
struct Thread {
  std::vector<VertexId> coordinates;

  const VertexId& top() const { return coordinates.back(); }
  bool operator==(const Thread& other) const = default;
};

// All depth-n threads, enumerated in the vertex order of levels[n].
std::vector<Thread> threads_at_depth(const CoveringPrefix& c, int depth);

// The successor relation on depth-n threads: (x, y) related iff
// (x_i, y_i) is an edge of levels[i] for every i <= n.  Determinism is
// reported, not asserted: counts say how many successors/predecessors each
// thread has at this depth.
struct ThreadRelation {
  int depth = 0;
  std::vector<Thread> threads;
  std::vector<std::pair<int, int>> pairs;  // indices into threads
  std::vector<int> successor_count;
  std::vector<int> predecessor_count;
  bool all_covers_bidirectional = false;
};

ThreadRelation successor_relation_at_depth(const CoveringPrefix& c, int depth);

}  // namespace covkit
