#ifndef COVKIT_BRATTELI_HPP
#define COVKIT_BRATTELI_HPP

#include <optional>
#include <string>
#include <vector>

#include "covkit/errors.hpp"
#include "covkit/structured.hpp"

namespace covkit {

// One edge of a level-n edge set.  Vertices are 1-based indices into the
// vertex sets of the adjacent levels; `order` numbers the edge within the
// incoming fiber of its range vertex (0 on unordered diagrams).
struct BrEdge {
  int source = 0;
  int range = 0;
  int order = 0;

  bool operator==(const BrEdge&) const = default;
  bool operator<(const BrEdge& o) const;
};

// Finite prefix of a Bratteli diagram: vertex counts per level and the edge
// sets between consecutive levels.  Level 0 always has a single vertex.
struct BratteliPrefix {
  std::vector<int> level_sizes;
  std::vector<std::vector<BrEdge>> edges;  // edges[n-1] joins levels n-1 and n
  bool ordered = false;

  int depth() const { return static_cast<int>(level_sizes.size()) - 1; }

  bool operator==(const BratteliPrefix&) const = default;
};

std::vector<std::string> validate_bratteli(const BratteliPrefix& b);

// Incoming edges of vertex v at level n, by order (by source when unordered).
std::vector<BrEdge> incoming_fiber(const BratteliPrefix& b, int n, int v);

// A path from the root to the deepest level, one edge index per level.
struct PathPrefix {
  std::vector<int> edge_index;  // edge_index[n-1] indexes b.edges[n-1]

  bool operator==(const PathPrefix&) const = default;
};

bool path_is_valid(const BratteliPrefix& b, const PathPrefix& p);
int path_terminal(const BratteliPrefix& b, const PathPrefix& p);

// Orders two paths with the same terminal vertex.  The deepest level where
// the paths differ decides, using the edge order there; returns <0, 0, >0.
// Paths with distinct terminal vertices are incomparable.
int compare_paths(const BratteliPrefix& b, const PathPrefix& a, const PathPrefix& c);

// Collapses levels m+1..n-1 into a single edge set whose edges are the paths
// from level m to level n.  On ordered diagrams the composite fiber of each
// vertex is renumbered by the path order above.
BratteliPrefix telescope_bratteli(const BratteliPrefix& b, int m, int n);

struct ExtremalReport {
  std::vector<PathPrefix> max_paths;  // one per deepest-level vertex
  std::vector<PathPrefix> min_paths;
  bool unique_max_prefix = false;  // truncations one level short coincide
  bool unique_min_prefix = false;
  // At each level the minimal incoming edges all leave one vertex.
  bool min_sources_constant = false;
  // reach_to_top[n-1]: least m > n such that every level-m vertex is reached
  // from every level-n vertex, or -1 if no such m exists within the prefix.
  std::vector<int> reach_to_top;
  bool simplicity_on_prefix = false;
  bool properly_ordered_on_prefix = false;
};

ExtremalReport extremal_paths(const BratteliPrefix& b);

struct VershikResult {
  std::optional<PathPrefix> next;
  bool at_maximum = false;
};

// Successor map on paths: replace the shallowest non-maximal edge by its
// order successor and reset everything below to the minimal path into its
// source.  At the unique maximal path, stops, or wraps to the minimal path
// ending at vertex 1 when `wrap` is set.
VershikResult vershik_step(const BratteliPrefix& b, const PathPrefix& p,
                           bool wrap = false);

// Iterates vershik_step from `start` up to `max_steps` times, recording the
// visited paths (including `start`).  Stops early at the maximal path when
// not wrapping, or after closing the cycle when wrapping.
std::vector<PathPrefix> vershik_orbit(const BratteliPrefix& b, const PathPrefix& start,
                                      int max_steps, bool wrap = false);

// Ordered diagram of a tower of circuit levels: level-n vertices are the
// circuits, with one edge per letter of each circuit's word, ordered by
// letter position.
BratteliPrefix kr_to_bratteli(const StructuredCovering& sc);

// Rebuilds a tower of circuit levels from an ordered diagram, naming each
// level's distinguished circuit (the common source of the minimal edges
// above it) as circuit 1.  Throws NotProperlyOrdered when the diagram fails
// extremal_paths' properly_ordered_on_prefix check.
struct TowerFromDiagram {
  StructuredCovering tower;
  // relabel[n]: old 1-based vertex index at level n -> circuit index used.
  std::vector<std::vector<int>> relabel;
};

TowerFromDiagram bratteli_to_kr(const BratteliPrefix& b);

}  // namespace covkit

#endif  // COVKIT_BRATTELI_HPP
