#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covkit/covering.hpp"

namespace covkit {

enum class CoveringMode { Plain, KR, GM };

const char* to_string(CoveringMode mode);
std::optional<CoveringMode> parse_mode(const std::string& text);

// One level of a structured covering: a generalized figure-8 graph given by
// its central vertex and the ordered circuits through it.  circuits[i-1] is
// the full vertex sequence of c_{n,i}, starting and ending at the center.
struct Figure8Level {
  VertexId center;
  std::vector<std::vector<VertexId>> circuits;

  int count() const { return static_cast<int>(circuits.size()); }
  int period(int i) const { return static_cast<int>(circuits.at(i - 1).size()) - 1; }
  const std::vector<VertexId>& circuit(int i) const { return circuits.at(i - 1); }
  // v_{n,i,j}; j = 0 and j = period(i) both name the center.
  const VertexId& vertex(int i, int j) const { return circuits.at(i - 1).at(j); }

  bool operator==(const Figure8Level& other) const = default;
};

// word(n,i): the decomposition of the cover image of c_{n,i} into circuits
// of the level below, recorded as 1-based letter indices.  Level-1 words are
// spelled over the single level-0 loop circuit.
struct CircuitWord {
  int level = 0;
  int circuit_index = 0;
  std::vector<int> letters;

  int size() const { return static_cast<int>(letters.size()); }
  bool operator==(const CircuitWord& other) const = default;
};

// A covering prefix whose levels 1..N are figure-8 graphs with circuit
// structure and a full word table.  KR mode: circuits pairwise share only
// the center.  GM mode: circuits may share tail segments subject to the
// merge condition.  Both modes require centers to map to centers and first
// steps to map to v_{n,1,1}, so valid KR towers are also valid GM towers.
struct StructuredCovering {
  CoveringPrefix base;
  std::vector<Figure8Level> levels;  // levels[n-1] describes base.levels[n]
  CoveringMode mode = CoveringMode::KR;
  std::vector<std::vector<CircuitWord>> words;  // words[n-1][i-1] = word(n,i)

  int depth() const { return base.depth(); }
  int circuit_count(int n) const;  // l_n; l_0 = 1
  int period(int n, int i) const;  // l(n,i); l(0,1) = 1
  const Figure8Level& level(int n) const { return levels.at(n - 1); }
  const CircuitWord& word(int n, int i) const;
};

// The implicit level-0 structure: the base vertex with its loop circuit.
Figure8Level level_figure(const StructuredCovering& sc, int n);

// Start offsets of word(n,i)'s letters inside the period of c_{n,i}; has
// size() + 1 entries, the last one equal to period(n,i).
std::vector<int> word_letter_starts(const StructuredCovering& sc, int n, int i);

// All violations of the mode's invariants: base covering, figure-8 shape,
// mode-specific sharing rules, center and first-step conditions, and word
// table consistency against freshly recomputed decompositions.
std::vector<std::string> validate_structured(const StructuredCovering& sc);

// Walks the cover image of c_{n,i}, cutting at each visit of the lower
// center, and matches every segment against the lower circuit list.  Throws
// DomainError(DecompositionFailure) when a segment is not a circuit there.
CircuitWord circuit_decomposition(const StructuredCovering& sc, int n, int i);

// Circuit counts per level plus prefix rank proxies taken over the later
// half of the prefix: max for the KR reading, min for the GM reading.  Both
// are estimates; only the tail of an infinite tower determines the rank.
struct RankProfile {
  std::vector<int> circuit_counts;  // l_1 .. l_N
  int window_start = 1;             // first level included in the proxies
  int kr_prefix_rank = 0;           // max l_n over the window
  int gm_prefix_rank = 0;           // min l_n over the window
};

RankProfile rank_profile(const StructuredCovering& sc);

struct LevelReach {
  int level = 0;
  int least_m_vertex_reach = -1;  // least m with full V(G_n) reach, -1 = none
  int least_m_edge_reach = -1;    // least m with full E(G_n) reach, -1 = none
};

struct IsolatedPointWitness {
  int level = 0;
  VertexId vertex;
  bool found = false;
  int m = -1;
  VertexId u1, u2;  // distinct level-m vertices with equal projections
};

struct SimplicityReport {
  std::vector<LevelReach> reach;                 // levels 1 .. N-1
  std::vector<IsolatedPointWitness> isolated;    // per (level, vertex)
  bool vertex_reach_on_prefix = false;
  bool edge_reach_on_prefix = false;
  bool isolated_points_on_prefix = false;
};

// For each level n, the least m such that every circuit of G_m projects
// onto all of V(G_n) (and onto all of E(G_n), the stronger reading), plus
// witnesses for the isolated-point condition.  All statements hold on the
// prefix only.
SimplicityReport simplicity_check(const StructuredCovering& sc);

struct KRTower {
  int circuit_index = 0;
  // floors[k] lists thread indices; floor 0 is the base, floor k >= 1 the
  // thread set over v_{n,i,k}.  Height equals the circuit period.
  std::vector<std::vector<int>> floors;
};

struct KRPartitionLevel {
  int level = 0;
  int depth = 0;
  std::vector<Thread> threads;
  std::vector<KRTower> towers;
};

// Kakutani-Rohlin partition of the depth-`depth` thread set induced by the
// level-n circuits.  Requires n < depth so the base floors are determined,
// and disjoint circuit interiors at level n.
KRPartitionLevel kr_partition(const StructuredCovering& sc, int n, int depth);

struct FiberReport {
  int depth = 0;
  std::vector<Thread> threads;
  std::vector<int> predecessor_count;
  int central_index = -1;
  int central_predecessors = 0;
  int rank_bound = 0;  // KR prefix rank proxy of the truncated tower
  bool noncentral_all_one = false;
  bool central_within_bound = false;
};

// Predecessor counts of the successor relation at the given depth together
// with the KR fiber statement: away from the central thread the relation
// inverts uniquely, and the central fiber is bounded by the rank proxy.
FiberReport fiber_analysis(const StructuredCovering& sc, int depth);

struct MergeOutcome {
  StructuredCovering tower;
  bool changed = false;
  std::vector<std::vector<int>> classes;  // groups of old indices, merged ones first kept
  std::vector<int> new_index_of;          // 1-based old index -> new index
};

// Identifies level-m circuits with equal words (equal symbols below row m)
// positionwise, keeping the smallest index of each class, and rewrites the
// level-(m+1) word letters accordingly.  Returns the input unchanged with
// changed = false when all words are distinct.
MergeOutcome merge_equal_symbols(const StructuredCovering& sc, int m);

}  // namespace covkit
