#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "covkit/errors.hpp"

namespace covkit {

using VertexId = std::string;
using Edge = std::pair<VertexId, VertexId>;

// Finite directed graph over opaque string ids.  Vertices keep insertion
// order (first occurrence wins), edges are kept sorted without duplicates,
// so two graphs compare equal iff they have the same labels.
struct DirectedGraph {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;

  bool has_vertex(const VertexId& v) const;
  bool has_edge(const VertexId& u, const VertexId& v) const;
  std::vector<VertexId> out_neighbors(const VertexId& u) const;
  std::vector<VertexId> in_neighbors(const VertexId& v) const;

  bool operator==(const DirectedGraph& other) const = default;
};

DirectedGraph make_graph(std::vector<VertexId> vertices, std::vector<Edge> edges);

// ({v0}, {(v0,v0)}), the base of every covering prefix.
DirectedGraph singleton_loop();

// Every violation of the surjective-relation invariants (vertex without an
// outgoing edge, vertex without an incoming edge, edge endpoint that is not
// a declared vertex).  Empty result means the graph is valid.
std::vector<std::string> validate_graph(const DirectedGraph& g);

// Deterministic relabeling: BFS along out-edges from the lexicographically
// least vertex, neighbors in label order, unreached vertices appended in
// label order.  New labels are q0, q1, ...  Comparing canonical forms is how
// generated towers are compared up to renaming.
DirectedGraph canonical_form(const DirectedGraph& g);
bool same_canonical_form(const DirectedGraph& a, const DirectedGraph& b);

struct GraphHom {
  DirectedGraph source;
  DirectedGraph target;
  std::map<VertexId, VertexId> vertex_map;

  const VertexId& operator()(const VertexId& v) const;
};

// Checks the map is total on the source vertex set and lands in the target
// vertex set; throws DomainError(InvalidInput) otherwise.
GraphHom make_hom(DirectedGraph source, DirectedGraph target,
                  std::map<VertexId, VertexId> vertex_map);
GraphHom identity_hom(const DirectedGraph& g);

struct HomProfile {
  bool is_hom = false;
  bool is_edge_surjective = false;
  bool is_positive_directional = false;
  bool is_bidirectional = false;
  bool is_cover = false;
};

// Evaluates all predicate flags by direct quantifier evaluation over edges.
// Flags other than is_hom are evaluated even when the map is not a
// homomorphism.  is_cover = is_edge_surjective && is_positive_directional.
HomProfile hom_profile(const GraphHom& h);

// outer . inner, defined when inner.target equals outer.source by labels;
// throws DomainError(DomainMismatch) otherwise.
GraphHom compose_homs(const GraphHom& outer, const GraphHom& inner);

enum class SequenceKind { Invalid, Walk, Path, Cycle, Circuit };

const char* to_string(SequenceKind kind);

struct VertexSequence {
  std::vector<VertexId> vertices;
  SequenceKind kind = SequenceKind::Invalid;
  int length = 0;  // number of steps, vertices.size() - 1

  const VertexId& first() const { return vertices.front(); }
  const VertexId& last() const { return vertices.back(); }
};

// Assigns the strictest satisfied kind: closed sequences (first = last,
// length >= 1) are circuits when interior vertices are distinct, else
// cycles; open sequences are paths when all vertices are distinct, else
// walks.  A sequence with a non-edge step is Invalid.  Throws
// DomainError(UnknownVertex) when a vertex is not declared in g.
VertexSequence classify_sequence(const DirectedGraph& g,
                                 const std::vector<VertexId>& vertices);

// Joins two walks sharing an endpoint and reclassifies; throws
// DomainError(EndpointMismatch) when last(a) != first(b).
VertexSequence concat_walks(const DirectedGraph& g, const VertexSequence& a,
                            const VertexSequence& b);

// n-fold repetition of a cycle; n = 0 yields the trivial length-0 walk at
// the cycle's base point (the empty infix).
VertexSequence power_cycle(const DirectedGraph& g, const VertexSequence& c, int n);

}  // namespace covkit
