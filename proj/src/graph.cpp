#include "covkit/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace covkit {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::EndpointMismatch: return "EndpointMismatch";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::BadIndexSet: return "BadIndexSet";
    case Errc::BadLevel: return "BadLevel";
    case Errc::DecompositionFailure: return "DecompositionFailure";
    case Errc::NotProperlyOrdered: return "NotProperlyOrdered";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::UnknownCircuit: return "UnknownCircuit";
    case Errc::WindowTooWide: return "WindowTooWide";
    case Errc::WindowExceedsSymbol: return "WindowExceedsSymbol";
    case Errc::ShapeMismatch: return "ShapeMismatch";
  }
  return "UnknownError";
}

bool DirectedGraph::has_vertex(const VertexId& v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

bool DirectedGraph::has_edge(const VertexId& u, const VertexId& v) const {
  return std::binary_search(edges.begin(), edges.end(), Edge{u, v});
}

std::vector<VertexId> DirectedGraph::out_neighbors(const VertexId& u) const {
  std::vector<VertexId> out;
  auto lo = std::lower_bound(edges.begin(), edges.end(), Edge{u, VertexId{}});
  for (auto it = lo; it != edges.end() && it->first == u; ++it) out.push_back(it->second);
  return out;
}

std::vector<VertexId> DirectedGraph::in_neighbors(const VertexId& v) const {
  std::vector<VertexId> in;
  for (const auto& e : edges)
    if (e.second == v) in.push_back(e.first);
  return in;
}

DirectedGraph make_graph(std::vector<VertexId> vertices, std::vector<Edge> edges) {
  DirectedGraph g;
  std::set<VertexId> seen;
  for (auto& v : vertices)
    if (seen.insert(v).second) g.vertices.push_back(std::move(v));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  return g;
}

DirectedGraph singleton_loop() {
  return make_graph({"v0"}, {{"v0", "v0"}});
}

std::vector<std::string> validate_graph(const DirectedGraph& g) {
  std::vector<std::string> violations;
  std::set<VertexId> declared(g.vertices.begin(), g.vertices.end());
  std::set<VertexId> with_out, with_in;
  for (const auto& [u, v] : g.edges) {
    if (!declared.count(u))
      violations.push_back("edge (" + u + "," + v + ") uses undeclared source " + u);
    if (!declared.count(v))
      violations.push_back("edge (" + u + "," + v + ") uses undeclared target " + v);
    with_out.insert(u);
    with_in.insert(v);
  }
  for (const auto& v : g.vertices) {
    if (!with_out.count(v)) violations.push_back("vertex " + v + " has no outgoing edge");
    if (!with_in.count(v)) violations.push_back("vertex " + v + " has no incoming edge");
  }
  return violations;
}

DirectedGraph canonical_form(const DirectedGraph& g) {
  if (g.vertices.empty()) return g;
  std::vector<VertexId> sorted = g.vertices;
  std::sort(sorted.begin(), sorted.end());

  std::map<VertexId, int> order;
  std::deque<VertexId> queue{sorted.front()};
  order[sorted.front()] = 0;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (const auto& v : g.out_neighbors(u)) {
      if (!order.count(v)) {
        order[v] = static_cast<int>(order.size());
        queue.push_back(v);
      }
    }
  }
  for (const auto& v : sorted)
    if (!order.count(v)) order[v] = static_cast<int>(order.size());

  auto relabel = [&](const VertexId& v) { return "q" + std::to_string(order.at(v)); };
  std::vector<VertexId> vertices(g.vertices.size());
  for (const auto& v : g.vertices) vertices[order.at(v)] = relabel(v);
  std::vector<Edge> edges;
  edges.reserve(g.edges.size());
  for (const auto& [u, v] : g.edges) edges.emplace_back(relabel(u), relabel(v));
  return make_graph(std::move(vertices), std::move(edges));
}

bool same_canonical_form(const DirectedGraph& a, const DirectedGraph& b) {
  return canonical_form(a) == canonical_form(b);
}

const VertexId& GraphHom::operator()(const VertexId& v) const {
  auto it = vertex_map.find(v);
  if (it == vertex_map.end())
    throw DomainError(Errc::UnknownVertex, "vertex " + v + " not in hom domain");
  return it->second;
}

GraphHom make_hom(DirectedGraph source, DirectedGraph target,
                  std::map<VertexId, VertexId> vertex_map) {
  for (const auto& v : source.vertices)
    if (!vertex_map.count(v))
      throw DomainError(Errc::InvalidInput, "vertex_map not total: missing " + v);
  for (const auto& [v, image] : vertex_map) {
    if (!source.has_vertex(v))
      throw DomainError(Errc::InvalidInput, "vertex_map key " + v + " not a source vertex");
    if (!target.has_vertex(image))
      throw DomainError(Errc::InvalidInput,
                        "image " + image + " of " + v + " not a target vertex");
  }
  return GraphHom{std::move(source), std::move(target), std::move(vertex_map)};
}

GraphHom identity_hom(const DirectedGraph& g) {
  std::map<VertexId, VertexId> id;
  for (const auto& v : g.vertices) id[v] = v;
  return GraphHom{g, g, std::move(id)};
}

HomProfile hom_profile(const GraphHom& h) {
  HomProfile p;
  const auto& map = h.vertex_map;

  std::set<Edge> image;
  p.is_hom = true;
  for (const auto& [u, v] : h.source.edges) {
    Edge e{map.at(u), map.at(v)};
    if (!h.target.has_edge(e.first, e.second)) p.is_hom = false;
    image.insert(e);
  }
  p.is_edge_surjective =
      image == std::set<Edge>(h.target.edges.begin(), h.target.edges.end());

  // (u,v),(u,v') in E implies equal images of v and v'; mirrored for the
  // bidirectional half.
  p.is_positive_directional = true;
  p.is_bidirectional = true;
  std::map<VertexId, std::set<VertexId>> out_images, in_images;
  for (const auto& [u, v] : h.source.edges) {
    out_images[u].insert(map.at(v));
    in_images[v].insert(map.at(u));
  }
  for (const auto& [u, images] : out_images)
    if (images.size() > 1) p.is_positive_directional = false;
  for (const auto& [v, images] : in_images)
    if (images.size() > 1) p.is_bidirectional = false;
  p.is_bidirectional = p.is_bidirectional && p.is_positive_directional;

  p.is_cover = p.is_edge_surjective && p.is_positive_directional;
  return p;
}

GraphHom compose_homs(const GraphHom& outer, const GraphHom& inner) {
  if (!(inner.target == outer.source))
    throw DomainError(Errc::DomainMismatch,
                      "inner.target does not equal outer.source");
  std::map<VertexId, VertexId> composite;
  for (const auto& [v, mid] : inner.vertex_map) composite[v] = outer.vertex_map.at(mid);
  return GraphHom{inner.source, outer.target, std::move(composite)};
}

const char* to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::Invalid: return "invalid";
    case SequenceKind::Walk: return "walk";
    case SequenceKind::Path: return "path";
    case SequenceKind::Cycle: return "cycle";
    case SequenceKind::Circuit: return "circuit";
  }
  return "invalid";
}

VertexSequence classify_sequence(const DirectedGraph& g,
                                 const std::vector<VertexId>& vertices) {
  for (const auto& v : vertices)
    if (!g.has_vertex(v))
      throw DomainError(Errc::UnknownVertex, "vertex " + v + " not in graph");

  VertexSequence s;
  s.vertices = vertices;
  s.length = vertices.empty() ? 0 : static_cast<int>(vertices.size()) - 1;
  if (vertices.empty()) return s;

  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    if (!g.has_edge(vertices[i], vertices[i + 1])) return s;

  bool closed = s.length >= 1 && vertices.front() == vertices.back();
  if (closed) {
    // Interior distinctness looks at v_0 .. v_{l-1}.
    std::set<VertexId> interior(vertices.begin(), vertices.end() - 1);
    s.kind = interior.size() == vertices.size() - 1 ? SequenceKind::Circuit
                                                    : SequenceKind::Cycle;
  } else {
    std::set<VertexId> distinct(vertices.begin(), vertices.end());
    s.kind = distinct.size() == vertices.size() ? SequenceKind::Path
                                                : SequenceKind::Walk;
  }
  return s;
}

VertexSequence concat_walks(const DirectedGraph& g, const VertexSequence& a,
                            const VertexSequence& b) {
  if (a.kind == SequenceKind::Invalid || b.kind == SequenceKind::Invalid)
    throw DomainError(Errc::InvalidInput, "concat of an invalid sequence");
  if (a.last() != b.first())
    throw DomainError(Errc::EndpointMismatch,
                      "last of first walk is " + a.last() + ", first of second is " +
                          b.first());
  std::vector<VertexId> joined = a.vertices;
  joined.insert(joined.end(), b.vertices.begin() + 1, b.vertices.end());
  return classify_sequence(g, joined);
}

VertexSequence power_cycle(const DirectedGraph& g, const VertexSequence& c, int n) {
  if (c.kind != SequenceKind::Cycle && c.kind != SequenceKind::Circuit)
    throw DomainError(Errc::InvalidInput,
                      std::string("power of a non-cycle (") + to_string(c.kind) + ")");
  if (n < 0) throw DomainError(Errc::InvalidInput, "negative cycle power");
  std::vector<VertexId> repeated{c.first()};
  for (int k = 0; k < n; ++k)
    repeated.insert(repeated.end(), c.vertices.begin() + 1, c.vertices.end());
  return classify_sequence(g, repeated);
}

}  // namespace covkit
