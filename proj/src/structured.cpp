#include "covkit/structured.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace covkit {

const char* to_string(CoveringMode mode) {
  switch (mode) {
    case CoveringMode::Plain: return "plain";
    case CoveringMode::KR: return "kr";
    case CoveringMode::GM: return "gm";
  }
  return "plain";
}

std::optional<CoveringMode> parse_mode(const std::string& text) {
  if (text == "plain") return CoveringMode::Plain;
  if (text == "kr") return CoveringMode::KR;
  if (text == "gm") return CoveringMode::GM;
  return std::nullopt;
}

int StructuredCovering::circuit_count(int n) const {
  if (n == 0) return 1;
  return levels.at(n - 1).count();
}

int StructuredCovering::period(int n, int i) const {
  if (n == 0) {
    if (i != 1) throw DomainError(Errc::UnknownCircuit, "level 0 has a single circuit");
    return 1;
  }
  return levels.at(n - 1).period(i);
}

const CircuitWord& StructuredCovering::word(int n, int i) const {
  if (n < 1 || n > static_cast<int>(words.size()))
    throw DomainError(Errc::BadLevel, "no words at level " + std::to_string(n));
  if (i < 1 || i > static_cast<int>(words[n - 1].size()))
    throw DomainError(Errc::UnknownCircuit,
                      "level " + std::to_string(n) + " has no circuit " + std::to_string(i));
  return words[n - 1][i - 1];
}

Figure8Level level_figure(const StructuredCovering& sc, int n) {
  if (n == 0) {
    const VertexId& v0 = sc.base.levels.at(0).vertices.at(0);
    return Figure8Level{v0, {{v0, v0}}};
  }
  return sc.level(n);
}

std::vector<int> word_letter_starts(const StructuredCovering& sc, int n, int i) {
  const CircuitWord& w = sc.word(n, i);
  std::vector<int> starts{0};
  starts.reserve(w.letters.size() + 1);
  for (int letter : w.letters) starts.push_back(starts.back() + sc.period(n - 1, letter));
  return starts;
}

CircuitWord circuit_decomposition(const StructuredCovering& sc, int n, int i) {
  if (n < 1 || n > sc.depth())
    throw DomainError(Errc::BadLevel, "level " + std::to_string(n) + " out of range");
  Figure8Level upper = level_figure(sc, n);
  if (i < 1 || i > upper.count())
    throw DomainError(Errc::UnknownCircuit,
                      "circuit " + std::to_string(i) + " out of range at level " +
                          std::to_string(n));
  Figure8Level lower = level_figure(sc, n - 1);
  const GraphHom& phi = sc.base.covers.at(n - 1);

  std::vector<VertexId> image;
  for (const auto& v : upper.circuit(i)) {
    auto it = phi.vertex_map.find(v);
    if (it == phi.vertex_map.end())
      throw DomainError(Errc::DecompositionFailure,
                        "cover image undefined for vertex " + v);
    image.push_back(it->second);
  }
  if (image.front() != lower.center || image.back() != lower.center)
    throw DomainError(Errc::DecompositionFailure,
                      "image of circuit " + std::to_string(i) + " at level " +
                          std::to_string(n) + " does not start and end at the center");

  CircuitWord word;
  word.level = n;
  word.circuit_index = i;
  std::size_t segment_start = 0;
  for (std::size_t k = 1; k < image.size(); ++k) {
    if (image[k] != lower.center) continue;
    std::vector<VertexId> segment(image.begin() + segment_start, image.begin() + k + 1);
    int letter = 0;
    for (int t = 1; t <= lower.count(); ++t) {
      if (lower.circuit(t) == segment) {
        letter = t;
        break;
      }
    }
    if (letter == 0)
      throw DomainError(Errc::DecompositionFailure,
                        "segment at step " + std::to_string(segment_start) +
                            " of circuit " + std::to_string(i) + ", level " +
                            std::to_string(n) + " is not a lower circuit");
    word.letters.push_back(letter);
    segment_start = k;
  }
  return word;
}

namespace {

// Pairwise sharing rules for the circuits of one level.  KR: only the
// center is shared.  GM: a shared interior vertex forces the two tails to
// run together and end at the center simultaneously.
void check_sharing(const Figure8Level& f, CoveringMode mode, int n,
                   std::vector<std::string>& violations) {
  const std::string where = "level " + std::to_string(n);
  if (mode == CoveringMode::KR) {
    for (int i = 1; i <= f.count(); ++i) {
      for (int j = i + 1; j <= f.count(); ++j) {
        std::set<VertexId> a(f.circuit(i).begin(), f.circuit(i).end());
        for (int k = 1; k < f.period(j); ++k) {
          if (a.count(f.vertex(j, k)))
            violations.push_back(where + ": circuits " + std::to_string(i) + " and " +
                                 std::to_string(j) + " share interior vertex " +
                                 f.vertex(j, k));
        }
      }
    }
    return;
  }
  for (int i = 1; i <= f.count(); ++i) {
    for (int ip = i; ip <= f.count(); ++ip) {
      for (int j = 1; j <= f.period(i); ++j) {
        for (int jp = (i == ip ? j + 1 : 1); jp <= f.period(ip); ++jp) {
          if (f.vertex(i, j) != f.vertex(ip, jp)) continue;
          if (f.period(i) - j != f.period(ip) - jp) {
            violations.push_back(where + ": shared vertex " + f.vertex(i, j) +
                                 " at (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") and (" + std::to_string(ip) + "," +
                                 std::to_string(jp) + ") has unequal tail lengths");
            continue;
          }
          for (int k = 0; j + k <= f.period(i); ++k) {
            if (f.vertex(i, j + k) != f.vertex(ip, jp + k)) {
              violations.push_back(where + ": tails after shared vertex " +
                                   f.vertex(i, j) + " diverge at step " +
                                   std::to_string(k));
              break;
            }
          }
        }
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_structured(const StructuredCovering& sc) {
  std::vector<std::string> violations;
  for (const auto& v : validate_covering(sc.base)) violations.push_back("base: " + v);
  if (sc.mode == CoveringMode::Plain) {
    violations.push_back("mode plain carries no circuit structure to validate");
    return violations;
  }

  const int N = sc.depth();
  if (static_cast<int>(sc.levels.size()) != std::max(N, 0)) {
    violations.push_back("expected " + std::to_string(std::max(N, 0)) +
                         " structured levels, found " + std::to_string(sc.levels.size()));
    return violations;
  }
  if (sc.words.size() != sc.levels.size()) {
    violations.push_back("word table has " + std::to_string(sc.words.size()) +
                         " levels, expected " + std::to_string(sc.levels.size()));
    return violations;
  }

  for (int n = 1; n <= N; ++n) {
    const Figure8Level& f = sc.level(n);
    const DirectedGraph& g = sc.base.levels[n];
    const std::string where = "level " + std::to_string(n);

    if (!g.has_vertex(f.center)) {
      violations.push_back(where + ": center " + f.center + " is not a vertex");
      continue;
    }
    if (f.count() < 1) {
      violations.push_back(where + ": no circuits");
      continue;
    }

    bool shapes_ok = true;
    for (int i = 1; i <= f.count(); ++i) {
      const auto& c = f.circuit(i);
      if (c.size() < 2 || c.front() != f.center || c.back() != f.center) {
        violations.push_back(where + ": circuit " + std::to_string(i) +
                             " does not run from center to center");
        shapes_ok = false;
        continue;
      }
      try {
        VertexSequence s = classify_sequence(g, c);
        if (s.kind != SequenceKind::Circuit) {
          violations.push_back(where + ": circuit " + std::to_string(i) +
                               " classifies as " + to_string(s.kind));
          shapes_ok = false;
        }
      } catch (const DomainError& e) {
        violations.push_back(where + ": circuit " + std::to_string(i) + ": " + e.what());
        shapes_ok = false;
      }
      for (int j = i + 1; j <= f.count(); ++j)
        if (f.circuit(i) == f.circuit(j))
          violations.push_back(where + ": circuits " + std::to_string(i) + " and " +
                               std::to_string(j) + " are identical");
    }

    std::set<Edge> union_edges;
    for (int i = 1; i <= f.count(); ++i)
      for (std::size_t k = 0; k + 1 < f.circuit(i).size(); ++k)
        union_edges.insert({f.circuit(i)[k], f.circuit(i)[k + 1]});
    std::set<Edge> graph_edges(g.edges.begin(), g.edges.end());
    for (const auto& e : union_edges)
      if (!graph_edges.count(e))
        violations.push_back(where + ": circuit edge (" + e.first + "," + e.second +
                             ") missing from graph");
    for (const auto& e : graph_edges)
      if (!union_edges.count(e))
        violations.push_back(where + ": graph edge (" + e.first + "," + e.second +
                             ") lies on no circuit");

    if (shapes_ok) check_sharing(f, sc.mode, n, violations);
  }

  // Center-to-center and first-step conditions along the covers.
  for (int n = 1; n < N; ++n) {
    const Figure8Level& upper = sc.level(n + 1);
    const Figure8Level& lower = sc.level(n);
    const auto& map = sc.base.covers[n].vertex_map;
    const std::string where =
        "cover " + std::to_string(n + 1) + " -> " + std::to_string(n);
    auto image = [&](const VertexId& v) -> const VertexId* {
      auto it = map.find(v);
      return it == map.end() ? nullptr : &it->second;
    };
    if (const VertexId* c = image(upper.center)) {
      if (*c != lower.center)
        violations.push_back(where + ": center maps to " + *c + ", not the center");
    } else {
      violations.push_back(where + ": center has no image");
    }
    if (lower.period(1) < 1) continue;
    const VertexId& first_target = lower.vertex(1, 1);
    for (int i = 1; i <= upper.count(); ++i) {
      if (const VertexId* w = image(upper.vertex(i, 1))) {
        if (*w != first_target)
          violations.push_back(where + ": first step of circuit " + std::to_string(i) +
                               " maps to " + *w + ", expected " + first_target);
      }
    }
  }

  // Word table agrees with recomputed decompositions; periods add up.
  for (int n = 1; n <= N; ++n) {
    if (static_cast<int>(sc.words[n - 1].size()) != sc.circuit_count(n)) {
      violations.push_back("level " + std::to_string(n) + ": word table has " +
                           std::to_string(sc.words[n - 1].size()) + " entries for " +
                           std::to_string(sc.circuit_count(n)) + " circuits");
      continue;
    }
    for (int i = 1; i <= sc.circuit_count(n); ++i) {
      const CircuitWord& w = sc.word(n, i);
      const std::string where =
          "word(" + std::to_string(n) + "," + std::to_string(i) + ")";
      if (w.level != n || w.circuit_index != i)
        violations.push_back(where + ": header says level " + std::to_string(w.level) +
                             ", circuit " + std::to_string(w.circuit_index));
      if (w.letters.empty()) {
        violations.push_back(where + ": empty");
        continue;
      }
      bool in_range = true;
      int total = 0;
      for (int letter : w.letters) {
        if (letter < 1 || letter > sc.circuit_count(n - 1)) {
          violations.push_back(where + ": letter " + std::to_string(letter) +
                               " out of range");
          in_range = false;
          break;
        }
        total += sc.period(n - 1, letter);
      }
      if (!in_range) continue;
      if (w.letters.front() != 1)
        violations.push_back(where + ": first letter is " +
                             std::to_string(w.letters.front()) + ", expected 1");
      if (total != sc.period(n, i))
        violations.push_back(where + ": letter periods sum to " + std::to_string(total) +
                             ", circuit period is " + std::to_string(sc.period(n, i)));
      try {
        CircuitWord fresh = circuit_decomposition(sc, n, i);
        if (fresh.letters != w.letters)
          violations.push_back(where + ": stored letters disagree with decomposition");
      } catch (const std::exception& e) {
        violations.push_back(where + ": " + e.what());
      }
    }
  }
  return violations;
}

RankProfile rank_profile(const StructuredCovering& sc) {
  const int N = sc.depth();
  if (N < 1) throw DomainError(Errc::BadLevel, "no structured levels");
  RankProfile r;
  for (int n = 1; n <= N; ++n) r.circuit_counts.push_back(sc.circuit_count(n));
  r.window_start = std::max(1, N / 2);
  r.kr_prefix_rank = 0;
  r.gm_prefix_rank = 0;
  for (int n = r.window_start; n <= N; ++n) {
    int l = sc.circuit_count(n);
    r.kr_prefix_rank = std::max(r.kr_prefix_rank, l);
    r.gm_prefix_rank = r.gm_prefix_rank == 0 ? l : std::min(r.gm_prefix_rank, l);
  }
  return r;
}

SimplicityReport simplicity_check(const StructuredCovering& sc) {
  SimplicityReport report;
  const int N = sc.depth();
  report.vertex_reach_on_prefix = true;
  report.edge_reach_on_prefix = true;
  report.isolated_points_on_prefix = true;

  for (int n = 1; n < N; ++n) {
    Figure8Level base_fig = level_figure(sc, n);
    std::vector<std::set<VertexId>> circuit_vertices(base_fig.count() + 1);
    std::vector<std::set<Edge>> circuit_edges(base_fig.count() + 1);
    for (int t = 1; t <= base_fig.count(); ++t) {
      const auto& c = base_fig.circuit(t);
      circuit_vertices[t].insert(c.begin(), c.end());
      for (std::size_t k = 0; k + 1 < c.size(); ++k)
        circuit_edges[t].insert({c[k], c[k + 1]});
    }
    std::set<VertexId> all_vertices(sc.base.levels[n].vertices.begin(),
                                    sc.base.levels[n].vertices.end());
    std::set<Edge> all_edges(sc.base.levels[n].edges.begin(),
                             sc.base.levels[n].edges.end());

    LevelReach reach;
    reach.level = n;
    // letters[i] = set of level-n letters of circuit i's symbol at level m.
    std::vector<std::set<int>> letters(sc.circuit_count(n + 1) + 1);
    for (int i = 1; i <= sc.circuit_count(n + 1); ++i)
      letters[i].insert(sc.word(n + 1, i).letters.begin(),
                        sc.word(n + 1, i).letters.end());
    for (int m = n + 1; m <= N; ++m) {
      if (m > n + 1) {
        std::vector<std::set<int>> next(sc.circuit_count(m) + 1);
        for (int i = 1; i <= sc.circuit_count(m); ++i)
          for (int j : sc.word(m, i).letters)
            next[i].insert(letters[j].begin(), letters[j].end());
        letters = std::move(next);
      }
      bool all_v = true, all_e = true;
      for (int i = 1; i <= sc.circuit_count(m); ++i) {
        std::set<VertexId> vs;
        std::set<Edge> es;
        for (int t : letters[i]) {
          vs.insert(circuit_vertices[t].begin(), circuit_vertices[t].end());
          es.insert(circuit_edges[t].begin(), circuit_edges[t].end());
        }
        if (vs != all_vertices) all_v = false;
        if (es != all_edges) all_e = false;
      }
      if (all_v && reach.least_m_vertex_reach < 0) reach.least_m_vertex_reach = m;
      if (all_e && reach.least_m_edge_reach < 0) reach.least_m_edge_reach = m;
      if (reach.least_m_vertex_reach > 0 && reach.least_m_edge_reach > 0) break;
    }
    if (reach.least_m_vertex_reach < 0) report.vertex_reach_on_prefix = false;
    if (reach.least_m_edge_reach < 0) report.edge_reach_on_prefix = false;
    report.reach.push_back(reach);

    // Isolated-point condition at level n.
    std::map<VertexId, VertexId> projection;  // level m -> level n, grown per m
    for (const auto& [u, v] : sc.base.covers[n].vertex_map) projection[u] = v;
    for (const auto& v : sc.base.levels[n].vertices) {
      IsolatedPointWitness w;
      w.level = n;
      w.vertex = v;
      std::map<VertexId, VertexId> proj = projection;
      for (int m = n + 1; m <= N && !w.found; ++m) {
        if (m > n + 1) {
          std::map<VertexId, VertexId> next;
          for (const auto& [u, mid] : sc.base.covers[m - 1].vertex_map)
            next[u] = proj.at(mid);
          proj = std::move(next);
        }
        std::vector<VertexId> preimages;
        for (const auto& u : sc.base.levels[m].vertices)
          if (proj.at(u) == v) preimages.push_back(u);
        if (preimages.size() >= 2) {
          w.found = true;
          w.m = m;
          w.u1 = preimages[0];
          w.u2 = preimages[1];
        }
      }
      if (!w.found) report.isolated_points_on_prefix = false;
      report.isolated.push_back(w);
    }
  }
  return report;
}

KRPartitionLevel kr_partition(const StructuredCovering& sc, int n, int depth) {
  if (n < 0 || depth <= n || depth > sc.depth())
    throw DomainError(Errc::BadLevel,
                      "need 0 <= n < depth <= " + std::to_string(sc.depth()));
  Figure8Level f = level_figure(sc, n);
  for (int i = 1; i <= f.count() && n >= 1; ++i) {
    std::set<VertexId> a(f.circuit(i).begin(), f.circuit(i).end());
    for (int j = i + 1; j <= f.count(); ++j)
      for (int k = 1; k < f.period(j); ++k)
        if (a.count(f.vertex(j, k)))
          throw DomainError(Errc::InvalidInput,
                            "towers need disjoint circuit interiors at level " +
                                std::to_string(n) + "; shared vertex " +
                                f.vertex(j, k));
  }

  KRPartitionLevel part;
  part.level = n;
  part.depth = depth;
  part.threads = threads_at_depth(sc.base, depth);
  for (int i = 1; i <= f.count(); ++i)
    part.towers.push_back({i, std::vector<std::vector<int>>(f.period(i))});

  GraphHom to_n = composed_cover(sc.base, depth, n);
  for (std::size_t x = 0; x < part.threads.size(); ++x) {
    const Thread& t = part.threads[x];
    const VertexId& at_n = t.coordinates[n];
    if (at_n == f.center) {
      // Base floor: all successors share the level-n coordinate because the
      // covers are positive-directional, so the first out-neighbor decides.
      const VertexId successor_top = sc.base.levels[depth].out_neighbors(t.top()).at(0);
      const VertexId& next_at_n = to_n.vertex_map.at(successor_top);
      int tower = 0;
      for (int i = 1; i <= f.count(); ++i)
        if (f.vertex(i, 1) == next_at_n) {
          tower = i;
          break;
        }
      if (tower == 0)
        throw DomainError(Errc::InvalidInput,
                          "no circuit starts at " + next_at_n + " on level " +
                              std::to_string(n));
      part.towers[tower - 1].floors[0].push_back(static_cast<int>(x));
    } else {
      int tower = 0, floor = 0;
      for (int i = 1; i <= f.count() && tower == 0; ++i)
        for (int k = 1; k < f.period(i); ++k)
          if (f.vertex(i, k) == at_n) {
            tower = i;
            floor = k;
            break;
          }
      if (tower == 0)
        throw DomainError(Errc::InvalidInput,
                          "vertex " + at_n + " lies on no circuit of level " +
                              std::to_string(n));
      part.towers[tower - 1].floors[floor].push_back(static_cast<int>(x));
    }
  }
  return part;
}

FiberReport fiber_analysis(const StructuredCovering& sc, int depth) {
  if (depth < 1 || depth > sc.depth())
    throw DomainError(Errc::BadLevel, "depth " + std::to_string(depth) + " out of range");
  ThreadRelation rel = successor_relation_at_depth(sc.base, depth);

  FiberReport report;
  report.depth = depth;
  report.threads = rel.threads;
  report.predecessor_count = rel.predecessor_count;

  const VertexId& center = level_figure(sc, depth).center;
  for (std::size_t x = 0; x < rel.threads.size(); ++x)
    if (rel.threads[x].top() == center) report.central_index = static_cast<int>(x);
  report.central_predecessors =
      report.central_index < 0 ? 0 : rel.predecessor_count[report.central_index];

  report.rank_bound = 0;
  for (int n = std::max(1, depth / 2); n <= depth; ++n)
    report.rank_bound = std::max(report.rank_bound, sc.circuit_count(n));

  report.noncentral_all_one = true;
  for (std::size_t x = 0; x < rel.threads.size(); ++x) {
    if (static_cast<int>(x) == report.central_index) continue;
    if (rel.predecessor_count[x] != 1) report.noncentral_all_one = false;
  }
  report.central_within_bound = report.central_predecessors <= report.rank_bound;
  return report;
}

namespace {

class VertexUnion {
 public:
  const VertexId& find(const VertexId& v) {
    auto it = parent_.find(v);
    if (it == parent_.end() || it->second == v) return v;
    const VertexId root = find(it->second);
    parent_[v] = root;
    return parent_.find(v)->second;
  }

  void unite(const VertexId& a, const VertexId& b) {
    VertexId ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
    parent_.try_emplace(ra, ra);
  }

 private:
  std::map<VertexId, VertexId> parent_;
};

}  // namespace

MergeOutcome merge_equal_symbols(const StructuredCovering& sc, int m) {
  if (m < 1 || m > sc.depth())
    throw DomainError(Errc::BadLevel, "level " + std::to_string(m) + " out of range");

  MergeOutcome out{sc, false, {}, {}};
  const int l_m = sc.circuit_count(m);

  std::map<std::vector<int>, std::vector<int>> by_word;
  for (int i = 1; i <= l_m; ++i) by_word[sc.word(m, i).letters].push_back(i);
  std::vector<std::vector<int>> classes;
  for (auto& [letters, members] : by_word) classes.push_back(members);
  std::sort(classes.begin(), classes.end());
  out.classes = classes;

  out.new_index_of.assign(l_m + 1, 0);
  std::vector<int> reps;
  for (const auto& cls : classes) reps.push_back(cls.front());
  std::sort(reps.begin(), reps.end());
  for (const auto& cls : classes) {
    int rep = cls.front();
    int new_index = static_cast<int>(std::lower_bound(reps.begin(), reps.end(), rep) -
                                     reps.begin()) + 1;
    for (int i : cls) out.new_index_of[i] = new_index;
  }

  bool any = false;
  for (const auto& cls : classes) any = any || cls.size() > 1;
  if (!any) return out;
  out.changed = true;

  const Figure8Level& f = sc.level(m);
  VertexUnion uf;
  for (const auto& cls : classes) {
    int rep = cls.front();
    for (std::size_t d = 1; d < cls.size(); ++d)
      for (int j = 1; j < f.period(rep); ++j)
        uf.unite(f.vertex(rep, j), f.vertex(cls[d], j));
  }
  auto q = [&](const VertexId& v) { return uf.find(v); };

  const GraphHom& down = sc.base.covers[m - 1];
  for (const auto& v : sc.base.levels[m].vertices)
    if (down.vertex_map.at(v) != down.vertex_map.at(q(v)))
      throw DomainError(Errc::InvalidInput,
                        "identified vertices " + v + " and " + q(v) +
                            " have different images below");

  std::vector<VertexId> new_vertices;
  for (const auto& v : sc.base.levels[m].vertices) new_vertices.push_back(q(v));
  std::vector<Edge> new_edges;
  for (const auto& [u, v] : sc.base.levels[m].edges) new_edges.emplace_back(q(u), q(v));
  DirectedGraph new_graph = make_graph(std::move(new_vertices), std::move(new_edges));

  Figure8Level new_level;
  new_level.center = q(f.center);
  for (int rep : reps) {
    std::vector<VertexId> circuit;
    for (const auto& v : f.circuit(rep)) circuit.push_back(q(v));
    new_level.circuits.push_back(std::move(circuit));
  }

  std::map<VertexId, VertexId> down_map;
  for (const auto& v : sc.base.levels[m].vertices)
    down_map[q(v)] = down.vertex_map.at(v);

  out.tower.base.levels[m] = new_graph;
  out.tower.base.covers[m - 1] =
      make_hom(new_graph, sc.base.levels[m - 1], std::move(down_map));
  if (m < sc.depth()) {
    std::map<VertexId, VertexId> up_map;
    for (const auto& [v, image] : sc.base.covers[m].vertex_map) up_map[v] = q(image);
    out.tower.base.covers[m] =
        make_hom(sc.base.levels[m + 1], new_graph, std::move(up_map));
  }
  out.tower.levels[m - 1] = new_level;

  std::vector<CircuitWord> new_words;
  for (int rep : reps) {
    CircuitWord w = sc.word(m, rep);
    w.circuit_index = out.new_index_of[rep];
    new_words.push_back(std::move(w));
  }
  out.tower.words[m - 1] = std::move(new_words);
  if (m < sc.depth()) {
    for (CircuitWord& w : out.tower.words[m])
      for (int& letter : w.letters) letter = out.new_index_of[letter];
  }
  return out;
}

}  // namespace covkit
