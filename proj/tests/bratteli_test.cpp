#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "covkit/bratteli.hpp"
#include "covkit/build.hpp"
#include "fixtures.hpp"

using namespace covkit;
using namespace covkit::testing;

namespace {

// Two disjoint spines: properly ordered fails in every respect.
BratteliPrefix spines() {
  BratteliPrefix b;
  b.ordered = true;
  b.level_sizes = {1, 2, 2, 2};
  b.edges = {
      {{1, 1, 1}, {1, 2, 1}},
      {{1, 1, 1}, {2, 2, 1}},
      {{1, 1, 1}, {2, 2, 1}},
  };
  return b;
}

std::vector<PathPrefix> paths_into(const BratteliPrefix& b, int terminal) {
  std::vector<PathPrefix> acc;
  std::vector<int> stack(b.depth());
  auto rec = [&](auto&& self, int n, int v) -> void {
    if (n == 0) {
      if (v == 1) acc.push_back({stack});
      return;
    }
    for (std::size_t k = 0; k < b.edges[n - 1].size(); ++k)
      if (b.edges[n - 1][k].range == v) {
        stack[n - 1] = static_cast<int>(k);
        self(self, n - 1, b.edges[n - 1][k].source);
      }
  };
  rec(rec, b.depth(), terminal);
  return acc;
}

}  // namespace

TEST_CASE("diagram validation catches shape faults") {
  BratteliPrefix b = kr_to_bratteli(fibonacci_tower(3));
  CHECK(validate_bratteli(b).empty());

  BratteliPrefix wide = b;
  wide.level_sizes[0] = 2;
  CHECK(!validate_bratteli(wide).empty());

  BratteliPrefix dangling = b;
  dangling.level_sizes[2] = 3;  // vertex 3 has no edges at all
  auto violations = validate_bratteli(dangling);
  CHECK(violations.size() == 2);

  BratteliPrefix stray = b;
  stray.edges[1].push_back({9, 1, 3});
  CHECK(!validate_bratteli(stray).empty());

  BratteliPrefix twice = b;
  twice.edges[0][1].order = 1;  // fiber of vertex 1 now numbered 1,1
  CHECK(!validate_bratteli(twice).empty());

  BratteliPrefix unordered = b;
  unordered.ordered = false;
  CHECK(!validate_bratteli(unordered).empty());
  for (auto& level : unordered.edges)
    for (BrEdge& e : level) e.order = 0;
  CHECK(validate_bratteli(unordered).empty());
}

TEST_CASE("circuit towers turn into ordered diagrams edge for edge") {
  BratteliPrefix b = kr_to_bratteli(fibonacci_tower(4));
  CHECK(b.ordered);
  CHECK(b.level_sizes == std::vector<int>{1, 2, 2, 2, 2});
  CHECK(b.edges[0] == std::vector<BrEdge>{{1, 1, 1}, {1, 1, 2}, {1, 2, 1}});
  for (int n = 2; n <= 4; ++n)
    CHECK(b.edges[n - 1] == std::vector<BrEdge>{{1, 1, 1}, {2, 1, 2}, {1, 2, 1}});
  CHECK(validate_bratteli(b).empty());

  std::vector<BrEdge> fiber = incoming_fiber(b, 2, 1);
  REQUIRE(fiber.size() == 2);
  CHECK(fiber[0] == BrEdge{1, 1, 1});
  CHECK(fiber[1] == BrEdge{2, 1, 2});
  CHECK_THROWS_AS((void)incoming_fiber(b, 9, 1), DomainError);
}

TEST_CASE("path comparison keys on the deepest difference") {
  BratteliPrefix b = kr_to_bratteli(fibonacci_tower(3));
  std::vector<PathPrefix> all = paths_into(b, 1);
  CHECK(all.size() == 5);
  for (const PathPrefix& p : all) {
    CHECK(path_is_valid(b, p));
    CHECK(path_terminal(b, p) == 1);
  }

  std::sort(all.begin(), all.end(), [&](const PathPrefix& x, const PathPrefix& y) {
    return compare_paths(b, x, y) < 0;
  });
  for (std::size_t k = 0; k + 1 < all.size(); ++k)
    CHECK(compare_paths(b, all[k], all[k + 1]) < 0);
  CHECK(compare_paths(b, all[0], all[0]) == 0);

  CHECK_THROWS_AS((void)compare_paths(b, paths_into(b, 1)[0], paths_into(b, 2)[0]),
                  DomainError);
  CHECK(!path_is_valid(b, PathPrefix{{0, 0}}));
  CHECK(!path_is_valid(b, PathPrefix{{0, 9, 0}}));
}

TEST_CASE("the successor map walks paths in lex order") {
  BratteliPrefix b = kr_to_bratteli(fibonacci_tower(3));
  for (int terminal : {1, 2}) {
    std::vector<PathPrefix> all = paths_into(b, terminal);
    std::sort(all.begin(), all.end(), [&](const PathPrefix& x, const PathPrefix& y) {
      return compare_paths(b, x, y) < 0;
    });
    std::vector<PathPrefix> orbit = vershik_orbit(b, all.front(), 100);
    CHECK(orbit == all);
    VershikResult last = vershik_step(b, orbit.back());
    CHECK(last.at_maximum);
    CHECK(!last.next.has_value());
  }
}

TEST_CASE("wrapping closes the orbit through vertex 1") {
  BratteliPrefix b = kr_to_bratteli(dyadic_tower(2));
  ExtremalReport rep = extremal_paths(b);
  std::vector<PathPrefix> orbit = vershik_orbit(b, rep.min_paths[0], 100, true);
  CHECK(orbit.size() == 4);
  VershikResult wrapped = vershik_step(b, rep.max_paths[0], true);
  CHECK(wrapped.at_maximum);
  CHECK(wrapped.next == rep.min_paths[0]);

  CHECK_THROWS_AS((void)vershik_step(b, PathPrefix{{0, 9}}), DomainError);
  BratteliPrefix unordered = b;
  unordered.ordered = false;
  CHECK_THROWS_AS((void)vershik_orbit(unordered, rep.min_paths[0], 5), DomainError);
}

TEST_CASE("telescoping collapses inner levels and keeps the path order") {
  BratteliPrefix b = kr_to_bratteli(dyadic_tower(4));
  BratteliPrefix t = telescope_bratteli(b, 0, 2);
  CHECK(t.level_sizes == std::vector<int>{1, 1, 1, 1});
  REQUIRE(t.edges[0].size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(t.edges[0][k] == BrEdge{1, 1, k + 1});
  CHECK(t.edges[1] == b.edges[2]);
  CHECK(validate_bratteli(t).empty());

  // Orbits correspond step by step: composite edge k+1 stands for the k-th
  // two-step path in lex order.
  std::vector<PathPrefix> fine = vershik_orbit(b, extremal_paths(b).min_paths[0], 100);
  std::vector<PathPrefix> coarse = vershik_orbit(t, extremal_paths(t).min_paths[0], 100);
  REQUIRE(fine.size() == 16);
  REQUIRE(coarse.size() == 16);
  for (std::size_t j = 0; j < fine.size(); ++j) {
    const auto& e = fine[j].edge_index;
    int comp = e[1] * 2 + e[0];
    CHECK(coarse[j].edge_index == std::vector<int>{comp, e[2], e[3]});
  }

  CHECK(telescope_bratteli(b, 2, 3) == b);
  CHECK_THROWS_AS((void)telescope_bratteli(b, 2, 2), DomainError);
  CHECK_THROWS_AS((void)telescope_bratteli(b, -1, 2), DomainError);
  CHECK_THROWS_AS((void)telescope_bratteli(b, 0, 9), DomainError);
}

TEST_CASE("telescoping an unordered diagram leaves orders at zero") {
  BratteliPrefix b = kr_to_bratteli(fibonacci_tower(3));
  b.ordered = false;
  for (auto& level : b.edges)
    for (BrEdge& e : level) e.order = 0;
  BratteliPrefix t = telescope_bratteli(b, 0, 2);
  for (const BrEdge& e : t.edges[0]) CHECK(e.order == 0);
  CHECK(validate_bratteli(t).empty());
}

TEST_CASE("extremal paths on the Fibonacci diagram") {
  BratteliPrefix b = kr_to_bratteli(fibonacci_tower(4));
  ExtremalReport rep = extremal_paths(b);
  REQUIRE(rep.max_paths.size() == 2);
  for (int v = 0; v < 2; ++v) {
    CHECK(path_terminal(b, rep.max_paths[v]) == v + 1);
    CHECK(path_terminal(b, rep.min_paths[v]) == v + 1);
    CHECK(vershik_step(b, rep.max_paths[v]).at_maximum);
  }
  CHECK(rep.unique_min_prefix);
  CHECK(!rep.unique_max_prefix);
  CHECK(rep.min_sources_constant);
  CHECK(rep.reach_to_top == std::vector<int>{3, 4, -1});
  CHECK(rep.simplicity_on_prefix);
  CHECK(rep.properly_ordered_on_prefix);
}

TEST_CASE("disjoint spines fail every properly-ordered ingredient") {
  ExtremalReport rep = extremal_paths(spines());
  CHECK(!rep.unique_min_prefix);
  CHECK(!rep.min_sources_constant);
  CHECK(rep.reach_to_top == std::vector<int>{-1, -1});
  CHECK(!rep.simplicity_on_prefix);
  CHECK(!rep.properly_ordered_on_prefix);

  CHECK_THROWS_AS((void)bratteli_to_kr(spines()), DomainError);
  try {
    (void)bratteli_to_kr(spines());
  } catch (const DomainError& e) {
    CHECK(e.code() == Errc::NotProperlyOrdered);
  }
}

TEST_CASE("towers survive the diagram round trip") {
  for (const StructuredCovering& sc :
       {dyadic_tower(4), fibonacci_tower(4), mixed_tower(), duplicate_word_tower()}) {
    BratteliPrefix b = kr_to_bratteli(sc);
    TowerFromDiagram back = bratteli_to_kr(b);
    CHECK(kr_to_bratteli(back.tower) == b);
    for (int n = 1; n <= sc.depth(); ++n)
      for (int i = 1; i <= sc.circuit_count(n); ++i)
        CHECK(back.tower.word(n, i).letters == sc.word(n, i).letters);
  }
}

TEST_CASE("vertex renumbering is absorbed into the relabel table") {
  BratteliPrefix b = kr_to_bratteli(fibonacci_tower(4));
  // Swap the two vertices of level 2.
  BratteliPrefix permuted = b;
  auto swap_at = [](int v) { return v == 1 ? 2 : v == 2 ? 1 : v; };
  for (BrEdge& e : permuted.edges[1]) e.range = swap_at(e.range);
  for (BrEdge& e : permuted.edges[2]) e.source = swap_at(e.source);
  std::sort(permuted.edges[1].begin(), permuted.edges[1].end());
  std::sort(permuted.edges[2].begin(), permuted.edges[2].end());
  CHECK(validate_bratteli(permuted).empty());

  TowerFromDiagram back = bratteli_to_kr(permuted);
  CHECK(back.relabel[2] == std::vector<int>{0, 2, 1});

  BratteliPrefix relabeled = permuted;
  for (int n = 1; n <= permuted.depth(); ++n) {
    for (BrEdge& e : relabeled.edges[n - 1]) {
      e.source = back.relabel[n - 1][e.source];
      e.range = back.relabel[n][e.range];
    }
    std::sort(relabeled.edges[n - 1].begin(), relabeled.edges[n - 1].end());
  }
  CHECK(kr_to_bratteli(back.tower) == relabeled);
}
