#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "covkit/build.hpp"
#include "covkit/covering.hpp"
#include "fixtures.hpp"

using namespace covkit;
using namespace covkit::testing;

TEST_CASE("example towers validate as coverings") {
  CHECK(validate_covering(singleton_tower(4).base).empty());
  CHECK(validate_covering(dyadic_tower(4).base).empty());
  CHECK(validate_covering(fibonacci_tower(4).base).empty());
  CHECK(validate_covering(mixed_tower().base).empty());
  CHECK(validate_covering(shared_tail_tower().base).empty());
}

TEST_CASE("validate_covering pinpoints a broken cover") {
  CoveringPrefix c = fibonacci_tower(3).base;
  // Redirect one interior vertex of level 2 to the wrong level-1 vertex.
  GraphHom& h = c.covers[1];
  const VertexId victim = c.levels[2].vertices.back();
  const VertexId target = c.levels[1].vertices.front();
  h.vertex_map[victim] = h.vertex_map.at(victim) == target
                             ? c.levels[1].vertices.back()
                             : target;
  auto violations = validate_covering(c);
  CHECK(!violations.empty());

  CoveringPrefix missing = fibonacci_tower(3).base;
  missing.covers.pop_back();
  violations = validate_covering(missing);
  REQUIRE(!violations.empty());
  CHECK(violations.front().find("covers") != std::string::npos);

  CoveringPrefix bad_base = fibonacci_tower(2).base;
  bad_base.levels[0] = two_letter_target();
  violations = validate_covering(bad_base);
  bool flagged = false;
  for (const auto& v : violations)
    flagged |= v.find("singleton loop") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("composed covers stay covers and match stepwise composition") {
  CoveringPrefix c = mixed_tower().base;
  GraphHom all_the_way = composed_cover(c, 4, 0);
  CHECK(hom_profile(all_the_way).is_cover);
  for (const auto& [v, image] : all_the_way.vertex_map)
    CHECK(image == c.levels[0].vertices[0]);

  GraphHom two = composed_cover(c, 3, 1);
  GraphHom manual = compose_homs(c.covers[1], c.covers[2]);
  CHECK(two.vertex_map == manual.vertex_map);
  CHECK(composed_cover(c, 2, 2).vertex_map == identity_hom(c.levels[2]).vertex_map);
  CHECK_THROWS_AS((void)composed_cover(c, 1, 3), DomainError);
}

TEST_CASE("telescope keeps the chosen levels and composes the rest") {
  CoveringPrefix c = dyadic_tower(4).base;

  std::vector<int> all{0, 1, 2, 3, 4};
  CoveringPrefix same = telescope(c, all);
  CHECK(same.levels.size() == c.levels.size());
  for (std::size_t k = 0; k < c.covers.size(); ++k)
    CHECK(same.covers[k].vertex_map == c.covers[k].vertex_map);

  CoveringPrefix squeezed = telescope(c, {0, 2, 4});
  CHECK(squeezed.depth() == 2);
  CHECK(squeezed.levels[1] == c.levels[2]);
  CHECK(squeezed.levels[2] == c.levels[4]);
  // Each retained step now wraps four times: the level-4 circuit image
  // visits the level-2 center once per quarter.
  StructuredCovering sc = dyadic_tower(4);
  const VertexId center2 = sc.level(2).center;
  int visits = 0;
  for (const VertexId& v : sc.level(4).circuit(1))
    if (squeezed.covers[1].vertex_map.at(v) == center2) ++visits;
  CHECK(visits == 5);  // start, three interior passes, end

  CHECK_THROWS_AS((void)telescope(c, {1, 2}), DomainError);
  CHECK_THROWS_AS((void)telescope(c, {0, 2, 2}), DomainError);
  CHECK_THROWS_AS((void)telescope(c, {0, 9}), DomainError);
}

TEST_CASE("threads are one per top vertex and consistent") {
  CHECK(threads_at_depth(singleton_tower(4).base, 4).size() == 1);

  CoveringPrefix c = dyadic_tower(4).base;
  std::vector<Thread> threads = threads_at_depth(c, 4);
  CHECK(threads.size() == 16);
  std::set<VertexId> tops;
  for (const Thread& t : threads) {
    tops.insert(t.top());
    for (int i = 0; i < 4; ++i)
      CHECK(c.covers[i].vertex_map.at(t.coordinates[i + 1]) == t.coordinates[i]);
  }
  CHECK(tops.size() == threads.size());

  CHECK(threads_at_depth(c, 2).size() == 4);
  CHECK_THROWS_AS((void)threads_at_depth(c, 9), DomainError);
}

TEST_CASE("successor relation of the odometer is a bijection") {
  ThreadRelation rel = successor_relation_at_depth(dyadic_tower(4).base, 4);
  CHECK(rel.threads.size() == 16);
  CHECK(rel.all_covers_bidirectional);
  for (int k : rel.successor_count) CHECK(k == 1);
  for (int k : rel.predecessor_count) CHECK(k == 1);
}

TEST_CASE("successor relation sees the central merge in branching towers") {
  StructuredCovering fib = fibonacci_tower(4);
  ThreadRelation rel = successor_relation_at_depth(fib.base, 4);
  CHECK(rel.threads.size() == 12);
  CHECK(!rel.all_covers_bidirectional);

  int central = -1;
  for (std::size_t x = 0; x < rel.threads.size(); ++x)
    if (rel.threads[x].top() == fib.level(4).center) central = static_cast<int>(x);
  REQUIRE(central >= 0);
  // At a finite depth the choice of circuit after (and before) a central
  // visit is still open, so the central thread fans out both ways.
  CHECK(rel.predecessor_count[central] == 2);
  CHECK(rel.successor_count[central] == 2);
  for (std::size_t x = 0; x < rel.threads.size(); ++x) {
    if (static_cast<int>(x) == central) continue;
    CHECK(rel.predecessor_count[x] == 1);
    CHECK(rel.successor_count[x] == 1);
  }
}
