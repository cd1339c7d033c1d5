#pragma once

// Shared fixtures: a tiny target graph with maps that miss one predicate
// each, and a seeded word-table generator for randomized properties.

#include <algorithm>
#include <random>
#include <vector>

#include "covkit/build.hpp"
#include "covkit/graph.hpp"
#include "covkit/structured.hpp"

namespace covkit::testing {

// Two vertices w, a with edges ww, wa, aw.
inline DirectedGraph two_letter_target() {
  return make_graph({"w", "a"}, {{"w", "w"}, {"w", "a"}, {"a", "w"}});
}

// Hom onto two_letter_target hitting every edge, but c has out-edges whose
// images end at both w and a.
inline GraphHom skew_projection() {
  DirectedGraph up = make_graph({"c", "x"}, {{"c", "c"}, {"c", "x"}, {"x", "c"}});
  return make_hom(up, two_letter_target(), {{"c", "w"}, {"x", "a"}});
}

// Positive-directional hom onto two_letter_target that never covers (w,w).
inline GraphHom thin_projection() {
  DirectedGraph up = make_graph({"c", "x"}, {{"c", "x"}, {"x", "c"}});
  return make_hom(up, two_letter_target(), {{"c", "w"}, {"x", "a"}});
}

inline int table_period(const std::vector<int>& prev_periods,
                        const std::vector<int>& letters) {
  int total = 0;
  for (int letter : letters) total += prev_periods[letter - 1];
  return total;
}

// Random admissible word table: first letters 1, letters in range, every
// lower circuit used by some word, and never two period-1 circuits on one
// level.
inline WordTable random_word_table(std::mt19937& rng, int depth, int max_circuits,
                                   int max_len) {
  WordTable table(depth);
  std::vector<std::vector<int>> periods{{1}};
  for (int n = 1; n <= depth; ++n) {
    const int prev = static_cast<int>(periods[n - 1].size());
    std::uniform_int_distribution<int> count_dist(1, max_circuits);
    std::uniform_int_distribution<int> len_dist(1, max_len);
    std::uniform_int_distribution<int> letter_dist(1, prev);
    for (;;) {
      const int count = count_dist(rng);
      std::vector<std::vector<int>> words;
      for (int i = 0; i < count; ++i) {
        std::vector<int> letters{1};
        const int len = len_dist(rng);
        for (int k = 1; k < len; ++k) letters.push_back(letter_dist(rng));
        words.push_back(std::move(letters));
      }
      std::vector<bool> used(prev + 1, false);
      for (const auto& w : words)
        for (int letter : w) used[letter] = true;
      std::uniform_int_distribution<int> pick(0, count - 1);
      for (int j = 1; j <= prev; ++j)
        if (!used[j]) words[pick(rng)].push_back(j);
      std::vector<int> level_periods;
      for (const auto& w : words)
        level_periods.push_back(table_period(periods[n - 1], w));
      if (std::count(level_periods.begin(), level_periods.end(), 1) <= 1) {
        table[n - 1] = std::move(words);
        periods.push_back(std::move(level_periods));
        break;
      }
    }
  }
  return table;
}

inline std::vector<int> level_vertex_counts(const StructuredCovering& sc) {
  std::vector<int> counts;
  for (const DirectedGraph& g : sc.base.levels)
    counts.push_back(static_cast<int>(g.vertices.size()));
  return counts;
}

}  // namespace covkit::testing
