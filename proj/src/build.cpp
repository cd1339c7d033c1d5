#include "covkit/build.hpp"

#include <map>
#include <set>
#include <string>

namespace covkit {

namespace {

std::vector<CircuitWord> as_words(int level, const std::vector<std::vector<int>>& letters) {
  std::vector<CircuitWord> words;
  for (std::size_t i = 0; i < letters.size(); ++i)
    words.push_back({level, static_cast<int>(i) + 1, letters[i]});
  return words;
}

}  // namespace

StructuredCovering tower_from_level_specs(
    CoveringMode mode, const std::vector<std::vector<std::vector<VertexId>>>& circuits,
    const WordTable& level_words) {
  const int N = static_cast<int>(circuits.size());
  if (static_cast<int>(level_words.size()) != N)
    throw DomainError(Errc::InvalidInput, "word table depth does not match level count");

  StructuredCovering sc;
  sc.mode = mode;
  sc.base.levels.push_back(singleton_loop());

  for (int n = 1; n <= N; ++n) {
    const auto& specs = circuits[n - 1];
    if (specs.empty() || specs[0].size() < 2)
      throw DomainError(Errc::InvalidInput,
                        "level " + std::to_string(n) + " needs at least one circuit");
    Figure8Level f;
    f.center = specs[0].front();
    f.circuits = specs;

    std::vector<VertexId> vertices{f.center};
    std::vector<Edge> edges;
    for (const auto& c : specs) {
      if (c.size() < 2 || c.front() != f.center || c.back() != f.center)
        throw DomainError(Errc::InvalidInput,
                          "level " + std::to_string(n) +
                              ": circuit does not run center to center");
      for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        vertices.push_back(c[k + 1]);
        edges.emplace_back(c[k], c[k + 1]);
      }
    }
    sc.base.levels.push_back(make_graph(std::move(vertices), std::move(edges)));
    sc.levels.push_back(std::move(f));
    sc.words.push_back(as_words(n, level_words[n - 1]));
  }

  // Trace each word through the lower level to recover the cover map.
  for (int n = 0; n < N; ++n) {
    Figure8Level lower = level_figure(sc, n);
    const Figure8Level& upper = sc.level(n + 1);
    std::map<VertexId, VertexId> map;
    auto assign = [&](const VertexId& v, const VertexId& image) {
      auto [it, inserted] = map.try_emplace(v, image);
      if (!inserted && it->second != image)
        throw DomainError(Errc::InvalidInput,
                          "conflicting cover images for " + v + ": " + it->second +
                              " vs " + image);
    };
    for (int i = 1; i <= upper.count(); ++i) {
      const CircuitWord& w = sc.word(n + 1, i);
      std::vector<VertexId> trace{lower.center};
      for (int letter : w.letters) {
        if (letter < 1 || letter > lower.count())
          throw DomainError(Errc::InvalidInput,
                            "word(" + std::to_string(n + 1) + "," + std::to_string(i) +
                                ") uses letter " + std::to_string(letter));
        const auto& c = lower.circuit(letter);
        trace.insert(trace.end(), c.begin() + 1, c.end());
      }
      if (trace.size() != upper.circuit(i).size())
        throw DomainError(Errc::InvalidInput,
                          "word(" + std::to_string(n + 1) + "," + std::to_string(i) +
                              ") spells " + std::to_string(trace.size() - 1) +
                              " steps for a period-" +
                              std::to_string(upper.period(i)) + " circuit");
      for (std::size_t j = 0; j < trace.size(); ++j)
        assign(upper.circuit(i)[j], trace[j]);
    }
    sc.base.covers.push_back(
        make_hom(sc.base.levels[n + 1], sc.base.levels[n], std::move(map)));
  }
  return sc;
}

StructuredCovering kr_tower_from_words(const WordTable& level_words) {
  const int N = static_cast<int>(level_words.size());
  std::vector<std::vector<int>> periods(N + 1);  // periods[n][i-1]
  periods[0] = {1};
  for (int n = 1; n <= N; ++n) {
    for (const auto& letters : level_words[n - 1]) {
      if (letters.empty())
        throw DomainError(Errc::InvalidInput, "empty word at level " + std::to_string(n));
      int total = 0;
      for (int letter : letters) {
        if (letter < 1 || letter > static_cast<int>(periods[n - 1].size()))
          throw DomainError(Errc::InvalidInput,
                            "letter " + std::to_string(letter) + " out of range at level " +
                                std::to_string(n));
        total += periods[n - 1][letter - 1];
      }
      periods[n].push_back(total);
    }
    int loops = 0;
    for (int p : periods[n]) loops += p == 1 ? 1 : 0;
    if (loops > 1)
      throw DomainError(Errc::InvalidInput,
                        "level " + std::to_string(n) +
                            " would carry two identical loop circuits");
  }

  std::vector<std::vector<std::vector<VertexId>>> circuits(N);
  for (int n = 1; n <= N; ++n) {
    const VertexId center = "v" + std::to_string(n) + "_0";
    for (std::size_t i = 0; i < periods[n].size(); ++i) {
      std::vector<VertexId> c{center};
      for (int j = 1; j < periods[n][i]; ++j)
        c.push_back("v" + std::to_string(n) + "_" + std::to_string(i + 1) + "_" +
                    std::to_string(j));
      c.push_back(center);
      circuits[n - 1].push_back(std::move(c));
    }
  }
  return tower_from_level_specs(CoveringMode::KR, circuits, level_words);
}

StructuredCovering singleton_tower(int depth) {
  WordTable words(depth, {{1}});
  return kr_tower_from_words(words);
}

StructuredCovering dyadic_tower(int depth) {
  WordTable words(depth, {{1, 1}});
  return kr_tower_from_words(words);
}

StructuredCovering fibonacci_tower(int depth) {
  WordTable words{{{1, 1}, {1}}};
  for (int n = 2; n <= depth; ++n) words.push_back({{1, 2}, {1}});
  return kr_tower_from_words(words);
}

StructuredCovering rank3_tower(int depth) {
  WordTable words{{{1, 1}, {1}, {1, 1, 1}}};
  for (int n = 2; n <= depth; ++n) words.push_back({{1, 2, 3}, {1, 3}, {1, 2}});
  return kr_tower_from_words(words);
}

StructuredCovering mixed_tower() {
  WordTable words{
      {{1, 1, 1}, {1, 1}, {1, 1, 1}},
      {{1, 3, 2}, {1, 2}, {1, 3, 3}},
      {{1, 3}, {1, 2}, {1, 2, 3}},
      {{1, 3, 1}, {1, 2}},
  };
  return kr_tower_from_words(words);
}

StructuredCovering shared_tail_tower() {
  std::vector<std::vector<std::vector<VertexId>>> circuits(4);
  circuits[0] = {
      {"w0", "p", "t1", "t2", "w0"},
      {"w0", "q1", "q2", "t1", "t2", "w0"},
  };
  circuits[1] = {
      {"u0", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "u0"},
      {"u0", "d1", "d2", "d3", "d4", "d5", "d6", "d7", "u0"},
      {"u0", "b1", "b2", "b3", "b4", "b5", "b6", "a7", "a8", "u0"},
  };
  WordTable words{
      {{1, 1, 1, 1}, {1, 1, 1, 1, 1}},
      {{1, 2}, {1, 1}, {1, 2}},
      {{1, 2, 3}, {1, 3}},
      {{1, 2}, {1, 1, 2}},
  };
  // Levels 3 and 4 have disjoint interiors; generate their names.
  std::vector<std::vector<int>> periods2{{9, 8, 9}};
  std::vector<int> p3, p4;
  for (const auto& w : words[2]) {
    int total = 0;
    for (int letter : w) total += periods2[0][letter - 1];
    p3.push_back(total);
  }
  for (const auto& w : words[3]) {
    int total = 0;
    for (int letter : w) total += p3[letter - 1];
    p4.push_back(total);
  }
  for (int n = 3; n <= 4; ++n) {
    const std::vector<int>& periods = n == 3 ? p3 : p4;
    const VertexId center = "x" + std::to_string(n) + "_0";
    for (std::size_t i = 0; i < periods.size(); ++i) {
      std::vector<VertexId> c{center};
      for (int j = 1; j < periods[i]; ++j)
        c.push_back("x" + std::to_string(n) + "_" + std::to_string(i + 1) + "_" +
                    std::to_string(j));
      c.push_back(center);
      circuits[n - 1].push_back(std::move(c));
    }
  }
  return tower_from_level_specs(CoveringMode::GM, circuits, words);
}

StructuredCovering duplicate_word_tower() {
  WordTable words{
      {{1, 1}, {1, 1, 1}},
      {{1, 2}, {1, 2}, {1, 1}},
      {{1, 2, 3}, {1, 3}},
      {{1, 2}, {1, 1, 2}},
      {{1, 2}, {1, 2, 2}},
  };
  return kr_tower_from_words(words);
}

}  // namespace covkit
