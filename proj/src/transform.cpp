#include "covkit/transform.hpp"

#include "covkit/build.hpp"

#include <algorithm>
#include <string>

namespace covkit {

GmToKrResult gm_to_kr(const StructuredCovering& sc) {
  std::vector<std::string> violations = validate_structured(sc);
  if (!violations.empty())
    throw DomainError(Errc::InvalidInput, "input invalid: " + violations.front());

  const int N = sc.depth();
  std::vector<std::vector<std::vector<VertexId>>> circuits(N);
  WordTable level_words(N);
  for (int n = 1; n <= N; ++n) {
    const Figure8Level& f = sc.level(n);
    const VertexId center = "p" + std::to_string(n) + "_0";
    for (int i = 1; i <= f.count(); ++i) {
      std::vector<VertexId> circuit{center};
      for (int j = 1; j < f.period(i); ++j)
        circuit.push_back("p" + std::to_string(n) + "_" + std::to_string(i) + "_" +
                          std::to_string(j));
      circuit.push_back(center);
      circuits[n - 1].push_back(std::move(circuit));
      level_words[n - 1].push_back(sc.word(n, i).letters);
    }
  }

  GmToKrResult res;
  res.output = tower_from_level_specs(CoveringMode::KR, circuits, level_words);
  res.correspondence.resize(N);
  for (int n = 1; n <= N; ++n) {
    const Figure8Level& in = sc.level(n);
    const Figure8Level& out = res.output.level(n);
    res.correspondence[n - 1][out.center] = in.center;
    for (int i = 1; i <= in.count(); ++i)
      for (int j = 1; j < in.period(i); ++j)
        res.correspondence[n - 1][out.vertex(i, j)] = in.vertex(i, j);
  }
  return res;
}

std::vector<WindowSeed> all_window_seeds(const StructuredCovering& sc, int max_level,
                                         int half_width) {
  if (max_level < 1 || max_level > sc.depth())
    throw DomainError(Errc::BadLevel,
                      "max level " + std::to_string(max_level) + " out of range");
  std::vector<WindowSeed> seeds;
  for (int n = 1; n <= max_level; ++n)
    for (int i = 1; i <= sc.circuit_count(n); ++i)
      for (int off = half_width; off + half_width < sc.period(n, i); ++off)
        seeds.push_back({n, i, off});
  return seeds;
}

CoincidenceReport verify_linked_array_coincidence(const StructuredCovering& input,
                                                  const GmToKrResult& result,
                                                  int rows, int half_width,
                                                  const std::vector<WindowSeed>& seeds) {
  CoincidenceReport rep;
  rep.rows = rows;
  rep.half_width = half_width;
  for (const WindowSeed& seed : seeds) {
    ArrayWindow a = window_of_thread(input, seed, rows, half_width);
    ArrayWindow b = window_of_thread(result.output, seed, rows, half_width);
    SeedComparison cmp;
    cmp.seed = seed;
    std::vector<bool> column_bad(2 * half_width + 1, false);
    for (int m = 0; m <= a.rows; ++m) {
      bool row_bad = false;
      for (int c = 0; c <= 2 * half_width; ++c)
        if (a.letter_rows[m][c] != b.letter_rows[m][c]) {
          row_bad = true;
          column_bad[c] = true;
        }
      if (a.cuts[m] != b.cuts[m]) {
        row_bad = true;
        std::vector<int> diff;
        std::set_symmetric_difference(a.cuts[m].begin(), a.cuts[m].end(),
                                      b.cuts[m].begin(), b.cuts[m].end(),
                                      std::back_inserter(diff));
        for (int c : diff) column_bad[c] = true;
      }
      if (row_bad) cmp.mismatch_rows.push_back(m);
    }
    for (int c = 0; c <= 2 * half_width; ++c)
      if (column_bad[c]) cmp.mismatch_columns.push_back(c);
    cmp.match = cmp.mismatch_rows.empty();
    if (!cmp.match) rep.all_match = false;
    rep.seeds.push_back(std::move(cmp));
  }
  return rep;
}

}  // namespace covkit
