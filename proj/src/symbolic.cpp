#include "covkit/symbolic.hpp"

#include <algorithm>
#include <future>

namespace covkit {

namespace {

void check_level(const StructuredCovering& sc, int n, int lo = 1) {
  if (n < lo || n > sc.depth())
    throw DomainError(Errc::BadLevel, "level " + std::to_string(n) + " out of range");
}

void check_circuit(const StructuredCovering& sc, int n, int i) {
  if (i < 1 || i > sc.circuit_count(n))
    throw DomainError(Errc::UnknownCircuit,
                      "circuit " + std::to_string(i) + " out of range at level " +
                          std::to_string(n));
}

std::vector<int> prefix_starts(const StructuredCovering& sc, int m,
                               const std::vector<int>& row) {
  std::vector<int> starts{0};
  starts.reserve(row.size() + 1);
  for (int letter : row) starts.push_back(starts.back() + sc.period(m, letter));
  return starts;
}

int letter_index_at(const std::vector<int>& starts, int pos) {
  auto it = std::upper_bound(starts.begin(), starts.end(), pos);
  return static_cast<int>(it - starts.begin()) - 1;
}

// vertex_rows[m][p] = image of the circuit's step-p vertex on level m, for
// m = 0..n and p = 0..period.
std::vector<std::vector<VertexId>> stacked_vertices(const StructuredCovering& sc,
                                                    int n, int i) {
  std::vector<std::vector<VertexId>> rows(n + 1);
  rows[n] = level_figure(sc, n).circuit(i);
  for (int m = n - 1; m >= 0; --m) {
    const auto& map = sc.base.covers[m].vertex_map;
    rows[m].reserve(rows[m + 1].size());
    for (const VertexId& v : rows[m + 1]) rows[m].push_back(map.at(v));
  }
  return rows;
}

}  // namespace

NSymbol expand_symbol(const StructuredCovering& sc, int n, int i) {
  check_level(sc, n);
  check_circuit(sc, n, i);
  NSymbol sym;
  sym.level = n;
  sym.circuit_index = i;
  sym.rows.assign(n + 1, {});
  sym.starts.assign(n + 1, {});
  sym.rows[n] = {i};
  for (int m = n - 1; m >= 0; --m)
    for (int letter : sym.rows[m + 1]) {
      const auto& letters = sc.word(m + 1, letter).letters;
      sym.rows[m].insert(sym.rows[m].end(), letters.begin(), letters.end());
    }
  for (int m = 0; m <= n; ++m) sym.starts[m] = prefix_starts(sc, m, sym.rows[m]);
  return sym;
}

LevelLanguage language_of_level(const StructuredCovering& sc, int n, int L) {
  if (n < 0 || n > sc.depth())
    throw DomainError(Errc::BadLevel, "level " + std::to_string(n) + " out of range");
  if (L < 1) throw DomainError(Errc::InvalidInput, "need a positive word length");

  const int N = sc.depth();
  LevelLanguage lang;
  lang.level = n;
  lang.length = L;
  int widest = 0;
  for (int i = 1; i <= sc.circuit_count(N); ++i) {
    NSymbol sym = expand_symbol(sc, N, i);
    const std::vector<int>& row = sym.rows[n];
    widest = std::max(widest, static_cast<int>(row.size()));
    for (int p = 0; p + L <= static_cast<int>(row.size()); ++p) {
      std::vector<int> word(row.begin() + p, row.begin() + p + L);
      if (lang.words.insert(word).second) lang.witness[word] = {i, p};
    }
  }
  if (lang.words.empty())
    throw DomainError(Errc::WindowTooWide,
                      "length " + std::to_string(L) + " exceeds the widest row (" +
                          std::to_string(widest) + " letters)");
  return lang;
}

ArrayWindow window_of_thread(const StructuredCovering& sc, const WindowSeed& seed,
                             int rows, int half_width) {
  check_level(sc, seed.level);
  check_circuit(sc, seed.level, seed.circuit);
  if (rows < 0 || half_width < 0)
    throw DomainError(Errc::InvalidInput, "rows and half_width must be nonnegative");

  const int P = sc.period(seed.level, seed.circuit);
  if (seed.offset < 0 || seed.offset >= P)
    throw DomainError(Errc::WindowExceedsSymbol,
                      "offset " + std::to_string(seed.offset) +
                          " outside circuit of period " + std::to_string(P));
  const int lo = seed.offset - half_width;
  const int hi = seed.offset + half_width;
  if (lo < 0 || hi > P - 1)
    throw DomainError(Errc::WindowExceedsSymbol,
                      "columns " + std::to_string(lo) + ".." + std::to_string(hi) +
                          " leave the circuit of period " + std::to_string(P));

  ArrayWindow win;
  win.seed = seed;
  win.rows = std::min(rows, seed.level);
  win.half_width = half_width;

  NSymbol sym = expand_symbol(sc, seed.level, seed.circuit);
  std::vector<std::vector<VertexId>> stacked =
      stacked_vertices(sc, seed.level, seed.circuit);

  win.vertex_rows.assign(win.rows + 1, {});
  win.letter_rows.assign(win.rows + 1, {});
  win.cuts.assign(win.rows + 1, {});
  for (int m = 0; m <= win.rows; ++m) {
    for (int p = lo; p <= hi; ++p) {
      win.vertex_rows[m].push_back(stacked[m][p]);
      win.letter_rows[m].push_back(sym.rows[m][letter_index_at(sym.starts[m], p)]);
      if (std::binary_search(sym.starts[m].begin(), sym.starts[m].end(), p))
        win.cuts[m].push_back(p - lo);
    }
  }
  return win;
}

PairReport pair_report(const ArrayWindow& a, const ArrayWindow& b) {
  if (a.rows != b.rows || a.half_width != b.half_width)
    throw DomainError(Errc::ShapeMismatch, "windows have different shapes");

  PairReport rep;
  int depth = -1;
  for (int m = 0; m <= a.rows; ++m) {
    if (depth == m - 1 && a.letter_rows[m] == b.letter_rows[m] &&
        a.cuts[m] == b.cuts[m])
      depth = m;
    std::vector<int> common;
    std::set_intersection(a.cuts[m].begin(), a.cuts[m].end(), b.cuts[m].begin(),
                          b.cuts[m].end(), std::back_inserter(common));
    rep.common_cuts.push_back(std::move(common));
  }
  rep.depth = std::max(depth, 0);
  rep.separated_at = depth + 1;
  return rep;
}

namespace {

struct ProbeCheck {
  bool ok = true;
  std::vector<VertexId> least_ambiguous;
};

ProbeCheck check_width(const std::vector<std::vector<std::vector<VertexId>>>& stacks,
                       int W) {
  const int h = W / 2;
  ProbeCheck res;
  std::map<std::vector<VertexId>, std::vector<VertexId>> seen;
  for (const auto& rows : stacks) {
    const int P = static_cast<int>(rows[1].size()) - 1;
    for (int t = 0; t < P; ++t) {
      std::vector<VertexId> word;
      word.reserve(W);
      for (int k = -h; k <= h; ++k)
        word.push_back(rows[1][((t + k) % P + P) % P]);
      std::vector<VertexId> column;
      for (std::size_t m = 1; m < rows.size(); ++m) column.push_back(rows[m][t]);
      auto [it, inserted] = seen.try_emplace(std::move(word), std::move(column));
      if (!inserted && it->second != column) {
        res.ok = false;
        if (res.least_ambiguous.empty() || it->first < res.least_ambiguous)
          res.least_ambiguous = it->first;
      }
    }
  }
  return res;
}

}  // namespace

ProbeResult expansiveness_probe(const StructuredCovering& sc, int depth, int w_max,
                                int threads) {
  check_level(sc, depth);
  if (w_max < 1) throw DomainError(Errc::InvalidInput, "w_max must be positive");
  if (threads < 1) threads = 1;

  std::vector<std::vector<std::vector<VertexId>>> stacks;
  for (int i = 1; i <= sc.circuit_count(depth); ++i)
    stacks.push_back(stacked_vertices(sc, depth, i));

  std::vector<int> widths;
  for (int W = 1; W <= w_max; W += 2) widths.push_back(W);

  ProbeResult out;
  out.depth = depth;
  for (std::size_t base = 0; base < widths.size(); base += threads) {
    std::size_t stop = std::min(widths.size(), base + threads);
    std::vector<std::future<ProbeCheck>> batch;
    for (std::size_t k = base + 1; k < stop; ++k)
      batch.push_back(std::async(std::launch::async, check_width, std::cref(stacks),
                                 widths[k]));
    std::vector<ProbeCheck> results{check_width(stacks, widths[base])};
    for (auto& f : batch) results.push_back(f.get());
    for (std::size_t k = base; k < stop; ++k) {
      out.examined_max = widths[k];
      if (results[k - base].ok) {
        out.found = true;
        out.window = widths[k];
        out.ambiguous_word.clear();
        return out;
      }
      out.ambiguous_word = results[k - base].least_ambiguous;
    }
  }
  return out;
}

}  // namespace covkit
