#ifndef COVKIT_SYMBOLIC_HPP
#define COVKIT_SYMBOLIC_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "covkit/errors.hpp"
#include "covkit/structured.hpp"

namespace covkit {

// Stacked letter rows of one circuit: row m spells the circuit as a word in
// level-m circuits, row n is the single letter (i).  starts[m] holds the
// positions where row m's letters begin, closed by the circuit period, so
// consecutive entries delimit one letter's span of vertex steps.
struct NSymbol {
  int level = 0;
  int circuit_index = 0;
  std::vector<std::vector<int>> rows;    // rows[m], m = 0..level
  std::vector<std::vector<int>> starts;  // starts[m].size() == rows[m].size() + 1

  int width() const { return starts.empty() ? 0 : starts.front().back(); }
};

NSymbol expand_symbol(const StructuredCovering& sc, int n, int i);

struct LevelLanguage {
  int level = 0;
  int length = 0;
  std::set<std::vector<int>> words;
  // word -> (top circuit, letter position in its row) for one occurrence.
  std::map<std::vector<int>, std::pair<int, int>> witness;
};

// All length-L subwords of row n across the deepest level's symbols.  Throws
// WindowTooWide when no symbol's row n carries L letters.
LevelLanguage language_of_level(const StructuredCovering& sc, int n, int L);

struct WindowSeed {
  int level = 0;
  int circuit = 0;
  int offset = 0;  // vertex step within the circuit, 0 <= offset < period

  bool operator==(const WindowSeed&) const = default;
};

// Clipped view of the stacked rows around one position: columns cover the
// vertex steps offset-half_width .. offset+half_width of the seed circuit.
struct ArrayWindow {
  WindowSeed seed;
  int rows = 0;        // deepest row shown
  int half_width = 0;  // columns run 0..2*half_width
  std::vector<std::vector<VertexId>> vertex_rows;  // [m][col], m = 0..rows
  std::vector<std::vector<int>> letter_rows;       // [m][col]
  std::vector<std::vector<int>> cuts;              // [m] = columns where a letter starts
};

// Throws WindowExceedsSymbol when the window pokes past the circuit, and
// caps `rows` at the seed level.
ArrayWindow window_of_thread(const StructuredCovering& sc, const WindowSeed& seed,
                             int rows, int half_width);

struct PairReport {
  int depth = 0;         // deepest row with equal letters and cuts so far
  int separated_at = 0;  // depth + 1; rows + 1 when nothing separates
  std::vector<std::vector<int>> common_cuts;  // per row, cut columns shared
};

// Compares two windows of equal shape row by row.  Rows count as equal when
// their letters and cut columns agree; vertex names are not compared, so
// windows from different towers over the same word table line up.
PairReport pair_report(const ArrayWindow& a, const ArrayWindow& b);

struct ProbeResult {
  int depth = 0;
  bool found = false;
  int window = 0;        // least odd width that determines columns, if found
  int examined_max = 0;  // widest window tried
  std::vector<VertexId> ambiguous_word;  // least row-1 word still ambiguous
};

// Searches for an odd width W <= w_max such that every width-W row-1 vertex
// word, read cyclically around the depth-level circuits, pins down the full
// column of vertices on rows 1..depth at its center position.  Row-1 vertex
// words carry the letter boundaries, unlike bare letter words, so towers
// like the dyadic one correctly admit no such width.
ProbeResult expansiveness_probe(const StructuredCovering& sc, int depth, int w_max,
                                int threads = 1);

}  // namespace covkit

#endif  // COVKIT_SYMBOLIC_HPP
