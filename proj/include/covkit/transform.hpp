#ifndef COVKIT_TRANSFORM_HPP
#define COVKIT_TRANSFORM_HPP

#include <map>
#include <vector>

#include "covkit/errors.hpp"
#include "covkit/structured.hpp"
#include "covkit/symbolic.hpp"

namespace covkit {

struct GmToKrResult {
  StructuredCovering output;
  // correspondence[n-1]: level-n vertex of the output -> vertex of the input
  // it unglues.  Centers pair with centers; a primed interior vertex pairs
  // with the input vertex at the same circuit step.
  std::vector<std::map<VertexId, VertexId>> correspondence;
};

// Unglues the shared interior vertices of a tower: the output keeps the word
// table but gives every circuit its own interior vertices, so it validates
// in KR mode.  Throws DomainError(InvalidInput) when the input does not
// validate in its declared mode.
GmToKrResult gm_to_kr(const StructuredCovering& sc);

struct SeedComparison {
  WindowSeed seed;
  bool match = true;
  std::vector<int> mismatch_rows;
  std::vector<int> mismatch_columns;  // window-relative, union over rows
};

struct CoincidenceReport {
  int rows = 0;
  int half_width = 0;
  bool all_match = true;
  std::vector<SeedComparison> seeds;
};

// Checks that input and output carry the same letter rows and cut columns in
// every requested window, which is what identifies their array codings.
CoincidenceReport verify_linked_array_coincidence(const StructuredCovering& input,
                                                  const GmToKrResult& result,
                                                  int rows, int half_width,
                                                  const std::vector<WindowSeed>& seeds);

// Every seed whose window of the given half width stays inside its circuit,
// over levels 1..max_level.
std::vector<WindowSeed> all_window_seeds(const StructuredCovering& sc, int max_level,
                                         int half_width);

}  // namespace covkit

#endif  // COVKIT_TRANSFORM_HPP
