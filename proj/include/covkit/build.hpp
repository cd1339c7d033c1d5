#pragma once

#include <vector>

#include "covkit/structured.hpp"

namespace covkit {

// Word tables indexed as level_words[n-1][i-1] = letters of word(n,i).
using WordTable = std::vector<std::vector<std::vector<int>>>;

// Builds a tower from explicit circuit vertex sequences plus a word table;
// the cover maps are traced along the words.  circuits[n-1] lists the
// sequences of level n, each running from the level's center (the first
// vertex of circuit 1) back to it.  Throws DomainError(InvalidInput) when
// the traced images conflict on a shared vertex or shapes disagree.
StructuredCovering tower_from_level_specs(CoveringMode mode,
                                          const std::vector<std::vector<std::vector<VertexId>>>& circuits,
                                          const WordTable& level_words);

// KR tower with generated vertex names (v<n>_0 centers, v<n>_<i>_<j>
// interiors).  Level-1 words must be spelled over the single level-0
// circuit, so they are all-ones; deeper periods follow from the table.
StructuredCovering kr_tower_from_words(const WordTable& level_words);

// Named example towers.

// Loop graphs all the way up; one thread at every depth.
StructuredCovering singleton_tower(int depth);

// One circuit per level, each cover wrapping twice; periods 2^n.  The
// thread dynamics is the 2-adic odometer.
StructuredCovering dyadic_tower(int depth);

// Two circuits per level with words (1,2) and (1); periods follow the
// Fibonacci numbers and the level-1 letter rows follow the Fibonacci
// substitution 1 -> 12, 2 -> 1.
StructuredCovering fibonacci_tower(int depth);

// Three circuits per level; rank proxy 3 at every depth.
StructuredCovering rank3_tower(int depth);

// Depth-4 tower with level-1 periods 3, 2, 3 and uneven words; exercises
// windows whose rows cut at staggered columns.
StructuredCovering mixed_tower();

// Depth-4 GM tower whose levels 1 and 2 have circuits sharing tail
// segments, and whose level 2 carries two circuits with equal words.
StructuredCovering shared_tail_tower();

// Depth-5 KR tower with two equal words at level 2 and top symbols wide
// enough for long language windows; the merge demo input.
StructuredCovering duplicate_word_tower();

}  // namespace covkit
