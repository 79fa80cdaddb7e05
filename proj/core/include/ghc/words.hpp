#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ghc/marking.hpp"

namespace ghc {

using Word = std::vector<Letter>;

bool is_freely_reduced(const Word& w);
Word free_reduce(const Word& w);
// Conjugates away matching first/last letters; input must be freely reduced.
Word cyclic_reduce(const Word& w);
Word inverse_word(const Word& w);

struct Necklace {
  Word letters;  // least rotation of a cyclically reduced word
  bool primitive = true;
};

// Cyclic reduction, least rotation, doubled-word primitivity test.
Necklace necklace_canonical(const Word& w);
bool is_primitive_cyclic(const Word& w);
Word least_rotation(const Word& w);

// All 2k (2k-1)^{n-1} freely reduced words of length n, lexicographic.
void reduced_words(int k, int n, const std::function<void(const Word&)>& visit);
std::vector<Word> reduced_words(int k, int n);

// 'a' for g_0, 'A' for its inverse, 'b' for g_1, ...
std::string word_to_string(const Word& w);
Word parse_word(const std::string& text);

}  // namespace ghc
