#pragma once

#include <cstddef>
#include <vector>

#include "jamoparse/conllu.hpp"

namespace jamoparse {

struct AttachmentScores {
  std::size_t tokens = 0;
  std::size_t correct_heads = 0;
  std::size_t correct_labeled = 0;

  // Percentages; 0 when no token was scored.
  double uas() const noexcept { return tokens == 0 ? 0.0 : 100.0 * correct_heads / tokens; }
  double las() const noexcept { return tokens == 0 ? 0.0 : 100.0 * correct_labeled / tokens; }
};

// UPOS "PUNCT" or "." (the universal tag set's punctuation tags), or a form
// made only of punctuation and symbol characters.
bool is_punctuation(const ConlluToken& token);

// Throws AlignmentError when sentence or token counts differ.
AttachmentScores evaluate(const std::vector<ConlluSentence>& gold, const std::vector<ConlluSentence>& predicted,
                          bool exclude_punctuation = false);

}  // namespace jamoparse
