#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jamoparse/conllu.hpp"
#include "jamoparse/vocabulary.hpp"

namespace jamoparse {

// Unit-type counts over a treebank, mirroring the usual treebank summary:
// tree counts by projectivity, then word / char / jamo type counts with
// Korean-only sub-counts for the character and jamo tiers.
struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t projective_trees = 0;
  std::size_t nonprojective_trees = 0;
  std::size_t malformed_trees = 0;  // invalid heads or cycles; neither projective nor not
  std::size_t word_types = 0;
  std::size_t char_types = 0;
  std::size_t korean_char_types = 0;
  std::size_t jamo_types = 0;
  std::size_t korean_jamo_types = 0;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// Hangul syllables and modern compatibility jamo (U+3131..U+3163).
bool is_korean_char(char32_t c) noexcept;

CorpusStats compute_stats(const std::vector<ConlluSentence>& treebank);

struct VocabularyBuild {
  Vocabularies vocab;
  Vocabulary labels{UnitKind::label};
  CorpusStats stats;
};

// Word types from forms, character types from the forms' scalar values, jamo
// types from syllable decomposition with atomic passthrough. Ids follow
// first occurrence, so the result is deterministic for a given input order.
VocabularyBuild build_vocabularies(const std::vector<ConlluSentence>& treebank);

// Aligned plain-text table of the stats.
std::string format_stats_table(const CorpusStats& stats);
// Single key=value line for scripts.
std::string format_stats_line(const CorpusStats& stats);

}  // namespace jamoparse
