#include "jamoparse/evaluate.hpp"

#include <string>

#include "jamoparse/errors.hpp"
#include "jamoparse/utf8.hpp"

namespace jamoparse {
namespace {

bool is_punct_char(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
           (c >= 0x7B && c <= 0x7E);
  }
  return (c >= 0x2000 && c <= 0x206F)     // general punctuation
         || (c >= 0x3000 && c <= 0x303F)  // CJK symbols and punctuation
         || (c >= 0xFF01 && c <= 0xFF0F) || (c >= 0xFF1A && c <= 0xFF20) || (c >= 0xFF3B && c <= 0xFF40) ||
         (c >= 0xFF5B && c <= 0xFF65) || c == 0x00B7 || c == 0x00AB || c == 0x00BB;
}

}  // namespace

bool is_punctuation(const ConlluToken& token) {
  if (token.upos == "PUNCT" || token.upos == ".") return true;
  const auto cps = utf8::decode(token.form);
  if (cps.empty()) return false;
  for (char32_t c : cps) {
    if (!is_punct_char(c)) return false;
  }
  return true;
}

AttachmentScores evaluate(const std::vector<ConlluSentence>& gold, const std::vector<ConlluSentence>& predicted,
                          bool exclude_punctuation) {
  if (gold.size() != predicted.size()) {
    throw AlignmentError("gold has " + std::to_string(gold.size()) + " sentences, prediction has " +
                         std::to_string(predicted.size()));
  }
  AttachmentScores scores;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const auto& g = gold[s].tokens;
    const auto& p = predicted[s].tokens;
    if (g.size() != p.size()) {
      throw AlignmentError("sentence " + std::to_string(s + 1) + ": gold has " + std::to_string(g.size()) +
                           " tokens, prediction has " + std::to_string(p.size()));
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (exclude_punctuation && is_punctuation(g[k])) continue;
      ++scores.tokens;
      if (g[k].head == p[k].head) {
        ++scores.correct_heads;
        if (g[k].deprel == p[k].deprel) ++scores.correct_labeled;
      }
    }
  }
  return scores;
}

}  // namespace jamoparse
