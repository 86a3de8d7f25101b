#include "jamoparse/corpus.hpp"

#include <iomanip>
#include <set>
#include <sstream>

#include "jamoparse/hangul.hpp"
#include "jamoparse/tree.hpp"
#include "jamoparse/utf8.hpp"

namespace jamoparse {
namespace {

constexpr char32_t kCompatFirst = 0x3131;
constexpr char32_t kCompatLast = 0x3163;

bool is_compat_jamo(char32_t c) { return c >= kCompatFirst && c <= kCompatLast; }

// Jamo-tier units of one character, as vocabulary keys.
void jamo_units(char32_t c, std::vector<std::string>& out) {
  out.clear();
  if (auto t = hangul::decompose(c)) {
    out.push_back(hangul::display(t->head_jamo()));
    out.push_back(hangul::display(t->vowel_jamo()));
    if (t->has_tail()) out.push_back(hangul::display(t->tail_jamo()));
  } else {
    out.push_back(utf8::encode(c));
  }
}

bool is_letter_key(const std::string& key) {
  const auto cps = utf8::decode(key);
  return cps.size() == 1 && is_compat_jamo(cps[0]);
}

}  // namespace

bool is_korean_char(char32_t c) noexcept { return hangul::is_syllable(c) || is_compat_jamo(c); }

CorpusStats compute_stats(const std::vector<ConlluSentence>& treebank) {
  CorpusStats stats;
  std::set<std::string> words;
  std::set<char32_t> chars;
  std::set<std::string> jamo;
  std::vector<std::string> units;
  for (const auto& s : treebank) {
    ++stats.sentences;
    stats.tokens += s.size();
    const auto heads = s.heads();
    if (!is_well_formed(heads)) {
      ++stats.malformed_trees;
    } else if (is_projective(heads)) {
      ++stats.projective_trees;
    } else {
      ++stats.nonprojective_trees;
    }
    for (const auto& t : s.tokens) {
      words.insert(t.form);
      for (char32_t c : utf8::decode(t.form)) {
        chars.insert(c);
        jamo_units(c, units);
        jamo.insert(units.begin(), units.end());
      }
    }
  }
  stats.word_types = words.size();
  stats.char_types = chars.size();
  for (char32_t c : chars) stats.korean_char_types += is_korean_char(c) ? 1 : 0;
  stats.jamo_types = jamo.size();
  for (const auto& j : jamo) stats.korean_jamo_types += is_letter_key(j) ? 1 : 0;
  return stats;
}

VocabularyBuild build_vocabularies(const std::vector<ConlluSentence>& treebank) {
  VocabularyBuild out;
  std::vector<std::string> units;
  for (const auto& s : treebank) {
    for (const auto& t : s.tokens) {
      out.vocab.words.add(t.form);
      out.labels.add(t.deprel);
      for (char32_t c : utf8::decode(t.form)) {
        out.vocab.chars.add(utf8::encode(c));
        jamo_units(c, units);
        for (const auto& u : units) out.vocab.jamo.add(u);
      }
    }
  }
  out.stats = compute_stats(treebank);
  return out;
}

std::string format_stats_table(const CorpusStats& stats) {
  std::ostringstream os;
  os << std::left << std::setw(26) << "" << std::right << std::setw(10) << "count" << '\n';
  os << std::left << std::setw(26) << "# projective trees" << std::right << std::setw(10) << stats.projective_trees
     << '\n';
  os << std::left << std::setw(26) << "# non-projective trees" << std::right << std::setw(10)
     << stats.nonprojective_trees << '\n';
  if (stats.malformed_trees > 0) {
    os << std::left << std::setw(26) << "# malformed trees" << std::right << std::setw(10) << stats.malformed_trees
       << '\n';
  }
  os << '\n';
  os << std::left << std::setw(8) << "" << std::right << std::setw(10) << "#" << std::setw(10) << "# Ko" << '\n';
  os << std::left << std::setw(8) << "word" << std::right << std::setw(10) << stats.word_types << std::setw(10)
     << "--" << '\n';
  os << std::left << std::setw(8) << "char" << std::right << std::setw(10) << stats.char_types << std::setw(10)
     << stats.korean_char_types << '\n';
  os << std::left << std::setw(8) << "jamo" << std::right << std::setw(10) << stats.jamo_types << std::setw(10)
     << stats.korean_jamo_types << '\n';
  return os.str();
}

std::string format_stats_line(const CorpusStats& stats) {
  std::ostringstream os;
  os << "projective=" << stats.projective_trees << " nonprojective=" << stats.nonprojective_trees
     << " malformed=" << stats.malformed_trees << " word=" << stats.word_types << " char=" << stats.char_types
     << " char_ko=" << stats.korean_char_types << " jamo=" << stats.jamo_types
     << " jamo_ko=" << stats.korean_jamo_types;
  return os.str();
}

}  // namespace jamoparse
