#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace jamoparse {

inline constexpr int kNoHead = -1;

// One basic token line. Columns this library does not interpret are carried
// through unchanged so that write_conllu reproduces them.
struct ConlluToken {
  std::string id;
  std::string form;
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::string feats = "_";
  int head = kNoHead;  // 0 = ROOT, kNoHead when the column is "_"
  std::string deprel = "_";
  std::string deps = "_";
  std::string misc = "_";

  friend bool operator==(const ConlluToken&, const ConlluToken&) = default;
};

struct ConlluSentence {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<ConlluToken> tokens;
  std::size_t first_line = 0;

  std::size_t size() const noexcept { return tokens.size(); }
  std::vector<std::string> forms() const;
  // heads()[k] is the head of token k+1.
  std::vector<int> heads() const;
  std::vector<std::string> labels() const;

  friend bool operator==(const ConlluSentence& a, const ConlluSentence& b) {
    return a.comments == b.comments && a.tokens == b.tokens;
  }
};

// Builds a sentence from bare forms, with ids 1..n and every other column "_".
ConlluSentence make_sentence(const std::vector<std::string>& forms);

struct ConlluReadOptions {
  // When false, a "_" head column is accepted and read as kNoHead.
  bool require_heads = true;
};

// Reads CoNLL-U / CoNLL-X: ten tab-separated columns, '#' comments, blank
// lines between sentences. Multiword-token ranges ("1-2") and empty nodes
// ("1.1") are skipped. Throws FormatError (with line number) on a malformed
// line or non-integer head, IoError if the file cannot be opened.
std::vector<ConlluSentence> read_conllu(std::istream& in, const ConlluReadOptions& options = {});
std::vector<ConlluSentence> read_conllu(const std::filesystem::path& path, const ConlluReadOptions& options = {});

void write_conllu(std::ostream& out, const std::vector<ConlluSentence>& sentences);
void write_conllu(const std::filesystem::path& path, const std::vector<ConlluSentence>& sentences);

// Structural problems in the gold annotation: heads outside [0, n], cycles,
// and a ROOT dependent count other than one. Empty when the tree is sound.
std::vector<std::string> validate(const ConlluSentence& sentence);

}  // namespace jamoparse
