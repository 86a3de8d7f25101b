#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "jamoparse/parameters.hpp"
#include "jamoparse/vocabulary.hpp"

namespace jamoparse {

// Pre-trained vectors read from a text file: one token per line followed by
// D whitespace-separated reals. A leading "<count> <dim>" header line (as
// written by word2vec) is skipped. Repeated tokens keep their first vector.
class PretrainedEmbeddings {
 public:
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::span<const real> vector(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  bool contains(const std::string& token) const { return index_.contains(token); }

  // Throws FormatError on a malformed line (including rows whose length
  // differs from the first row), IoError if the file cannot be opened.
  static PretrainedEmbeddings read(std::istream& in);
  static PretrainedEmbeddings read(const std::filesystem::path& path);

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> tokens_;
  std::vector<real> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct EmbeddingLoadReport {
  std::size_t file_tokens = 0;
  std::size_t overlap = 0;  // distinct file tokens already in the vocabulary
  std::size_t added = 0;    // file-only tokens appended by expand_vocabulary
  std::size_t rows_written = 0;
};

// Expansion mode: appends every file token missing from `words` (count 0).
// Must run before the word embedding table is allocated.
std::size_t expand_vocabulary(const PretrainedEmbeddings& embeddings, Vocabulary& words);

// Overwrites the rows of `table` (|words| x D) for every vocabulary word found
// in the file; other rows are untouched. Throws DimensionMismatchError when D
// differs from the table width, ShapeError when the table height differs
// from the vocabulary size.
EmbeddingLoadReport apply_embeddings(const PretrainedEmbeddings& embeddings, const Vocabulary& words, Tensor& table);

}  // namespace jamoparse
