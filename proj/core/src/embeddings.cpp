#include "jamoparse/embeddings.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "jamoparse/errors.hpp"

namespace jamoparse {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string field;
  while (is >> field) out.push_back(field);
  return out;
}

bool parse_real(const std::string& s, real& out) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty()) return false;
  out = static_cast<real>(v);
  return true;
}

bool is_count(const std::string& s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

PretrainedEmbeddings PretrainedEmbeddings::read(std::istream& in) {
  PretrainedEmbeddings out;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (first) {
      first = false;
      if (fields.size() == 2 && is_count(fields[0]) && is_count(fields[1])) continue;
    }
    if (fields.size() < 2) throw FormatError("embedding line has no values", line_no);
    const std::size_t dim = fields.size() - 1;
    if (out.dim_ == 0) {
      out.dim_ = dim;
    } else if (dim != out.dim_) {
      throw FormatError("embedding line has " + std::to_string(dim) + " values, expected " +
                            std::to_string(out.dim_),
                        line_no);
    }
    std::vector<real> row(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_real(fields[k + 1], row[k])) {
        throw FormatError("invalid number '" + fields[k + 1] + "'", line_no);
      }
    }
    if (!out.index_.emplace(fields[0], out.tokens_.size()).second) continue;
    out.tokens_.push_back(fields[0]);
    out.values_.insert(out.values_.end(), row.begin(), row.end());
  }
  return out;
}

PretrainedEmbeddings PretrainedEmbeddings::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read(in);
}

std::size_t expand_vocabulary(const PretrainedEmbeddings& embeddings, Vocabulary& words) {
  std::size_t added = 0;
  for (const auto& t : embeddings.tokens()) {
    if (!words.find(t)) {
      words.add(t, 0);
      ++added;
    }
  }
  return added;
}

EmbeddingLoadReport apply_embeddings(const PretrainedEmbeddings& embeddings, const Vocabulary& words,
                                     Tensor& table) {
  if (embeddings.size() > 0 && embeddings.dim() != table.cols()) {
    throw DimensionMismatchError("embedding file has dimension " + std::to_string(embeddings.dim()) +
                                 ", word table expects " + std::to_string(table.cols()));
  }
  if (table.rows() != words.size()) {
    throw ShapeError("word table has " + std::to_string(table.rows()) + " rows for a vocabulary of " +
                     std::to_string(words.size()));
  }
  EmbeddingLoadReport report;
  report.file_tokens = embeddings.size();
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const auto id = words.find(embeddings.tokens()[i]);
    if (!id) continue;
    ++report.overlap;
    auto src = embeddings.vector(i);
    auto dst = table.row(*id);
    std::copy(src.begin(), src.end(), dst.begin());
    ++report.rows_written;
  }
  return report;
}

}  // namespace jamoparse
