#include "jamoparse/conllu.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "jamoparse/errors.hpp"
#include "jamoparse/tree.hpp"

namespace jamoparse {
namespace {

constexpr std::size_t kColumns = 10;

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool parse_int(const std::string& s, int& value) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  return ec == std::errc() && ptr == end;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

std::vector<std::string> ConlluSentence::forms() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.form);
  return out;
}

std::vector<int> ConlluSentence::heads() const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.head);
  return out;
}

std::vector<std::string> ConlluSentence::labels() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.deprel);
  return out;
}

ConlluSentence make_sentence(const std::vector<std::string>& forms) {
  ConlluSentence s;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    ConlluToken t;
    t.id = std::to_string(i + 1);
    t.form = forms[i];
    s.tokens.push_back(std::move(t));
  }
  return s;
}

std::vector<ConlluSentence> read_conllu(std::istream& in, const ConlluReadOptions& options) {
  std::vector<ConlluSentence> out;
  ConlluSentence current;
  bool open = false;
  std::string line;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (open && !current.tokens.empty()) out.push_back(std::move(current));
    current = ConlluSentence{};
    open = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) {
      flush();
      continue;
    }
    if (!open) {
      current.first_line = line_no;
      open = true;
    }
    if (line.front() == '#') {
      current.comments.push_back(line.substr(1));
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() != kColumns) {
      throw FormatError("expected " + std::to_string(kColumns) + " tab-separated columns, found " +
                            std::to_string(cols.size()),
                        line_no);
    }
    if (cols[0].find_first_of("-.") != std::string::npos) continue;  // multiword range or empty node
    int id = 0;
    if (!parse_int(cols[0], id) || id <= 0) throw FormatError("invalid token id '" + cols[0] + "'", line_no);

    ConlluToken t;
    t.id = cols[0];
    t.form = cols[1];
    t.lemma = cols[2];
    t.upos = cols[3];
    t.xpos = cols[4];
    t.feats = cols[5];
    if (cols[6] == "_" && !options.require_heads) {
      t.head = kNoHead;
    } else if (!parse_int(cols[6], t.head) || t.head < 0) {
      throw FormatError("non-integer head '" + cols[6] + "'", line_no);
    }
    t.deprel = cols[7];
    t.deps = cols[8];
    t.misc = cols[9];
    current.tokens.push_back(std::move(t));
  }
  flush();
  return out;
}

std::vector<ConlluSentence> read_conllu(const std::filesystem::path& path, const ConlluReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_conllu(in, options);
}

void write_conllu(std::ostream& out, const std::vector<ConlluSentence>& sentences) {
  for (const auto& s : sentences) {
    for (const auto& c : s.comments) out << '#' << c << '\n';
    for (const auto& t : s.tokens) {
      out << t.id << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << '\t' << t.xpos << '\t' << t.feats
          << '\t';
      if (t.head == kNoHead) {
        out << '_';
      } else {
        out << t.head;
      }
      out << '\t' << t.deprel << '\t' << t.deps << '\t' << t.misc << '\n';
    }
    out << '\n';
  }
}

void write_conllu(const std::filesystem::path& path, const std::vector<ConlluSentence>& sentences) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_conllu(out, sentences);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::string> validate(const ConlluSentence& sentence) {
  std::vector<std::string> issues;
  const int n = static_cast<int>(sentence.size());
  int roots = 0;
  bool heads_in_range = true;
  for (int k = 0; k < n; ++k) {
    const int h = sentence.tokens[k].head;
    if (h < 0 || h > n) {
      issues.push_back("token " + std::to_string(k + 1) + " has head " + std::to_string(h) + " outside [0, " +
                       std::to_string(n) + "]");
      heads_in_range = false;
    } else if (h == 0) {
      ++roots;
    }
  }
  if (heads_in_range && !is_well_formed(sentence.heads())) issues.push_back("heads contain a cycle");
  if (roots != 1) issues.push_back(std::to_string(roots) + " tokens attached to ROOT");
  return issues;
}

}  // namespace jamoparse
