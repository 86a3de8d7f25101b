#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "jamoparse/conllu.hpp"
#include "jamoparse/errors.hpp"
#include "jamoparse/tree.hpp"

using namespace jamoparse;

namespace {

const char* kTwoSentences =
    "# sent_id = a\n"
    "# text = 나는 갔다\n"
    "1\t나는\t나\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
    "2\t갔다\t가\tVERB\t_\t_\t0\troot\t_\tSpaceAfter=No\n"
    "\n"
    "1-2\t갔어요\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "1\t갔\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
    "1.1\t_\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "2\t어요\t_\tPART\t_\t_\t1\taux\t_\t_\n";

}  // namespace

TEST_CASE("reading sentences, comments and skipped rows") {
  std::istringstream in(kTwoSentences);
  const auto sentences = read_conllu(in);
  REQUIRE(sentences.size() == 2);
  CHECK(sentences[0].comments == std::vector<std::string>{" sent_id = a", " text = 나는 갔다"});
  CHECK(sentences[0].first_line == 1);
  CHECK(sentences[0].forms() == std::vector<std::string>{"나는", "갔다"});
  CHECK(sentences[0].heads() == std::vector<int>{2, 0});
  CHECK(sentences[0].labels() == std::vector<std::string>{"nsubj", "root"});
  CHECK(sentences[0].tokens[1].misc == "SpaceAfter=No");
  CHECK(sentences[1].forms() == std::vector<std::string>{"갔", "어요"});
  CHECK(sentences[1].first_line == 6);
}

TEST_CASE("write then read is lossless") {
  std::istringstream in(kTwoSentences);
  const auto sentences = read_conllu(in);
  std::ostringstream out;
  write_conllu(out, sentences);
  std::istringstream again(out.str());
  const auto reread = read_conllu(again);
  REQUIRE(reread.size() == sentences.size());
  std::ostringstream out2;
  write_conllu(out2, reread);
  CHECK(out.str() == out2.str());
  CHECK(out.str().find("1\t나는\t나\tPRON\t_\t_\t2\tnsubj\t_\t_\n") != std::string::npos);
}

TEST_CASE("format errors carry line numbers") {
  {
    std::istringstream in("1\tx\t_\t_\t_\t_\t0\troot\t_\n");
    try {
      read_conllu(in);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 1);
    }
  }
  {
    std::istringstream in("1\tx\t_\t_\t_\t_\t0\troot\t_\t_\n2\ty\t_\t_\t_\t_\tabc\tdep\t_\t_\n");
    try {
      read_conllu(in);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 2);
    }
  }
  std::istringstream bad_id("x\ty\t_\t_\t_\t_\t0\troot\t_\t_\n");
  CHECK_THROWS_AS(read_conllu(bad_id), FormatError);
}

TEST_CASE("heads may be absent when not required") {
  std::istringstream in("1\t가\t_\t_\t_\t_\t_\t_\t_\t_\n");
  ConlluReadOptions opts;
  opts.require_heads = false;
  const auto s = read_conllu(in, opts);
  REQUIRE(s.size() == 1);
  CHECK(s[0].tokens[0].head == kNoHead);
  std::istringstream again("1\t가\t_\t_\t_\t_\t_\t_\t_\t_\n");
  CHECK_THROWS_AS(read_conllu(again), FormatError);
}

TEST_CASE("missing files raise IoError") {
  CHECK_THROWS_AS(read_conllu(std::filesystem::path("/nonexistent/file.conllu")), IoError);
}

TEST_CASE("empty input yields no sentences") {
  std::istringstream in("\n\n");
  CHECK(read_conllu(in).empty());
}

TEST_CASE("sentence validation") {
  ConlluSentence s = make_sentence({"a", "b", "c"});
  s.tokens[0].head = 2;
  s.tokens[1].head = 0;
  s.tokens[2].head = 2;
  CHECK(validate(s).empty());
  s.tokens[2].head = 0;
  CHECK(validate(s).size() == 1);
  s.tokens[1].head = 3;
  s.tokens[2].head = 2;
  s.tokens[0].head = 0;
  CHECK(validate(s).size() == 1);
  s.tokens[0].head = 7;
  CHECK_FALSE(validate(s).empty());
}

TEST_CASE("tree predicates") {
  CHECK(is_well_formed(std::vector<int>{2, 0, 2}));
  CHECK_FALSE(is_well_formed(std::vector<int>{2, 1}));
  CHECK_FALSE(is_well_formed(std::vector<int>{1}));
  CHECK_FALSE(is_well_formed(std::vector<int>{4, 0, 1}));
  CHECK(is_projective(std::vector<int>{2, 0, 2}));
  CHECK_FALSE(is_projective(std::vector<int>{3, 4, 0, 3}));
  // Crossing a ROOT arc.
  CHECK_FALSE(is_projective(std::vector<int>{3, 0, 2}));
  CHECK(has_single_root(std::vector<int>{2, 0, 2}));
  CHECK_FALSE(has_single_root(std::vector<int>{0, 0}));
}
