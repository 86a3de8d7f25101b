#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "gradcheck.hpp"
#include "jamoparse/composition.hpp"
#include "jamoparse/conllu.hpp"
#include "jamoparse/corpus.hpp"
#include "jamoparse/errors.hpp"
#include "jamoparse/hangul.hpp"

using namespace jamoparse;
using nn::Expr;
using nn::Graph;

namespace {

Vocabularies small_vocab() {
  return build_vocabularies({make_sentence({"산을", "갔다", "KTX"})}).vocab;
}

UnitConfig tiny(std::size_t jamo, std::size_t chr, std::size_t word) {
  UnitConfig c;
  c.jamo_dim = jamo;
  c.char_dim = chr;
  c.word_dim = word;
  c.encoder_dim = 4;
  c.encoder_layers = 2;
  return c;
}

void fill_random(ParameterStore& store, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& p : store) {
    for (real& v : p.value.values()) v = static_cast<real>(dist(gen));
  }
}

}  // namespace

TEST_CASE("unit config validation") {
  CHECK_THROWS_AS(tiny(0, 0, 0).validate(), std::invalid_argument);
  UnitConfig odd = tiny(2, 0, 0);
  odd.encoder_dim = 5;
  CHECK_THROWS_AS(odd.validate(), std::invalid_argument);
  UnitConfig no_layers = tiny(2, 0, 0);
  no_layers.encoder_layers = 0;
  CHECK_THROWS_AS(no_layers.validate(), std::invalid_argument);
  CHECK_NOTHROW(tiny(0, 0, 3).validate());
}

TEST_CASE("unit config derived dimensions") {
  CHECK(tiny(3, 2, 4).char_state_dim() == 3);
  CHECK(tiny(0, 2, 4).char_state_dim() == 2);
  CHECK(tiny(3, 2, 4).encoder_input_dim() == 3 + 4);
  CHECK(tiny(0, 2, 0).encoder_input_dim() == 2);
  CHECK(tiny(0, 0, 4).encoder_input_dim() == 4);
  CHECK_FALSE(tiny(0, 0, 4).char_tier());
  const UnitConfig defaults;
  CHECK(defaults.encoder_dim == 250);
  CHECK(defaults.encoder_layers == 2);
}

TEST_CASE("resolving characters to jamo and character ids") {
  const Vocabularies v = small_vocab();
  const CharUnits san = resolve_char(U'산', v);
  CHECK_FALSE(san.atomic);
  const auto t = *hangul::decompose(U'산');
  CHECK(san.jamo[0] == v.jamo.letter_id(hangul::canonicalize(t.head_jamo())));
  CHECK(v.jamo.unit(san.jamo[0]) == "ㅅ");
  CHECK(v.jamo.unit(san.jamo[1]) == "ㅏ");
  CHECK(v.jamo.unit(san.jamo[2]) == "ㄴ");
  CHECK(v.chars.unit(san.char_id) == "산");

  const CharUnits da = resolve_char(U'다', v);
  CHECK(da.jamo[2] == Vocabulary::kEmptyLetter);

  const CharUnits k = resolve_char(U'K', v);
  CHECK(k.atomic);
  CHECK(v.jamo.unit(k.jamo[0]) == "K");

  const CharUnits unseen = resolve_char(U'Z', v);
  CHECK(unseen.atomic);
  CHECK(unseen.jamo[0] == Vocabulary::kUnk);
  CHECK(unseen.char_id == Vocabulary::kUnk);

  // Unseen syllables still decompose into known letters.
  const CharUnits hih = resolve_char(U'힣', v);
  CHECK(hih.char_id == Vocabulary::kUnk);
  CHECK(v.jamo.unit(hih.jamo[0]) == "ㅎ");
  CHECK(v.jamo.unit(hih.jamo[2]) == "ㅎ");

  const TokenUnits tok = resolve_token("갔다", v);
  CHECK(tok.chars.size() == 2);
  CHECK(v.words.unit(tok.word_id) == "갔다");
  CHECK(resolve_token("없는말", v).word_id == Vocabulary::kUnk);
}

TEST_CASE("character composition formula") {
  const Vocabularies v = small_vocab();
  ParameterStore store;
  const CompositionModel model(tiny(2, 0, 0), sizes_of(v), store);
  fill_random(store, 11);
  const auto& e = store[*store.find("jamo/embed")].value;
  const auto& U = store[*store.find("jamo/U")].value;
  const auto& V = store[*store.find("jamo/V")].value;
  const auto& W = store[*store.find("jamo/W")].value;
  const auto& b = store[*store.find("jamo/b")].value;

  const CharUnits san = resolve_char(U'산', v);
  Graph g(store);
  const Expr hc = model.char_repr(g, san);
  REQUIRE(hc.size() == 2);
  for (std::size_t r = 0; r < 2; ++r) {
    double s = b(r, 0);
    for (std::size_t k = 0; k < 2; ++k) {
      s += U(r, k) * e(san.jamo[0], k) + V(r, k) * e(san.jamo[1], k) + W(r, k) * e(san.jamo[2], k);
    }
    CHECK(hc.value()[r] == doctest::Approx(std::tanh(s)).epsilon(1e-12));
  }

  const CharUnits k = resolve_char(U'K', v);
  const Expr hk = model.char_repr(g, k);
  for (std::size_t r = 0; r < 2; ++r) {
    double s = b(r, 0);
    for (std::size_t c = 0; c < 2; ++c) s += U(r, c) * e(k.jamo[0], c);
    CHECK(hk.value()[r] == doctest::Approx(std::tanh(s)).epsilon(1e-12));
  }
}

TEST_CASE("word composition uses the outer BiLSTM states") {
  const Vocabularies v = small_vocab();
  ParameterStore store;
  const CompositionModel model(tiny(2, 3, 0), sizes_of(v), store);
  fill_random(store, 12);
  const nn::LstmCell fwd(store, "char/fwd", 5, 2);
  const nn::LstmCell bwd(store, "char/bwd", 5, 2);
  const auto& Uc = store[*store.find("char/U")].value;
  const auto& bc = store[*store.find("char/b")].value;

  const TokenUnits tok = resolve_token("산을", v);
  Graph g(store);
  std::vector<Expr> inputs;
  for (const auto& c : tok.chars) {
    const Expr in = model.char_input(g, c);
    CHECK(in.size() == 5);
    inputs.push_back(in);
  }
  const auto f = nn::run_forward(g, fwd, inputs);
  const auto bk = nn::run_backward(g, bwd, inputs);
  std::vector<double> ends;
  for (real x : f.back().value()) ends.push_back(x);
  for (real x : bk.front().value()) ends.push_back(x);
  const Expr hw = model.word_repr(g, tok);
  REQUIRE(hw.size() == 2);
  for (std::size_t r = 0; r < 2; ++r) {
    double s = bc(r, 0);
    for (std::size_t k = 0; k < 4; ++k) s += Uc(r, k) * ends[k];
    CHECK(hw.value()[r] == doctest::Approx(std::tanh(s)).epsilon(1e-12));
  }
}

TEST_CASE("tier combinations register only the parameters they use") {
  const Vocabularies v = small_vocab();
  ParameterStore jamo_only;
  CompositionModel(tiny(2, 0, 0), sizes_of(v), jamo_only);
  CHECK(jamo_only.find("jamo/embed").has_value());
  CHECK_FALSE(jamo_only.find("char/embed").has_value());
  CHECK_FALSE(jamo_only.find("word/embed").has_value());
  CHECK(jamo_only[*jamo_only.find("jamo/embed")].value.rows() == v.jamo.size());

  ParameterStore word_only;
  CompositionModel(tiny(0, 0, 3), sizes_of(v), word_only);
  CHECK_FALSE(word_only.find("char/fwd/Wx").has_value());
  CHECK(word_only[*word_only.find("encoder/l0/fwd/Wx")].value.cols() == 3);

  ParameterStore char_only;
  CompositionModel(tiny(0, 3, 0), sizes_of(v), char_only);
  CHECK(char_only[*char_only.find("char/fwd/Wx")].value.rows() == 4 * 3);
}

TEST_CASE("sentence encoding shapes and errors") {
  const Vocabularies v = small_vocab();
  for (const UnitConfig& cfg : {tiny(2, 2, 2), tiny(2, 0, 0), tiny(0, 2, 0), tiny(0, 0, 2)}) {
    ParameterStore store;
    const CompositionModel model(cfg, sizes_of(v), store);
    store.initialize(3);
    Graph g(store);
    const auto enc = model.sentence_encode(g, make_batch({"산을", "갔다", "?!"}, v));
    REQUIRE(enc.size() == 3);
    for (const auto& e : enc) CHECK(e.size() == 4);
    CHECK_THROWS_AS(model.sentence_encode(g, SentenceBatch{}), EmptyInputError);
    if (cfg.char_tier()) CHECK_THROWS_AS(model.word_repr(g, TokenUnits{}), EmptyInputError);
  }
}

TEST_CASE("gradient through the composition stack") {
  const Vocabularies v = small_vocab();
  ParameterStore store;
  const CompositionModel model(tiny(3, 2, 2), sizes_of(v), store);
  fill_random(store, 13);
  const SentenceBatch batch = make_batch({"산을", "K다"}, v);
  const auto r = testsupport::check_gradients(store, [&](Graph& g) {
    const auto enc = model.sentence_encode(g, batch);
    return nn::sum_elements(nn::tanh(nn::concat(enc)));
  });
  INFO(r.worst);
  CHECK(r.max_rel_error < 1e-4);
}
