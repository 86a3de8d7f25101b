#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gradcheck.hpp"
#include "jamoparse/conllu.hpp"
#include "jamoparse/corpus.hpp"
#include "jamoparse/errors.hpp"
#include "jamoparse/evaluate.hpp"
#include "jamoparse/model_io.hpp"
#include "jamoparse/parser.hpp"
#include "jamoparse/trainer.hpp"
#include "trees.hpp"

using namespace jamoparse;
using nn::Expr;
using nn::Graph;

namespace {

std::vector<ConlluSentence> toy() {
  return read_conllu(std::filesystem::path(JAMOPARSE_TEST_DATA_DIR) / "toy_ko.conllu");
}

ModelConfig small_config() {
  ModelConfig c;
  c.units.jamo_dim = 8;
  c.units.char_dim = 0;
  c.units.word_dim = 8;
  c.units.encoder_dim = 8;
  c.units.encoder_layers = 1;
  c.scorer_hidden = 8;
  return c;
}

TrainedModel toy_model(const ModelConfig& config, std::uint64_t seed = 1) {
  VocabularyBuild b = build_vocabularies(toy());
  return create_model(config, std::move(b.vocab), std::move(b.labels), seed);
}

void fill_random(ParameterStore& store, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& p : store) {
    for (real& v : p.value.values()) v = static_cast<real>(dist(gen));
  }
}

std::vector<double> flat_values(const ParameterStore& store) {
  std::vector<double> out;
  for (const auto& p : store) out.insert(out.end(), p.value.values().begin(), p.value.values().end());
  return out;
}

}  // namespace

TEST_CASE("scorer output layout and formula") {
  TrainedModel model = toy_model(small_config());
  const auto& scorer = model.network.scorer;
  CHECK(scorer.output_dim() == 1 + 2 * model.labels.size());

  const SentenceBatch batch = make_batch({"나는", "갔다"}, model.vocab);
  Graph g(model.params);
  const auto enc = model.network.composition.sentence_encode(g, batch);
  ParserConfiguration cfg(2);
  const Expr scores = scorer.score(g, cfg, enc);
  REQUIRE(scores.size() == scorer.output_dim());

  const auto& p = model.params;
  const auto& root = p[*p.find("scorer/root")].value;
  const auto& pad = p[*p.find("scorer/pad")].value;
  const auto& w1 = p[*p.find("scorer/W1")].value;
  const auto& b1 = p[*p.find("scorer/b1")].value;
  const auto& w2 = p[*p.find("scorer/W2")].value;
  const auto& b2 = p[*p.find("scorer/b2")].value;
  // Features: s0 = ROOT, s1 = s2 = padding, b0 = token 1.
  std::vector<double> x;
  for (std::size_t i = 0; i < 8; ++i) x.push_back(root(i, 0));
  for (int rep = 0; rep < 2; ++rep) {
    for (std::size_t i = 0; i < 8; ++i) x.push_back(pad(i, 0));
  }
  for (real v : enc[0].value()) x.push_back(v);
  std::vector<double> h(8);
  for (std::size_t r = 0; r < 8; ++r) {
    double s = b1(r, 0);
    for (std::size_t c = 0; c < x.size(); ++c) s += w1(r, c) * x[c];
    h[r] = std::tanh(s);
  }
  for (std::size_t o = 0; o < scores.size(); ++o) {
    double s = b2(o, 0);
    for (std::size_t c = 0; c < 8; ++c) s += w2(o, c) * h[c];
    CHECK(scores.value()[o] == doctest::Approx(s).epsilon(1e-12));
  }

  CHECK_THROWS_AS(scorer.score(g, ParserConfiguration(3), enc), ShapeError);
}

TEST_CASE("best allowed transition") {
  const std::vector<real> scores{0.5, 2.0, 2.0, 3.0};
  CHECK(best_allowed(scores, std::vector<std::uint8_t>{1, 1, 1, 0}) == 1);
  CHECK(best_allowed(scores, std::vector<std::uint8_t>{1, 1, 1, 1}) == 3);
  CHECK(best_allowed(scores, std::vector<std::uint8_t>{1, 0, 0, 0}) == 0);
  CHECK(best_allowed(scores, std::vector<std::uint8_t>{0, 0, 0, 0}) == 4);
}

TEST_CASE("hinge loss on transition scores") {
  const std::vector<real> scores{1.0, 0.2, 1.5, -1.0};
  const std::vector<std::uint8_t> legal{1, 1, 1, 0};
  const std::vector<std::uint8_t> correct{0, 1, 0, 0};
  const HingeOutcome h = transition_hinge(scores, legal, correct, 1.0);
  CHECK(h.best_correct == 1);
  CHECK(h.best_wrong == 2);
  CHECK(h.loss == doctest::Approx(2.3));

  const std::vector<real> separated{-3.0, 5.0, 1.0, 0.0};
  CHECK(transition_hinge(separated, legal, correct, 1.0).loss == 0);
  const std::vector<std::uint8_t> only_correct{0, 1, 0, 0};
  CHECK(transition_hinge(scores, only_correct, correct, 1.0).best_wrong == HingeOutcome::kNone);
  CHECK(transition_hinge(scores, only_correct, correct, 1.0).loss == 0);
}

TEST_CASE("greedy parses are well-formed with 2n transitions") {
  TrainedModel model = toy_model(small_config(), 7);
  for (const auto& s : toy()) {
    const ParseResult r = greedy_parse(model, s.forms());
    CHECK(r.transitions == 2 * s.size());
    CHECK(testsupport::valid_tree(r.heads));
    CHECK(testsupport::projective_tree(r.heads));
    CHECK(testsupport::root_count(r.heads) == 1);
  }
  CHECK_THROWS_AS(greedy_parse(model, std::vector<std::string>{}), EmptyInputError);
}

TEST_CASE("parallel parsing matches sequential parsing") {
  TrainedModel model = toy_model(small_config(), 8);
  const auto one = parse_sentences(model, toy(), 1);
  const auto three = parse_sentences(model, toy(), 3);
  REQUIRE(one.size() == three.size());
  for (std::size_t s = 0; s < one.size(); ++s) {
    CHECK(one[s].heads() == three[s].heads());
    CHECK(one[s].labels() == three[s].labels());
  }
}

TEST_CASE("gradient through the full jamo-char-word-encoder-scorer stack") {
  ModelConfig c;
  c.units.jamo_dim = 3;
  c.units.char_dim = 2;
  c.units.word_dim = 2;
  c.units.encoder_dim = 4;
  c.units.encoder_layers = 2;
  c.scorer_hidden = 3;
  const auto sentence = std::vector<ConlluSentence>{toy()[0]};
  VocabularyBuild b = build_vocabularies(sentence);
  TrainedModel model = create_model(c, std::move(b.vocab), std::move(b.labels), 3);
  fill_random(model.params, 21);

  const SentenceBatch batch = make_batch({"산을", "갔다"}, model.vocab);
  const GoldTree gold{{2, 0}, {0, 1}};
  const std::size_t labels = model.labels.size();
  const auto r = testsupport::check_gradients(model.params, [&](Graph& g) {
    const auto enc = model.network.composition.sentence_encode(g, batch);
    ParserConfiguration cfg(2);
    std::vector<Expr> terms;
    while (!cfg.terminal()) {
      const Expr scores = model.network.scorer.score(g, cfg, enc);
      const Transition t = static_oracle(cfg, gold);
      const std::size_t right = transition_index(t, labels);
      const std::size_t wrong = right == 0 ? 1 : 0;
      terms.push_back(nn::pick(scores, wrong) - nn::pick(scores, right));
      terms.push_back(nn::tanh(nn::sum_elements(scores)));
      cfg.apply(t);
    }
    return nn::sum(terms);
  });
  INFO(r.worst);
  CHECK(r.checked == model.params.scalar_count());
  CHECK(r.max_rel_error < 1e-4);
}

TEST_CASE("training a sentence reduces its loss") {
  TrainedModel model = toy_model(small_config(), 2);
  TrainOptions opts;
  opts.word_dropout = 0;
  opts.optimizer.learning_rate = 0.01;
  Trainer trainer(model, opts);
  const auto s = toy()[3];
  const double first = trainer.train_sentence(s, 1);
  double last = first;
  for (int i = 0; i < 30; ++i) last = trainer.train_sentence(s, 1);
  CHECK(first > 0);
  CHECK(last < first);
  CHECK(trainer.optimizer().steps() > 0);
}

TEST_CASE("gold trees need known labels") {
  TrainedModel model = toy_model(small_config());
  auto s = toy()[0];
  s.tokens[0].deprel = "never-seen";
  CHECK_THROWS_AS(gold_tree(s, model.labels), std::out_of_range);
}

TEST_CASE("train rejects unusable treebanks") {
  const ModelConfig c = small_config();
  TrainOptions opts;
  opts.epochs = 1;
  CHECK_THROWS_AS(train({}, {}, c, opts), EmptyInputError);
  auto crossing = toy()[4];
  crossing.tokens[0].head = 3;  // 1 -> 3 crosses 2 -> 5
  crossing.tokens[1].head = 5;
  crossing.tokens[2].head = 4;
  CHECK_THROWS_AS(train({crossing}, {}, c, opts), NonProjectiveError);
  auto two_roots = toy()[0];
  two_roots.tokens[0].head = 0;
  CHECK_THROWS_AS(train({two_roots}, {}, c, opts), NonProjectiveError);
}

TEST_CASE("training is deterministic under a fixed seed") {
  const ModelConfig c = small_config();
  TrainOptions opts;
  opts.epochs = 2;
  opts.seed = 5;
  std::vector<double> losses_a, losses_b;
  const TrainedModel a = train(toy(), {}, c, opts, {}, [&](const EpochReport& r) { losses_a.push_back(r.loss); });
  const TrainedModel b = train(toy(), {}, c, opts, {}, [&](const EpochReport& r) { losses_b.push_back(r.loss); });
  CHECK(losses_a == losses_b);
  CHECK(flat_values(a.params) == flat_values(b.params));
  CHECK(serialize_model(a) == serialize_model(b));
}

TEST_CASE("dev-based model selection keeps the best epoch") {
  const ModelConfig c = small_config();
  TrainOptions opts;
  opts.epochs = 6;
  const auto all = toy();
  const std::vector<ConlluSentence> train_set(all.begin(), all.begin() + 7);
  const std::vector<ConlluSentence> dev(all.begin() + 7, all.end());
  std::vector<EpochReport> reports;
  const TrainedModel model = train(train_set, dev, c, opts, {}, [&](const EpochReport& r) { reports.push_back(r); });
  REQUIRE(reports.size() == 6);
  double best = -1;
  for (const auto& r : reports) {
    CHECK(r.on_dev);
    CHECK(r.scores.tokens == 15);
    best = std::max(best, r.scores.las());
  }
  CHECK(reports.front().best);
  CHECK(evaluate(dev, parse_sentences(model, dev)).las() == doctest::Approx(best));
}

TEST_CASE("static-oracle training runs") {
  TrainOptions opts;
  opts.epochs = 1;
  opts.oracle = OracleMode::static_oracle;
  std::vector<EpochReport> reports;
  train(toy(), {}, small_config(), opts, {}, [&](const EpochReport& r) { reports.push_back(r); });
  REQUIRE(reports.size() == 1);
  CHECK_FALSE(reports[0].on_dev);
  CHECK(reports[0].scores.tokens == 49);
  CHECK(parse_oracle_mode("static") == OracleMode::static_oracle);
  CHECK_THROWS_AS(parse_oracle_mode("oracle"), std::invalid_argument);
}

TEST_CASE("pre-trained embeddings initialize word vectors") {
  std::istringstream in("나는 1 2 3 4 5 6 7 8\n미지어 8 7 6 5 4 3 2 1\n");
  const auto emb = PretrainedEmbeddings::read(in);
  TrainOptions opts;
  opts.epochs = 0;
  const TrainedModel kept = train(toy(), {}, small_config(), opts, {&emb, false});
  const auto& table = kept.params[kept.network.composition.word_embeddings()].value;
  CHECK(table(kept.vocab.words.lookup("나는"), 7) == 8);
  CHECK(kept.vocab.words.lookup("미지어") == Vocabulary::kUnk);

  const TrainedModel expanded = train(toy(), {}, small_config(), opts, {&emb, true});
  const auto id = expanded.vocab.words.lookup("미지어");
  CHECK(id != Vocabulary::kUnk);
  CHECK(expanded.params[expanded.network.composition.word_embeddings()].value(id, 0) == 8);

  ModelConfig wide = small_config();
  wide.units.word_dim = 4;
  CHECK_THROWS_AS(train(toy(), {}, wide, opts, {&emb, false}), DimensionMismatchError);
}

TEST_CASE("model serialization round trip") {
  TrainedModel model = toy_model(small_config(), 4);
  const std::string bytes = serialize_model(model);
  const TrainedModel back = deserialize_model(bytes);
  CHECK(serialize_model(back) == bytes);
  CHECK(back.config.units == model.config.units);
  CHECK(back.labels == model.labels);
  CHECK(back.vocab.jamo == model.vocab.jamo);
  for (const auto& s : toy()) {
    const auto a = greedy_parse(model, s.forms());
    const auto b = greedy_parse(back, s.forms());
    CHECK(a.heads == b.heads);
    CHECK(a.labels == b.labels);
  }

  const auto path = std::filesystem::temp_directory_path() / "jamoparse_test_model.bin";
  save_model(model, path);
  CHECK(serialize_model(load_model(path)) == bytes);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_model("/nonexistent/model.bin"), IoError);
}

TEST_CASE("damaged model files are rejected") {
  const std::string bytes = serialize_model(toy_model(small_config(), 4));

  std::string wrong_version = bytes;
  wrong_version[8] = 9;
  CHECK_THROWS_AS(deserialize_model(wrong_version), VersionMismatchError);

  std::string flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x10;
  CHECK_THROWS_AS(deserialize_model(flipped), CorruptFileError);

  CHECK_THROWS_AS(deserialize_model(bytes.substr(0, bytes.size() - 1)), CorruptFileError);
  CHECK_THROWS_AS(deserialize_model(bytes.substr(0, 10)), CorruptFileError);

  std::string magic = bytes;
  magic[0] = 'X';
  CHECK_THROWS_AS(deserialize_model(magic), CorruptFileError);
}
