#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "jamoparse/conllu.hpp"
#include "jamoparse/corpus.hpp"
#include "jamoparse/hangul.hpp"
#include "jamoparse/parser.hpp"
#include "jamoparse/trainer.hpp"
#include "jamoparse/utf8.hpp"

namespace {

using namespace jamoparse;

std::vector<std::string> random_sentence(std::mt19937& gen, std::size_t tokens) {
  std::uniform_int_distribution<int> syllable(hangul::kSyllableFirst, hangul::kSyllableLast);
  std::uniform_int_distribution<int> length(1, 4);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens; ++i) {
    std::u32string w;
    for (int k = length(gen); k > 0; --k) w.push_back(static_cast<char32_t>(syllable(gen)));
    out.push_back(utf8::encode(w));
  }
  return out;
}

TrainedModel bench_model(const std::vector<std::string>& forms, const UnitConfig& units) {
  ConlluSentence s = make_sentence(forms);
  for (std::size_t k = 0; k < s.tokens.size(); ++k) {
    s.tokens[k].head = k == 0 ? 0 : 1;
    s.tokens[k].deprel = k == 0 ? "root" : "dep";
  }
  VocabularyBuild built = build_vocabularies({s});
  ModelConfig config;
  config.units = units;
  return create_model(config, std::move(built.vocab), std::move(built.labels), 42);
}

void BM_DecomposeAllSyllables(benchmark::State& state) {
  for (auto _ : state) {
    int sum = 0;
    for (char32_t c = hangul::kSyllableFirst; c <= hangul::kSyllableLast; ++c) {
      const auto t = hangul::decompose(c);
      sum += t->head + t->vowel + t->tail;
    }
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * hangul::kSyllableCount);
}
BENCHMARK(BM_DecomposeAllSyllables);

void BM_EncodeSentence(benchmark::State& state) {
  std::mt19937 gen(1);
  const auto forms = random_sentence(gen, static_cast<std::size_t>(state.range(0)));
  const TrainedModel model = bench_model(forms, UnitConfig{});
  const SentenceBatch batch = make_batch(forms, model.vocab);
  for (auto _ : state) {
    nn::Graph g(model.params);
    auto enc = model.network.composition.sentence_encode(g, batch);
    benchmark::DoNotOptimize(enc.back().value().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncodeSentence)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_GreedyParse(benchmark::State& state) {
  std::mt19937 gen(2);
  const auto forms = random_sentence(gen, static_cast<std::size_t>(state.range(0)));
  const TrainedModel model = bench_model(forms, UnitConfig{});
  for (auto _ : state) {
    auto result = greedy_parse(model, forms);
    benchmark::DoNotOptimize(result.heads.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GreedyParse)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_TrainSentence(benchmark::State& state) {
  std::mt19937 gen(3);
  const auto forms = random_sentence(gen, 20);
  TrainedModel model = bench_model(forms, UnitConfig{});
  ConlluSentence s = make_sentence(forms);
  for (std::size_t k = 0; k < s.tokens.size(); ++k) {
    s.tokens[k].head = k == 0 ? 0 : 1;
    s.tokens[k].deprel = k == 0 ? "root" : "dep";
  }
  Trainer trainer(model, TrainOptions{});
  for (auto _ : state) benchmark::DoNotOptimize(trainer.train_sentence(s, 1));
}
BENCHMARK(BM_TrainSentence)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
