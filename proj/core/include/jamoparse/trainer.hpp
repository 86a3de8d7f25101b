#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "jamoparse/conllu.hpp"
#include "jamoparse/embeddings.hpp"
#include "jamoparse/evaluate.hpp"
#include "jamoparse/optimizer.hpp"
#include "jamoparse/parser.hpp"

namespace jamoparse {

enum class OracleMode : std::uint8_t { static_oracle, dynamic };

std::string to_string(OracleMode mode);
// Accepts "static" or "dynamic"; throws std::invalid_argument otherwise.
OracleMode parse_oracle_mode(const std::string& name);

struct TrainOptions {
  std::size_t epochs = 30;
  std::uint64_t seed = 42;
  nn::OptimizerOptions optimizer;
  OracleMode oracle = OracleMode::dynamic;
  // Dynamic mode only: chance of following the best wrong transition when it
  // outscores the best correct one, from epoch `explore_after_epoch + 1` on.
  double explore_probability = 0.1;
  std::size_t explore_after_epoch = 1;
  // A training word is replaced by <unk> with probability a / (a + freq).
  double word_dropout = 0.25;
  double margin = 1.0;
  bool exclude_punctuation = false;
  bool shuffle = true;
};

struct HingeOutcome {
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  real loss = 0;
  std::size_t best_correct = kNone;
  std::size_t best_wrong = kNone;
};

// max(0, margin + max_{legal wrong} s - max_{correct} s). Zero when either
// set is empty. Ties pick the lowest index.
HingeOutcome transition_hinge(std::span<const real> scores, std::span<const std::uint8_t> legal,
                              std::span<const std::uint8_t> correct, real margin);

// Maps gold labels to ids in `labels`; throws std::out_of_range on an
// unknown label.
GoldTree gold_tree(const ConlluSentence& sentence, const Vocabulary& labels);

// Per-sentence max-margin updates on a bound model.
class Trainer {
 public:
  Trainer(TrainedModel& model, const TrainOptions& options);

  // Walks the oracle-guided transition sequence, sums the hinge losses,
  // backpropagates once and takes one optimizer step (skipped when the loss
  // is zero). Returns the summed loss.
  double train_sentence(const SentenceBatch& sentence, const GoldTree& gold, std::size_t epoch);
  double train_sentence(const ConlluSentence& sentence, std::size_t epoch);

  std::mt19937_64& rng() noexcept { return rng_; }
  const nn::Optimizer& optimizer() const noexcept { return optimizer_; }

 private:
  void apply_word_dropout(SentenceBatch& sentence);

  TrainedModel& model_;
  TrainOptions options_;
  nn::Optimizer optimizer_;
  std::mt19937_64 rng_;
};

struct EpochReport {
  std::size_t epoch = 0;
  double loss = 0;
  AttachmentScores scores;
  bool on_dev = false;  // scores come from the dev set rather than the training set
  bool best = false;    // this epoch's parameters are the ones kept so far
};

using EpochCallback = std::function<void(const EpochReport&)>;

struct EmbeddingSource {
  const PretrainedEmbeddings* embeddings = nullptr;
  bool expand_vocabulary = false;
};

// Builds vocabularies from `train`, initializes a model, and trains for
// options.epochs epochs. After each epoch the model is scored on `dev` (or on
// `train` when `dev` is empty); with a dev set the best-LAS epoch is kept,
// otherwise the last. Throws EmptyInputError on an empty treebank and
// NonProjectiveError on a non-projective or malformed (including multi-rooted)
// training tree.
TrainedModel train(const std::vector<ConlluSentence>& train, const std::vector<ConlluSentence>& dev,
                   const ModelConfig& config, const TrainOptions& options, const EmbeddingSource& pretrained = {},
                   const EpochCallback& on_epoch = {});

}  // namespace jamoparse
