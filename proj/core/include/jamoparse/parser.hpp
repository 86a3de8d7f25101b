#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jamoparse/composition.hpp"
#include "jamoparse/conllu.hpp"
#include "jamoparse/parameters.hpp"
#include "jamoparse/scorer.hpp"
#include "jamoparse/transition.hpp"
#include "jamoparse/vocabulary.hpp"

namespace jamoparse {

struct ModelConfig {
  UnitConfig units;
  std::size_t scorer_hidden = 100;

  void validate() const;
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// Parameter bindings of the full network.
struct Network {
  Network() = default;
  Network(const ModelConfig& config, const VocabSizes& sizes, std::size_t labels, ParameterStore& store);

  CompositionModel composition;
  TransitionScorer scorer;
};

// Everything needed to parse: configuration, vocabularies, label set and
// parameter values. A bound model is immutable during parsing and may be
// shared across threads.
struct TrainedModel {
  ModelConfig config;
  Vocabularies vocab;
  Vocabulary labels{UnitKind::label};
  ParameterStore params;
  Network network;

  // Creates missing parameters and refreshes `network`.
  void bind();
};

// Binds a fresh network and draws initial values from `seed`.
TrainedModel create_model(const ModelConfig& config, Vocabularies vocab, Vocabulary labels, std::uint64_t seed);

struct ParseResult {
  std::vector<int> heads;            // heads[k] for token k+1
  std::vector<std::size_t> labels;   // label ids
  std::size_t transitions = 0;
};

// Highest-scoring index whose mask entry is set; ties go to the lowest index.
// Returns scores.size() when nothing is allowed.
std::size_t best_allowed(std::span<const real> scores, std::span<const std::uint8_t> mask);

// Applies the best legal transition until the configuration is terminal.
// Throws EmptyInputError on an empty sentence.
ParseResult greedy_parse(const TrainedModel& model, const SentenceBatch& sentence);
ParseResult greedy_parse(const TrainedModel& model, const std::vector<std::string>& forms);

// Copies `sentences` with predicted heads and labels in columns 7-8.
std::vector<ConlluSentence> parse_sentences(const TrainedModel& model, std::vector<ConlluSentence> sentences,
                                            std::size_t threads = 1);

}  // namespace jamoparse
