#include "jamoparse/parser.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>

#include "jamoparse/errors.hpp"

namespace jamoparse {

void ModelConfig::validate() const {
  units.validate();
  if (scorer_hidden == 0) throw std::invalid_argument("scorer hidden dimension must be positive");
}

Network::Network(const ModelConfig& config, const VocabSizes& sizes, std::size_t labels, ParameterStore& store)
    : composition(config.units, sizes, store),
      scorer(store, config.units.encoder_dim, config.scorer_hidden, labels) {}

void TrainedModel::bind() {
  config.validate();
  if (labels.size() == 0) throw std::invalid_argument("a parser model needs at least one arc label");
  network = Network(config, sizes_of(vocab), labels.size(), params);
}

TrainedModel create_model(const ModelConfig& config, Vocabularies vocab, Vocabulary labels, std::uint64_t seed) {
  TrainedModel model;
  model.config = config;
  model.vocab = std::move(vocab);
  model.labels = std::move(labels);
  model.bind();
  model.params.initialize(seed);
  return model;
}

std::size_t best_allowed(std::span<const real> scores, std::span<const std::uint8_t> mask) {
  std::size_t best = scores.size();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!mask[i]) continue;
    if (best == scores.size() || scores[i] > scores[best]) best = i;
  }
  return best;
}

ParseResult greedy_parse(const TrainedModel& model, const SentenceBatch& sentence) {
  if (sentence.tokens.empty()) throw EmptyInputError("cannot parse an empty sentence");
  const std::size_t labels = model.labels.size();
  nn::Graph g(model.params);
  const auto encodings = model.network.composition.sentence_encode(g, sentence);
  ParserConfiguration cfg(sentence.size());
  while (!cfg.terminal()) {
    const nn::Expr scores = model.network.scorer.score(g, cfg, encodings);
    const auto mask = legal_mask(cfg, labels);
    const std::size_t best = best_allowed(scores.value(), mask);
    if (best == mask.size()) throw std::logic_error("no legal transition in a non-terminal configuration");
    cfg.apply(transition_at(best, labels));
  }
  ParseResult result;
  result.transitions = cfg.transitions_applied();
  for (int k = 1; k <= static_cast<int>(sentence.size()); ++k) {
    result.heads.push_back(cfg.head_of(k));
    result.labels.push_back(cfg.label_of(k));
  }
  return result;
}

ParseResult greedy_parse(const TrainedModel& model, const std::vector<std::string>& forms) {
  return greedy_parse(model, make_batch(forms, model.vocab));
}

std::vector<ConlluSentence> parse_sentences(const TrainedModel& model, std::vector<ConlluSentence> sentences,
                                            std::size_t threads) {
  auto annotate = [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      auto& sentence = sentences[s];
      if (sentence.tokens.empty()) continue;
      const ParseResult r = greedy_parse(model, sentence.forms());
      for (std::size_t k = 0; k < sentence.tokens.size(); ++k) {
        sentence.tokens[k].head = r.heads[k];
        sentence.tokens[k].deprel = model.labels.size() > 0 ? model.labels.unit(r.labels[k]) : "_";
      }
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, sentences.size()));
  if (threads == 1) {
    annotate(0, sentences.size());
    return sentences;
  }
  std::vector<std::exception_ptr> failures(threads);
  {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (sentences.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(sentences.size(), begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([&, t, begin, end] {
        try {
          annotate(begin, end);
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return sentences;
}

}  // namespace jamoparse
