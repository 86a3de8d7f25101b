#include "jamoparse/trainer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "jamoparse/corpus.hpp"
#include "jamoparse/errors.hpp"
#include "jamoparse/tree.hpp"

namespace jamoparse {

std::string to_string(OracleMode mode) { return mode == OracleMode::dynamic ? "dynamic" : "static"; }

OracleMode parse_oracle_mode(const std::string& name) {
  if (name == "dynamic") return OracleMode::dynamic;
  if (name == "static") return OracleMode::static_oracle;
  throw std::invalid_argument("unknown oracle mode: " + name);
}

HingeOutcome transition_hinge(std::span<const real> scores, std::span<const std::uint8_t> legal,
                              std::span<const std::uint8_t> correct, real margin) {
  HingeOutcome out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (correct[i]) {
      if (out.best_correct == HingeOutcome::kNone || scores[i] > scores[out.best_correct]) out.best_correct = i;
    } else if (legal[i]) {
      if (out.best_wrong == HingeOutcome::kNone || scores[i] > scores[out.best_wrong]) out.best_wrong = i;
    }
  }
  if (out.best_correct != HingeOutcome::kNone && out.best_wrong != HingeOutcome::kNone) {
    out.loss = std::max(real{0}, margin + scores[out.best_wrong] - scores[out.best_correct]);
  }
  return out;
}

GoldTree gold_tree(const ConlluSentence& sentence, const Vocabulary& labels) {
  GoldTree gold;
  gold.heads = sentence.heads();
  for (const auto& t : sentence.tokens) {
    const auto id = labels.find(t.deprel);
    if (!id) throw std::out_of_range("unknown arc label: " + t.deprel);
    gold.labels.push_back(*id);
  }
  return gold;
}

Trainer::Trainer(TrainedModel& model, const TrainOptions& options)
    : model_(model), options_(options), optimizer_(options.optimizer), rng_(options.seed) {}

void Trainer::apply_word_dropout(SentenceBatch& sentence) {
  if (model_.config.units.word_dim == 0 || options_.word_dropout <= 0) return;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double alpha = options_.word_dropout;
  for (auto& token : sentence.tokens) {
    if (token.word_id == Vocabulary::kUnk) continue;
    const double freq = static_cast<double>(model_.vocab.words.count(token.word_id));
    if (coin(rng_) < alpha / (alpha + freq)) token.word_id = Vocabulary::kUnk;
  }
}

double Trainer::train_sentence(const SentenceBatch& input, const GoldTree& gold, std::size_t epoch) {
  SentenceBatch sentence = input;
  apply_word_dropout(sentence);

  const std::size_t labels = model_.labels.size();
  const real margin = static_cast<real>(options_.margin);
  const bool dynamic = options_.oracle == OracleMode::dynamic;
  const bool explore = dynamic && epoch > options_.explore_after_epoch && options_.explore_probability > 0;
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  nn::Graph g(model_.params);
  const auto encodings = model_.network.composition.sentence_encode(g, sentence);
  ParserConfiguration cfg(sentence.size());
  std::vector<nn::Expr> losses;
  double total = 0;

  while (!cfg.terminal()) {
    const nn::Expr scores = model_.network.scorer.score(g, cfg, encodings);
    const auto legal = legal_mask(cfg, labels);
    std::vector<std::uint8_t> correct;
    Transition static_move;
    if (dynamic) {
      correct = correct_transitions(cfg, gold, labels);
    } else {
      static_move = static_oracle(cfg, gold);
      correct.assign(legal.size(), 0);
      correct[transition_index(static_move, labels)] = 1;
    }
    const HingeOutcome h = transition_hinge(scores.value(), legal, correct, margin);
    if (h.loss > 0) {
      total += h.loss;
      losses.push_back(nn::add_constant(nn::pick(scores, h.best_wrong) - nn::pick(scores, h.best_correct), margin));
    }

    Transition next = static_move;
    if (dynamic) {
      if (h.best_correct == HingeOutcome::kNone) throw std::logic_error("dynamic oracle found no correct move");
      std::size_t chosen = h.best_correct;
      if (explore && h.best_wrong != HingeOutcome::kNone &&
          scores.value()[h.best_wrong] > scores.value()[h.best_correct] &&
          coin(rng_) < options_.explore_probability) {
        chosen = h.best_wrong;
      }
      next = transition_at(chosen, labels);
    }
    cfg.apply(next);
  }

  if (!losses.empty()) {
    g.backward(nn::sum(losses));
    optimizer_.step(model_.params);
  }
  return total;
}

double Trainer::train_sentence(const ConlluSentence& sentence, std::size_t epoch) {
  return train_sentence(make_batch(sentence.forms(), model_.vocab), gold_tree(sentence, model_.labels), epoch);
}

TrainedModel train(const std::vector<ConlluSentence>& train_set, const std::vector<ConlluSentence>& dev,
                   const ModelConfig& config, const TrainOptions& options, const EmbeddingSource& pretrained,
                   const EpochCallback& on_epoch) {
  if (train_set.empty()) throw EmptyInputError("training treebank is empty");
  for (std::size_t s = 0; s < train_set.size(); ++s) {
    const auto heads = train_set[s].heads();
    if (train_set[s].tokens.empty()) throw EmptyInputError("training sentence " + std::to_string(s + 1) + " is empty");
    if (!is_well_formed(heads) || !has_single_root(heads)) {
      throw NonProjectiveError("training sentence " + std::to_string(s + 1) + " is not a well-formed tree", s);
    }
    if (!is_projective(heads)) {
      throw NonProjectiveError("training sentence " + std::to_string(s + 1) + " is non-projective", s);
    }
  }
  config.validate();

  VocabularyBuild built = build_vocabularies(train_set);
  if (pretrained.embeddings != nullptr) {
    if (config.units.word_dim == 0) throw std::invalid_argument("pre-trained embeddings need a word dimension");
    if (pretrained.expand_vocabulary) expand_vocabulary(*pretrained.embeddings, built.vocab.words);
  }
  TrainedModel model = create_model(config, std::move(built.vocab), std::move(built.labels), options.seed);
  if (pretrained.embeddings != nullptr) {
    apply_embeddings(*pretrained.embeddings, model.vocab.words,
                     model.params[model.network.composition.word_embeddings()].value);
  }

  std::vector<SentenceBatch> batches;
  std::vector<GoldTree> golds;
  batches.reserve(train_set.size());
  for (const auto& s : train_set) {
    batches.push_back(make_batch(s.forms(), model.vocab));
    golds.push_back(gold_tree(s, model.labels));
  }

  Trainer trainer(model, options);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& eval_set = dev.empty() ? train_set : dev;
  ParameterStore best;
  double best_las = -1;

  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    if (options.shuffle) std::shuffle(order.begin(), order.end(), trainer.rng());
    double loss = 0;
    for (std::size_t i : order) loss += trainer.train_sentence(batches[i], golds[i], epoch);

    EpochReport report;
    report.epoch = epoch;
    report.loss = loss;
    report.on_dev = !dev.empty();
    report.scores = evaluate(eval_set, parse_sentences(model, eval_set), options.exclude_punctuation);
    if (dev.empty()) {
      report.best = true;
    } else if (report.scores.las() > best_las) {
      best_las = report.scores.las();
      best = model.params;
      report.best = true;
    }
    if (on_epoch) on_epoch(report);
  }
  if (!dev.empty() && options.epochs > 0) model.params.copy_values_from(best);
  return model;
}

}  // namespace jamoparse
