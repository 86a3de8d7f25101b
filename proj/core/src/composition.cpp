#include "jamoparse/composition.hpp"

#include <stdexcept>

#include "jamoparse/errors.hpp"
#include "jamoparse/hangul.hpp"
#include "jamoparse/utf8.hpp"

namespace jamoparse {

void UnitConfig::validate() const {
  if (jamo_dim == 0 && char_dim == 0 && word_dim == 0) {
    throw std::invalid_argument("at least one of the jamo, char and word dimensions must be positive");
  }
  if (encoder_dim == 0 || encoder_dim % 2 != 0) {
    throw std::invalid_argument("encoder dimension must be positive and even, got " + std::to_string(encoder_dim));
  }
  if (encoder_layers == 0) throw std::invalid_argument("encoder needs at least one layer");
}

CharUnits resolve_char(char32_t c, const Vocabularies& vocab) {
  CharUnits out;
  out.char_id = vocab.chars.lookup(utf8::encode(c));
  if (auto triple = hangul::decompose(c)) {
    out.jamo = {vocab.jamo.letter_id(hangul::canonicalize(triple->head_jamo())),
                vocab.jamo.letter_id(hangul::canonicalize(triple->vowel_jamo())),
                vocab.jamo.letter_id(hangul::canonicalize(triple->tail_jamo()))};
  } else {
    out.atomic = true;
    out.jamo = {vocab.jamo.lookup(utf8::encode(c)), Vocabulary::kUnk, Vocabulary::kUnk};
  }
  return out;
}

TokenUnits resolve_token(const std::string& form, const Vocabularies& vocab) {
  TokenUnits out;
  out.form = form;
  out.word_id = vocab.words.lookup(form);
  for (char32_t c : utf8::decode(form)) out.chars.push_back(resolve_char(c, vocab));
  return out;
}

SentenceBatch make_batch(const std::vector<std::string>& forms, const Vocabularies& vocab) {
  SentenceBatch batch;
  batch.tokens.reserve(forms.size());
  for (const auto& f : forms) batch.tokens.push_back(resolve_token(f, vocab));
  return batch;
}

CompositionModel::CompositionModel(const UnitConfig& config, const VocabSizes& sizes, ParameterStore& store)
    : config_(config) {
  config_.validate();
  const std::size_t d = config.jamo_dim;
  if (d > 0) {
    jamo_embed_ = store.ensure("jamo/embed", Shape{sizes.jamo, d}, InitKind::embedding, true);
    jamo_u_ = store.ensure("jamo/U", Shape{d, d}, InitKind::glorot);
    jamo_v_ = store.ensure("jamo/V", Shape{d, d}, InitKind::glorot);
    jamo_w_ = store.ensure("jamo/W", Shape{d, d}, InitKind::glorot);
    jamo_b_ = store.ensure("jamo/b", Shape{d, 1}, InitKind::zero);
  }
  if (config.char_dim > 0) {
    char_embed_ = store.ensure("char/embed", Shape{sizes.chars, config.char_dim}, InitKind::embedding, true);
  }
  if (config.char_tier()) {
    const std::size_t state = config.char_state_dim();
    const std::size_t in = d + config.char_dim;
    char_fwd_ = nn::LstmCell(store, "char/fwd", in, state);
    char_bwd_ = nn::LstmCell(store, "char/bwd", in, state);
    char_u_ = store.ensure("char/U", Shape{state, 2 * state}, InitKind::glorot);
    char_b_ = store.ensure("char/b", Shape{state, 1}, InitKind::zero);
  }
  if (config.word_dim > 0) {
    word_embed_ = store.ensure("word/embed", Shape{sizes.words, config.word_dim}, InitKind::embedding, true);
  }
  encoder_ = nn::BiLstm(store, "encoder", config.encoder_input_dim(), config.encoder_dim / 2, config.encoder_layers);
}

nn::Expr CompositionModel::char_repr(nn::Graph& g, const CharUnits& c) const {
  if (config_.jamo_dim == 0) throw std::logic_error("char_repr needs a positive jamo dimension");
  nn::Expr bias = g.parameter(jamo_b_);
  nn::Expr head = g.lookup(jamo_embed_, c.jamo[0]);
  if (c.atomic) return nn::affine_tanh(bias, {{g.parameter(jamo_u_), head}});
  return nn::affine_tanh(bias, {{g.parameter(jamo_u_), head},
                                {g.parameter(jamo_v_), g.lookup(jamo_embed_, c.jamo[1])},
                                {g.parameter(jamo_w_), g.lookup(jamo_embed_, c.jamo[2])}});
}

nn::Expr CompositionModel::char_input(nn::Graph& g, const CharUnits& c) const {
  if (config_.jamo_dim > 0 && config_.char_dim > 0) {
    return nn::concat({char_repr(g, c), g.lookup(char_embed_, c.char_id)});
  }
  if (config_.jamo_dim > 0) return char_repr(g, c);
  return g.lookup(char_embed_, c.char_id);
}

nn::Expr CompositionModel::word_repr(nn::Graph& g, const TokenUnits& token) const {
  if (token.chars.empty()) throw EmptyInputError("cannot compose an empty word");
  if (!config_.char_tier()) return g.zeros(0);
  std::vector<nn::Expr> inputs;
  inputs.reserve(token.chars.size());
  for (const auto& c : token.chars) inputs.push_back(char_input(g, c));
  const auto fwd = nn::run_forward(g, char_fwd_, inputs);
  const auto bwd = nn::run_backward(g, char_bwd_, inputs);
  nn::Expr ends = nn::concat({fwd.back(), bwd.front()});
  return nn::affine_tanh(g.parameter(char_b_), {{g.parameter(char_u_), ends}});
}

std::vector<nn::Expr> CompositionModel::sentence_encode(nn::Graph& g, const SentenceBatch& sentence) const {
  if (sentence.tokens.empty()) throw EmptyInputError("cannot encode an empty sentence");
  std::vector<nn::Expr> inputs;
  inputs.reserve(sentence.size());
  for (const auto& token : sentence.tokens) {
    if (config_.char_tier() && config_.word_dim > 0) {
      inputs.push_back(nn::concat({word_repr(g, token), g.lookup(word_embed_, token.word_id)}));
    } else if (config_.char_tier()) {
      inputs.push_back(word_repr(g, token));
    } else {
      inputs.push_back(g.lookup(word_embed_, token.word_id));
    }
  }
  return encoder_.run(g, inputs);
}

}  // namespace jamoparse
