#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "jamoparse/graph.hpp"
#include "jamoparse/lstm.hpp"
#include "jamoparse/parameters.hpp"
#include "jamoparse/vocabulary.hpp"

namespace jamoparse {

// Embedding sizes of each unit tier. A zero dimension switches the tier off
// and allocates no parameters for it.
struct UnitConfig {
  std::size_t jamo_dim = 100;     // d: jamo embeddings and composed character vectors
  std::size_t char_dim = 100;     // d': character lookup embeddings
  std::size_t word_dim = 100;     // d_W: word lookup embeddings
  std::size_t encoder_dim = 250;  // d*: sentence BiLSTM output (two directions of d*/2)
  std::size_t encoder_layers = 2;

  // Throws std::invalid_argument on an unusable combination.
  void validate() const;

  bool char_tier() const noexcept { return jamo_dim > 0 || char_dim > 0; }
  // State size of the character BiLSTM and of the composed word vector h^w.
  // Falls back to d' when the jamo tier is off.
  std::size_t char_state_dim() const noexcept { return jamo_dim > 0 ? jamo_dim : char_dim; }
  std::size_t word_repr_dim() const noexcept { return char_tier() ? char_state_dim() : 0; }
  std::size_t encoder_input_dim() const noexcept { return word_repr_dim() + word_dim; }

  friend bool operator==(const UnitConfig&, const UnitConfig&) = default;
};

// One character resolved against the vocabularies.
struct CharUnits {
  std::size_t char_id = Vocabulary::kUnk;
  // Jamo-tier ids for head, vowel and tail (tail may be the empty letter).
  // For an atomic character only jamo[0] is meaningful.
  std::array<std::size_t, 3> jamo{};
  bool atomic = false;
};

struct TokenUnits {
  std::string form;
  std::size_t word_id = Vocabulary::kUnk;
  std::vector<CharUnits> chars;
};

struct SentenceBatch {
  std::vector<TokenUnits> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
};

CharUnits resolve_char(char32_t c, const Vocabularies& vocab);
TokenUnits resolve_token(const std::string& form, const Vocabularies& vocab);
SentenceBatch make_batch(const std::vector<std::string>& forms, const Vocabularies& vocab);

struct VocabSizes {
  std::size_t jamo = 0;
  std::size_t chars = 0;
  std::size_t words = 0;
};

inline VocabSizes sizes_of(const Vocabularies& v) { return {v.jamo.size(), v.chars.size(), v.words.size()}; }

// Jamo -> character -> word -> sentence stack. Holds parameter ids only, so
// one instance works against any store with the same layout.
class CompositionModel {
 public:
  CompositionModel() = default;
  CompositionModel(const UnitConfig& config, const VocabSizes& sizes, ParameterStore& store);

  const UnitConfig& config() const noexcept { return config_; }
  std::size_t output_dim() const noexcept { return config_.encoder_dim; }

  // h^c = tanh(U e_head + V e_vowel + W e_tail + b); atomic characters use
  // tanh(U e_atomic + b). Requires jamo_dim > 0.
  nn::Expr char_repr(nn::Graph& g, const CharUnits& c) const;
  // Input to the character BiLSTM: [h^c; e^c] with absent tiers dropped.
  nn::Expr char_input(nn::Graph& g, const CharUnits& c) const;
  // h^w = tanh(U^C [f_m; b_1] + b^C). Returns an empty vector when the
  // character tier is off. Throws EmptyInputError on a word with no characters.
  nn::Expr word_repr(nn::Graph& g, const TokenUnits& token) const;
  // z_1..z_n from the two-layer BiLSTM over [h^w; e^w]. Throws
  // EmptyInputError on an empty sentence.
  std::vector<nn::Expr> sentence_encode(nn::Graph& g, const SentenceBatch& sentence) const;

  ParamId word_embeddings() const noexcept { return word_embed_; }

 private:
  UnitConfig config_;
  ParamId jamo_embed_, jamo_u_, jamo_v_, jamo_w_, jamo_b_;
  ParamId char_embed_;
  nn::LstmCell char_fwd_, char_bwd_;
  ParamId char_u_, char_b_;
  ParamId word_embed_;
  nn::BiLstm encoder_;
};

}  // namespace jamoparse
