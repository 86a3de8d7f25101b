#include "jamoparse/scorer.hpp"

#include "jamoparse/errors.hpp"

namespace jamoparse {

TransitionScorer::TransitionScorer(ParameterStore& store, std::size_t encoding_dim, std::size_t hidden_dim,
                                   std::size_t labels)
    : encoding_dim_(encoding_dim), labels_(labels) {
  const std::size_t features = (kStackFeatures + kBufferFeatures) * encoding_dim;
  pad_ = store.ensure("scorer/pad", Shape{encoding_dim, 1}, InitKind::embedding);
  root_ = store.ensure("scorer/root", Shape{encoding_dim, 1}, InitKind::embedding);
  hidden_w_ = store.ensure("scorer/W1", Shape{hidden_dim, features}, InitKind::glorot);
  hidden_b_ = store.ensure("scorer/b1", Shape{hidden_dim, 1}, InitKind::zero);
  out_w_ = store.ensure("scorer/W2", Shape{transition_count(labels), hidden_dim}, InitKind::glorot);
  out_b_ = store.ensure("scorer/b2", Shape{transition_count(labels), 1}, InitKind::zero);
}

nn::Expr TransitionScorer::score(nn::Graph& g, const ParserConfiguration& cfg,
                                 const std::vector<nn::Expr>& encodings) const {
  if (encodings.size() != cfg.sentence_length()) {
    throw ShapeError("scorer got " + std::to_string(encodings.size()) + " encodings for a sentence of " +
                     std::to_string(cfg.sentence_length()));
  }
  auto encoding = [&](int token) -> nn::Expr {
    if (token == 0) return g.parameter(root_);
    const nn::Expr e = encodings[token - 1];
    if (e.size() != encoding_dim_) {
      throw ShapeError("encoding of width " + std::to_string(e.size()) + ", scorer expects " +
                       std::to_string(encoding_dim_));
    }
    return e;
  };
  std::vector<nn::Expr> parts;
  parts.reserve(kStackFeatures + kBufferFeatures);
  const auto& stack = cfg.stack();
  for (std::size_t i = 0; i < kStackFeatures; ++i) {
    parts.push_back(i < stack.size() ? encoding(stack[stack.size() - 1 - i]) : g.parameter(pad_));
  }
  parts.push_back(cfg.buffer_empty() ? g.parameter(pad_) : encoding(cfg.buffer_front()));
  nn::Expr hidden = nn::affine_tanh(g.parameter(hidden_b_), {{g.parameter(hidden_w_), nn::concat(parts)}});
  return nn::affine(g.parameter(out_b_), {{g.parameter(out_w_), hidden}});
}

}  // namespace jamoparse
