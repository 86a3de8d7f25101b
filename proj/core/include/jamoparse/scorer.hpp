#pragma once

#include <cstddef>
#include <vector>

#include "jamoparse/graph.hpp"
#include "jamoparse/parameters.hpp"
#include "jamoparse/transition.hpp"

namespace jamoparse {

// One-hidden-layer tanh feedforward over the encodings of the top three
// stack items and the first buffer item. Absent positions use a learned
// padding vector; ROOT on the stack uses its own learned vector.
class TransitionScorer {
 public:
  static constexpr std::size_t kStackFeatures = 3;
  static constexpr std::size_t kBufferFeatures = 1;

  TransitionScorer() = default;
  TransitionScorer(ParameterStore& store, std::size_t encoding_dim, std::size_t hidden_dim, std::size_t labels);

  std::size_t labels() const noexcept { return labels_; }
  std::size_t output_dim() const noexcept { return transition_count(labels_); }

  // One score per transition, laid out as in transition_index(). Throws
  // ShapeError if `encodings` does not cover the sentence or has the wrong
  // width.
  nn::Expr score(nn::Graph& g, const ParserConfiguration& cfg, const std::vector<nn::Expr>& encodings) const;

 private:
  std::size_t encoding_dim_ = 0;
  std::size_t labels_ = 0;
  ParamId pad_, root_, hidden_w_, hidden_b_, out_w_, out_b_;
};

}  // namespace jamoparse
