#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jamoparse/graph.hpp"
#include "jamoparse/parameters.hpp"

namespace jamoparse::nn {

struct LstmState {
  Expr hidden;
  Expr memory;
};

// Standard LSTM cell phi(x, h) -> h'. Gate rows are stacked as
// [input; forget; output; candidate] in one 4H x D input matrix, one 4H x H
// recurrent matrix, and one 4H bias.
class LstmCell {
 public:
  LstmCell() = default;
  // Registers (or binds, if already present) `<prefix>/Wx`, `<prefix>/Wh`,
  // `<prefix>/b` in the store.
  LstmCell(ParameterStore& store, const std::string& prefix, std::size_t input_dim, std::size_t state_dim);

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t state_dim() const noexcept { return state_dim_; }

  LstmState initial_state(Graph& g) const;
  // Throws ShapeError when x does not have input_dim() elements.
  LstmState step(Graph& g, Expr x, const LstmState& prev) const;

 private:
  std::size_t input_dim_ = 0;
  std::size_t state_dim_ = 0;
  ParamId wx_, wh_, b_;
};

// Runs `cell` over `inputs` left to right and returns every hidden state.
std::vector<Expr> run_forward(Graph& g, const LstmCell& cell, const std::vector<Expr>& inputs);
// Runs `cell` right to left; result[i] is the state after consuming inputs[i..n).
std::vector<Expr> run_backward(Graph& g, const LstmCell& cell, const std::vector<Expr>& inputs);

// Stacked bidirectional LSTM. Each layer emits [forward_i; backward_i]; the
// next layer consumes that concatenation.
class BiLstm {
 public:
  BiLstm() = default;
  BiLstm(ParameterStore& store, const std::string& prefix, std::size_t input_dim, std::size_t state_dim,
         std::size_t layers);

  std::size_t output_dim() const noexcept { return 2 * state_dim_; }
  std::vector<Expr> run(Graph& g, const std::vector<Expr>& inputs) const;

 private:
  std::size_t state_dim_ = 0;
  std::vector<LstmCell> forward_;
  std::vector<LstmCell> backward_;
};

}  // namespace jamoparse::nn
