#include "jamoparse/lstm.hpp"

#include "jamoparse/errors.hpp"

namespace jamoparse::nn {

LstmCell::LstmCell(ParameterStore& store, const std::string& prefix, std::size_t input_dim,
                   std::size_t state_dim)
    : input_dim_(input_dim),
      state_dim_(state_dim),
      wx_(store.ensure(prefix + "/Wx", Shape{4 * state_dim, input_dim}, InitKind::glorot)),
      wh_(store.ensure(prefix + "/Wh", Shape{4 * state_dim, state_dim}, InitKind::glorot)),
      b_(store.ensure(prefix + "/b", Shape{4 * state_dim, 1}, InitKind::zero)) {}

LstmState LstmCell::initial_state(Graph& g) const { return {g.zeros(state_dim_), g.zeros(state_dim_)}; }

LstmState LstmCell::step(Graph& g, Expr x, const LstmState& prev) const {
  if (x.size() != input_dim_) {
    throw ShapeError("lstm input has " + std::to_string(x.size()) + " elements, cell expects " +
                     std::to_string(input_dim_));
  }
  if (prev.hidden.size() != state_dim_ || prev.memory.size() != state_dim_) {
    throw ShapeError("lstm state does not match cell dimension " + std::to_string(state_dim_));
  }
  const std::size_t h = state_dim_;
  Expr gates = affine(g.parameter(b_), {{g.parameter(wx_), x}, {g.parameter(wh_), prev.hidden}});
  Expr in = sigmoid(slice(gates, 0, h));
  Expr forget = sigmoid(slice(gates, h, 2 * h));
  Expr out = sigmoid(slice(gates, 2 * h, 3 * h));
  Expr candidate = tanh(slice(gates, 3 * h, 4 * h));
  Expr memory = cmult(in, candidate) + cmult(forget, prev.memory);
  return {cmult(out, tanh(memory)), memory};
}

std::vector<Expr> run_forward(Graph& g, const LstmCell& cell, const std::vector<Expr>& inputs) {
  std::vector<Expr> out;
  out.reserve(inputs.size());
  LstmState state = cell.initial_state(g);
  for (const Expr& x : inputs) {
    state = cell.step(g, x, state);
    out.push_back(state.hidden);
  }
  return out;
}

std::vector<Expr> run_backward(Graph& g, const LstmCell& cell, const std::vector<Expr>& inputs) {
  std::vector<Expr> out(inputs.size());
  LstmState state = cell.initial_state(g);
  for (std::size_t i = inputs.size(); i-- > 0;) {
    state = cell.step(g, inputs[i], state);
    out[i] = state.hidden;
  }
  return out;
}

BiLstm::BiLstm(ParameterStore& store, const std::string& prefix, std::size_t input_dim, std::size_t state_dim,
               std::size_t layers)
    : state_dim_(state_dim) {
  std::size_t in = input_dim;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::string layer = prefix + "/l" + std::to_string(l);
    forward_.emplace_back(store, layer + "/fwd", in, state_dim);
    backward_.emplace_back(store, layer + "/bwd", in, state_dim);
    in = 2 * state_dim;
  }
}

std::vector<Expr> BiLstm::run(Graph& g, const std::vector<Expr>& inputs) const {
  std::vector<Expr> layer_in = inputs;
  for (std::size_t l = 0; l < forward_.size(); ++l) {
    const auto fwd = run_forward(g, forward_[l], layer_in);
    const auto bwd = run_backward(g, backward_[l], layer_in);
    std::vector<Expr> layer_out;
    layer_out.reserve(layer_in.size());
    for (std::size_t i = 0; i < layer_in.size(); ++i) layer_out.push_back(concat({fwd[i], bwd[i]}));
    layer_in = std::move(layer_out);
  }
  return layer_in;
}

}  // namespace jamoparse::nn
