#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jamoparse/parameters.hpp"
#include "jamoparse/real.hpp"

namespace jamoparse::nn {

class Graph;

// Handle to a node in a Graph. Cheap to copy; valid while its graph lives.
struct Expr {
  Graph* graph = nullptr;
  std::size_t id = 0;

  std::span<const real> value() const;
  std::size_t size() const;
  Shape shape() const;
  // Value of a single-element node.
  real scalar() const;
};

enum class Op : std::uint8_t {
  parameter,
  lookup,
  constant,
  affine,
  add,
  sub,
  cmult,
  tanh,
  sigmoid,
  concat,
  slice,
  pick,
  sum_elements,
  sum,
  add_constant,
};

// Dynamic reverse-mode tape. Nodes are appended in topological order as the
// forward pass runs; backward() walks them in reverse.
//
// A graph built over a const ParameterStore is inference-only. Parameter and
// lookup nodes alias the store's values, so the store must outlive the graph
// and must not be mutated while the graph is in use.
class Graph {
 public:
  explicit Graph(ParameterStore& store);
  explicit Graph(const ParameterStore& store);

  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Expr parameter(ParamId id);
  Expr lookup(ParamId table, std::size_t row);
  Expr constant(std::vector<real> values);
  Expr zeros(std::size_t n);

  // Fills every gradient slot touched by the graph with d(loss)/d(param),
  // accumulating into whatever the store already holds. `loss` must be a
  // single-element node. Throws std::logic_error on an inference-only graph.
  void backward(Expr loss);

  std::size_t node_count() const noexcept { return nodes_.size(); }

  // Internal node access used by the op implementations.
  struct Node {
    Op op;
    Shape shape;
    std::vector<real> value;
    const real* external = nullptr;  // aliases store memory for parameter/lookup
    std::vector<std::size_t> args;
    std::size_t aux0 = 0;
    std::size_t aux1 = 0;
    real aux_real = 0;
    std::vector<real> grad;

    std::span<const real> view() const {
      return external ? std::span<const real>(external, shape.size()) : std::span<const real>(value);
    }
  };

  Expr push(Node node);
  const Node& node(std::size_t id) const { return nodes_[id]; }

 private:
  std::vector<real>& grad_of(std::size_t id);
  void backprop_node(std::size_t id);

  const ParameterStore* store_;
  ParameterStore* mutable_store_;
  std::vector<Node> nodes_;
  std::unordered_map<std::size_t, std::size_t> param_nodes_;
};

// Sum of matrix-vector products plus bias: bias + sum_i W_i x_i.
// Throws ShapeError naming the offending term index.
Expr affine(Expr bias, std::span<const std::pair<Expr, Expr>> terms);
Expr affine(Expr bias, std::initializer_list<std::pair<Expr, Expr>> terms);
Expr affine_tanh(Expr bias, std::span<const std::pair<Expr, Expr>> terms);
Expr affine_tanh(Expr bias, std::initializer_list<std::pair<Expr, Expr>> terms);

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr cmult(Expr a, Expr b);
Expr tanh(Expr x);
Expr sigmoid(Expr x);
Expr concat(std::span<const Expr> parts);
Expr concat(std::initializer_list<Expr> parts);
Expr slice(Expr x, std::size_t begin, std::size_t end);
Expr pick(Expr x, std::size_t index);
Expr sum_elements(Expr x);
Expr sum(std::span<const Expr> terms);
Expr add_constant(Expr x, real c);

}  // namespace jamoparse::nn
