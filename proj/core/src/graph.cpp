#include "jamoparse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "jamoparse/errors.hpp"

namespace jamoparse::nn {
namespace {

real sigmoid_scalar(real x) {
  if (x >= 0) {
    const real z = std::exp(-x);
    return real{1} / (real{1} + z);
  }
  const real z = std::exp(x);
  return z / (real{1} + z);
}

Graph& same_graph(Expr a, Expr b) {
  if (a.graph == nullptr || a.graph != b.graph) throw std::logic_error("expressions from different graphs");
  return *a.graph;
}

void require_same_size(Expr a, Expr b, const char* op) {
  if (a.size() != b.size()) {
    throw ShapeError(std::string(op) + ": operand sizes " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()) + " differ");
  }
}

Shape vector_shape(std::size_t n) { return Shape{n, 1}; }

}  // namespace

std::span<const real> Expr::value() const { return graph->node(id).view(); }
std::size_t Expr::size() const { return graph->node(id).shape.size(); }
Shape Expr::shape() const { return graph->node(id).shape; }
real Expr::scalar() const {
  if (size() != 1) throw ShapeError("scalar() on a node of size " + std::to_string(size()));
  return value()[0];
}

Graph::Graph(ParameterStore& store) : store_(&store), mutable_store_(&store) {}
Graph::Graph(const ParameterStore& store) : store_(&store), mutable_store_(nullptr) {}

Expr Graph::push(Node node) {
  nodes_.push_back(std::move(node));
  return Expr{this, nodes_.size() - 1};
}

Expr Graph::parameter(ParamId id) {
  if (auto it = param_nodes_.find(id.index); it != param_nodes_.end()) return Expr{this, it->second};
  const Parameter& p = (*store_)[id];
  Node n;
  n.op = Op::parameter;
  n.shape = p.value.shape();
  n.external = p.value.values().data();
  n.aux0 = id.index;
  Expr e = push(std::move(n));
  param_nodes_.emplace(id.index, e.id);
  return e;
}

Expr Graph::lookup(ParamId table, std::size_t row) {
  const Parameter& p = (*store_)[table];
  if (row >= p.value.rows()) {
    throw ShapeError("lookup row " + std::to_string(row) + " outside table " + p.name + " of " +
                     std::to_string(p.value.rows()) + " rows");
  }
  Node n;
  n.op = Op::lookup;
  n.shape = vector_shape(p.value.cols());
  n.external = p.value.row(row).data();
  n.aux0 = table.index;
  n.aux1 = row;
  return push(std::move(n));
}

Expr Graph::constant(std::vector<real> values) {
  Node n;
  n.op = Op::constant;
  n.shape = vector_shape(values.size());
  n.value = std::move(values);
  return push(std::move(n));
}

Expr Graph::zeros(std::size_t n) { return constant(std::vector<real>(n, real{0})); }

std::vector<real>& Graph::grad_of(std::size_t id) {
  auto& g = nodes_[id].grad;
  if (g.empty()) g.assign(nodes_[id].shape.size(), real{0});
  return g;
}

void Graph::backward(Expr loss) {
  if (mutable_store_ == nullptr) throw std::logic_error("backward() on an inference-only graph");
  if (loss.graph != this) throw std::logic_error("loss belongs to a different graph");
  if (loss.size() != 1) throw ShapeError("backward() needs a scalar loss");
  grad_of(loss.id)[0] += real{1};
  for (std::size_t i = loss.id + 1; i-- > 0;) {
    if (!nodes_[i].grad.empty()) backprop_node(i);
  }
  for (auto& n : nodes_) {
    n.grad.clear();
    n.grad.shrink_to_fit();
  }
}

void Graph::backprop_node(std::size_t id) {
  // grad_of() never grows nodes_, so these references stay valid.
  const Node& n = nodes_[id];
  const std::vector<real>& g = n.grad;
  switch (n.op) {
    case Op::constant:
      break;
    case Op::parameter: {
      Parameter& p = (*mutable_store_)[ParamId{n.aux0}];
      auto dst = p.grad.values();
      for (std::size_t k = 0; k < g.size(); ++k) dst[k] += g[k];
      break;
    }
    case Op::lookup: {
      Parameter& p = (*mutable_store_)[ParamId{n.aux0}];
      auto dst = p.grad.row(n.aux1);
      for (std::size_t k = 0; k < g.size(); ++k) dst[k] += g[k];
      p.mark_row(n.aux1);
      break;
    }
    case Op::affine: {
      auto& gb = grad_of(n.args[0]);
      for (std::size_t r = 0; r < g.size(); ++r) gb[r] += g[r];
      for (std::size_t t = 1; t + 1 < n.args.size(); t += 2) {
        const std::size_t w_id = n.args[t];
        const std::size_t x_id = n.args[t + 1];
        const Node& w = nodes_[w_id];
        const auto wv = w.view();
        const auto xv = nodes_[x_id].view();
        const std::size_t rows = w.shape.rows;
        const std::size_t cols = w.shape.cols;
        if (nodes_[w_id].op != Op::constant) {
          auto& gw = grad_of(w_id);
          for (std::size_t r = 0; r < rows; ++r) {
            const real gr = g[r];
            if (gr == 0) continue;
            real* row = gw.data() + r * cols;
            for (std::size_t c = 0; c < cols; ++c) row[c] += gr * xv[c];
          }
        }
        if (nodes_[x_id].op != Op::constant) {
          auto& gx = grad_of(x_id);
          for (std::size_t r = 0; r < rows; ++r) {
            const real gr = g[r];
            if (gr == 0) continue;
            const real* row = wv.data() + r * cols;
            for (std::size_t c = 0; c < cols; ++c) gx[c] += gr * row[c];
          }
        }
      }
      break;
    }
    case Op::add: {
      auto& ga = grad_of(n.args[0]);
      for (std::size_t k = 0; k < g.size(); ++k) ga[k] += g[k];
      auto& gb = grad_of(n.args[1]);
      for (std::size_t k = 0; k < g.size(); ++k) gb[k] += g[k];
      break;
    }
    case Op::sub: {
      auto& ga = grad_of(n.args[0]);
      for (std::size_t k = 0; k < g.size(); ++k) ga[k] += g[k];
      auto& gb = grad_of(n.args[1]);
      for (std::size_t k = 0; k < g.size(); ++k) gb[k] -= g[k];
      break;
    }
    case Op::cmult: {
      const auto a = nodes_[n.args[0]].view();
      const auto b = nodes_[n.args[1]].view();
      auto& ga = grad_of(n.args[0]);
      for (std::size_t k = 0; k < g.size(); ++k) ga[k] += g[k] * b[k];
      auto& gb = grad_of(n.args[1]);
      for (std::size_t k = 0; k < g.size(); ++k) gb[k] += g[k] * a[k];
      break;
    }
    case Op::tanh: {
      auto& gx = grad_of(n.args[0]);
      for (std::size_t k = 0; k < g.size(); ++k) gx[k] += g[k] * (real{1} - n.value[k] * n.value[k]);
      break;
    }
    case Op::sigmoid: {
      auto& gx = grad_of(n.args[0]);
      for (std::size_t k = 0; k < g.size(); ++k) gx[k] += g[k] * n.value[k] * (real{1} - n.value[k]);
      break;
    }
    case Op::concat: {
      std::size_t offset = 0;
      for (std::size_t a : n.args) {
        const std::size_t len = nodes_[a].shape.size();
        auto& ga = grad_of(a);
        for (std::size_t k = 0; k < len; ++k) ga[k] += g[offset + k];
        offset += len;
      }
      break;
    }
    case Op::slice: {
      auto& gx = grad_of(n.args[0]);
      for (std::size_t k = 0; k < g.size(); ++k) gx[n.aux0 + k] += g[k];
      break;
    }
    case Op::pick: {
      grad_of(n.args[0])[n.aux0] += g[0];
      break;
    }
    case Op::sum_elements: {
      auto& gx = grad_of(n.args[0]);
      for (real& v : gx) v += g[0];
      break;
    }
    case Op::sum: {
      for (std::size_t a : n.args) {
        auto& ga = grad_of(a);
        for (std::size_t k = 0; k < g.size(); ++k) ga[k] += g[k];
      }
      break;
    }
    case Op::add_constant: {
      auto& gx = grad_of(n.args[0]);
      for (std::size_t k = 0; k < g.size(); ++k) gx[k] += g[k];
      break;
    }
  }
}

Expr affine(Expr bias, std::span<const std::pair<Expr, Expr>> terms) {
  Graph& g = *bias.graph;
  Graph::Node n;
  n.op = Op::affine;
  n.shape = vector_shape(bias.size());
  n.value.assign(bias.value().begin(), bias.value().end());
  n.args.reserve(1 + 2 * terms.size());
  n.args.push_back(bias.id);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& [w, x] = terms[t];
    same_graph(bias, w);
    same_graph(bias, x);
    const Shape ws = w.shape();
    if (ws.cols != x.size() || ws.rows != bias.size()) {
      throw ShapeError("affine term " + std::to_string(t) + ": matrix " + to_string(ws) + " against vector of " +
                       std::to_string(x.size()) + " and bias of " + std::to_string(bias.size()));
    }
    const auto wv = w.value();
    const auto xv = x.value();
    for (std::size_t r = 0; r < ws.rows; ++r) {
      const real* row = wv.data() + r * ws.cols;
      real acc = 0;
      for (std::size_t c = 0; c < ws.cols; ++c) acc += row[c] * xv[c];
      n.value[r] += acc;
    }
    n.args.push_back(w.id);
    n.args.push_back(x.id);
  }
  return g.push(std::move(n));
}

Expr affine(Expr bias, std::initializer_list<std::pair<Expr, Expr>> terms) {
  return affine(bias, std::span<const std::pair<Expr, Expr>>(terms.begin(), terms.size()));
}

Expr affine_tanh(Expr bias, std::span<const std::pair<Expr, Expr>> terms) { return tanh(affine(bias, terms)); }

Expr affine_tanh(Expr bias, std::initializer_list<std::pair<Expr, Expr>> terms) {
  return tanh(affine(bias, terms));
}

namespace {

template <typename F>
Expr elementwise_binary(Expr a, Expr b, Op op, const char* name, F f) {
  Graph& g = same_graph(a, b);
  require_same_size(a, b, name);
  Graph::Node n;
  n.op = op;
  n.shape = a.shape();
  const auto av = a.value();
  const auto bv = b.value();
  n.value.resize(av.size());
  for (std::size_t k = 0; k < av.size(); ++k) n.value[k] = f(av[k], bv[k]);
  n.args = {a.id, b.id};
  return g.push(std::move(n));
}

template <typename F>
Expr elementwise_unary(Expr x, Op op, F f) {
  Graph::Node n;
  n.op = op;
  n.shape = x.shape();
  const auto xv = x.value();
  n.value.resize(xv.size());
  for (std::size_t k = 0; k < xv.size(); ++k) n.value[k] = f(xv[k]);
  n.args = {x.id};
  return x.graph->push(std::move(n));
}

}  // namespace

Expr operator+(Expr a, Expr b) {
  return elementwise_binary(a, b, Op::add, "add", [](real x, real y) { return x + y; });
}

Expr operator-(Expr a, Expr b) {
  return elementwise_binary(a, b, Op::sub, "sub", [](real x, real y) { return x - y; });
}

Expr cmult(Expr a, Expr b) {
  return elementwise_binary(a, b, Op::cmult, "cmult", [](real x, real y) { return x * y; });
}

Expr tanh(Expr x) {
  return elementwise_unary(x, Op::tanh, [](real v) { return std::tanh(v); });
}

Expr sigmoid(Expr x) { return elementwise_unary(x, Op::sigmoid, sigmoid_scalar); }

Expr add_constant(Expr x, real c) {
  return elementwise_unary(x, Op::add_constant, [c](real v) { return v + c; });
}

Expr concat(std::span<const Expr> parts) {
  if (parts.empty()) throw ShapeError("concat of nothing");
  if (parts.size() == 1) return parts[0];
  Graph& g = *parts[0].graph;
  Graph::Node n;
  n.op = Op::concat;
  std::size_t total = 0;
  for (const Expr& p : parts) {
    same_graph(parts[0], p);
    total += p.size();
  }
  n.shape = vector_shape(total);
  n.value.reserve(total);
  for (const Expr& p : parts) {
    const auto v = p.value();
    n.value.insert(n.value.end(), v.begin(), v.end());
    n.args.push_back(p.id);
  }
  return g.push(std::move(n));
}

Expr concat(std::initializer_list<Expr> parts) {
  return concat(std::span<const Expr>(parts.begin(), parts.size()));
}

Expr slice(Expr x, std::size_t begin, std::size_t end) {
  if (begin > end || end > x.size()) {
    throw ShapeError("slice [" + std::to_string(begin) + ", " + std::to_string(end) + ") of size " +
                     std::to_string(x.size()));
  }
  Graph::Node n;
  n.op = Op::slice;
  n.shape = vector_shape(end - begin);
  const auto v = x.value();
  n.value.assign(v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(end));
  n.args = {x.id};
  n.aux0 = begin;
  return x.graph->push(std::move(n));
}

Expr pick(Expr x, std::size_t index) {
  if (index >= x.size()) {
    throw ShapeError("pick " + std::to_string(index) + " of size " + std::to_string(x.size()));
  }
  Graph::Node n;
  n.op = Op::pick;
  n.shape = vector_shape(1);
  n.value = {x.value()[index]};
  n.args = {x.id};
  n.aux0 = index;
  return x.graph->push(std::move(n));
}

Expr sum_elements(Expr x) {
  Graph::Node n;
  n.op = Op::sum_elements;
  n.shape = vector_shape(1);
  real acc = 0;
  for (real v : x.value()) acc += v;
  n.value = {acc};
  n.args = {x.id};
  return x.graph->push(std::move(n));
}

Expr sum(std::span<const Expr> terms) {
  if (terms.empty()) throw ShapeError("sum of nothing");
  if (terms.size() == 1) return terms[0];
  Graph& g = *terms[0].graph;
  Graph::Node n;
  n.op = Op::sum;
  n.shape = terms[0].shape();
  n.value.assign(terms[0].size(), real{0});
  for (const Expr& t : terms) {
    same_graph(terms[0], t);
    require_same_size(terms[0], t, "sum");
    const auto v = t.value();
    for (std::size_t k = 0; k < v.size(); ++k) n.value[k] += v[k];
    n.args.push_back(t.id);
  }
  return g.push(std::move(n));
}

}  // namespace jamoparse::nn
