#include "jamoparse/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace jamoparse::nn {

std::string to_string(OptimizerKind kind) { return kind == OptimizerKind::sgd ? "sgd" : "adam"; }

OptimizerKind parse_optimizer_kind(const std::string& name) {
  if (name == "sgd") return OptimizerKind::sgd;
  if (name == "adam") return OptimizerKind::adam;
  throw std::invalid_argument("unknown optimizer: " + name);
}

void Optimizer::step(ParameterStore& store) {
  if (options_.clip_norm > 0) {
    const real norm = store.grad_norm();
    if (norm > options_.clip_norm) store.scale_grad(options_.clip_norm / norm);
  }
  ++steps_;
  if (options_.kind == OptimizerKind::adam && moments_.size() < store.size()) moments_.resize(store.size());

  const real lr = options_.learning_rate;
  const real b1 = options_.beta1;
  const real b2 = options_.beta2;
  const real correction1 = real{1} - static_cast<real>(std::pow(b1, static_cast<double>(steps_)));
  const real correction2 = real{1} - static_cast<real>(std::pow(b2, static_cast<double>(steps_)));

  std::size_t index = 0;
  for (Parameter& p : store) {
    const std::size_t cols = p.value.cols();
    Moments* m = nullptr;
    if (options_.kind == OptimizerKind::adam) {
      m = &moments_[index];
      if (m->first.size() != p.value.size()) {
        m->first.assign(p.value.size(), real{0});
        m->second.assign(p.value.size(), real{0});
      }
    }
    for (std::size_t r : p.active_rows()) {
      auto values = p.value.row(r);
      const auto grads = p.grad.row(r);
      for (std::size_t c = 0; c < cols; ++c) {
        const real g = grads[c];
        if (g == 0) continue;
        if (m == nullptr) {
          values[c] -= lr * g;
          continue;
        }
        const std::size_t k = r * cols + c;
        m->first[k] = b1 * m->first[k] + (real{1} - b1) * g;
        m->second[k] = b2 * m->second[k] + (real{1} - b2) * g * g;
        const real mhat = m->first[k] / correction1;
        const real vhat = m->second[k] / correction2;
        values[c] -= lr * mhat / (std::sqrt(vhat) + options_.epsilon);
      }
    }
    p.clear_grad();
    ++index;
  }
}

}  // namespace jamoparse::nn
