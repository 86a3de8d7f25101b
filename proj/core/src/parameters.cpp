#include "jamoparse/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "jamoparse/errors.hpp"

namespace jamoparse {

std::string to_string(const Shape& shape) {
  return std::to_string(shape.rows) + "x" + std::to_string(shape.cols);
}

void Tensor::fill(real v) { std::fill(values_.begin(), values_.end(), v); }

void Parameter::mark_row(std::size_t row) {
  if (!sparse) return;
  if (touched_.size() != value.rows()) touched_.assign(value.rows(), 0);
  if (!touched_[row]) {
    touched_[row] = 1;
    touched_rows_.push_back(row);
  }
}

void Parameter::clear_grad() {
  if (!sparse) {
    grad.fill(real{0});
    return;
  }
  for (std::size_t r : touched_rows_) {
    auto g = grad.row(r);
    std::fill(g.begin(), g.end(), real{0});
    touched_[r] = 0;
  }
  touched_rows_.clear();
}

std::vector<std::size_t> Parameter::active_rows() const {
  if (sparse) {
    std::vector<std::size_t> rows = touched_rows_;
    std::sort(rows.begin(), rows.end());
    return rows;
  }
  std::vector<std::size_t> rows(value.rows());
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
  return rows;
}

ParamId ParameterStore::add(const std::string& name, Shape shape, InitKind init, bool sparse) {
  if (by_name_.contains(name)) throw std::invalid_argument("duplicate parameter name: " + name);
  Parameter p;
  p.name = name;
  p.init = init;
  p.sparse = sparse;
  p.value = Tensor(shape);
  p.grad = Tensor(shape);
  params_.push_back(std::move(p));
  by_name_.emplace(name, params_.size() - 1);
  return ParamId{params_.size() - 1};
}

std::optional<ParamId> ParameterStore::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return ParamId{it->second};
}

ParamId ParameterStore::ensure(const std::string& name, Shape shape, InitKind init, bool sparse) {
  if (auto id = find(name)) {
    const auto& existing = params_[id->index].value.shape();
    if (!(existing == shape)) {
      throw ShapeError("parameter " + name + " has shape " + to_string(existing) + ", expected " +
                       to_string(shape));
    }
    return *id;
  }
  return add(name, shape, init, sparse);
}

std::size_t ParameterStore::scalar_count() const noexcept {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

void ParameterStore::initialize(std::uint64_t seed) {
  seed_ = seed;
  std::mt19937_64 rng(seed);
  for (auto& p : params_) {
    auto values = p.value.values();
    switch (p.init) {
      case InitKind::zero:
        std::fill(values.begin(), values.end(), real{0});
        break;
      case InitKind::embedding: {
        std::uniform_real_distribution<double> dist(-0.01, 0.01);
        for (auto& v : values) v = static_cast<real>(dist(rng));
        break;
      }
      case InitKind::glorot: {
        const double fan = static_cast<double>(p.value.rows() + p.value.cols());
        const double bound = std::sqrt(6.0 / fan);
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (auto& v : values) v = static_cast<real>(dist(rng));
        break;
      }
    }
    p.grad.fill(real{0});
    p.touched_.clear();
    p.touched_rows_.clear();
  }
}

void ParameterStore::zero_grad() {
  for (auto& p : params_) p.clear_grad();
}

real ParameterStore::grad_norm() const {
  double sum = 0;
  for (const auto& p : params_) {
    for (std::size_t r : p.active_rows()) {
      for (real g : p.grad.row(r)) sum += static_cast<double>(g) * g;
    }
  }
  return static_cast<real>(std::sqrt(sum));
}

void ParameterStore::scale_grad(real factor) {
  for (auto& p : params_) {
    for (std::size_t r : p.active_rows()) {
      for (real& g : p.grad.row(r)) g *= factor;
    }
  }
}

void ParameterStore::copy_values_from(const ParameterStore& other) {
  if (other.params_.size() != params_.size()) throw ShapeError("parameter stores differ in layout");
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (!(params_[i].value.shape() == other.params_[i].value.shape()) ||
        params_[i].name != other.params_[i].name) {
      throw ShapeError("parameter stores differ at " + params_[i].name);
    }
    params_[i].value = other.params_[i].value;
  }
}

}  // namespace jamoparse
