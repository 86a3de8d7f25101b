#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "jamoparse/real.hpp"

namespace jamoparse {

// Row-major 2-D shape. Vectors are rows x 1.
struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 1;

  std::size_t size() const noexcept { return rows * cols; }
  std::vector<std::size_t> dims() const { return {rows, cols}; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& shape);

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape) : shape_(shape), values_(shape.size(), real{0}) {}
  Tensor(std::size_t rows, std::size_t cols) : Tensor(Shape{rows, cols}) {}

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t rows() const noexcept { return shape_.rows; }
  std::size_t cols() const noexcept { return shape_.cols; }

  std::span<real> values() noexcept { return values_; }
  std::span<const real> values() const noexcept { return values_; }
  std::span<real> row(std::size_t r) noexcept { return {values_.data() + r * shape_.cols, shape_.cols}; }
  std::span<const real> row(std::size_t r) const noexcept {
    return {values_.data() + r * shape_.cols, shape_.cols};
  }

  real& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * shape_.cols + c]; }
  real operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * shape_.cols + c]; }
  real& operator[](std::size_t i) noexcept { return values_[i]; }
  real operator[](std::size_t i) const noexcept { return values_[i]; }

  void fill(real v);

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Shape shape_;
  std::vector<real> values_;
};

enum class InitKind : std::uint8_t {
  glorot,     // uniform +-sqrt(6 / (fan_in + fan_out))
  zero,       // biases
  embedding,  // uniform +-0.01
};

struct ParamId {
  std::size_t index = static_cast<std::size_t>(-1);

  bool valid() const noexcept { return index != static_cast<std::size_t>(-1); }
  friend bool operator==(const ParamId&, const ParamId&) = default;
};

// A trainable tensor with a same-shaped gradient slot. Sparse parameters
// (lookup tables) record which rows received gradient so optimizer steps and
// gradient clearing only visit those rows.
struct Parameter {
  std::string name;
  InitKind init = InitKind::glorot;
  bool sparse = false;
  Tensor value;
  Tensor grad;

  void mark_row(std::size_t row);
  void clear_grad();
  // Rows that may hold nonzero gradient; every row for dense parameters.
  std::vector<std::size_t> active_rows() const;

 private:
  friend class ParameterStore;
  std::vector<std::uint8_t> touched_;
  std::vector<std::size_t> touched_rows_;
};

class ParameterStore {
 public:
  ParameterStore() = default;

  // Throws std::invalid_argument on a duplicate name.
  ParamId add(const std::string& name, Shape shape, InitKind init, bool sparse = false);
  std::optional<ParamId> find(const std::string& name) const;
  // Returns the existing parameter `name`, or adds it. Throws ShapeError when
  // the existing shape differs.
  ParamId ensure(const std::string& name, Shape shape, InitKind init, bool sparse = false);

  Parameter& operator[](ParamId id) { return params_.at(id.index); }
  const Parameter& operator[](ParamId id) const { return params_.at(id.index); }

  std::size_t size() const noexcept { return params_.size(); }
  std::size_t scalar_count() const noexcept;
  auto begin() noexcept { return params_.begin(); }
  auto end() noexcept { return params_.end(); }
  auto begin() const noexcept { return params_.begin(); }
  auto end() const noexcept { return params_.end(); }

  // Re-draws every value from its InitKind using a generator seeded with
  // `seed`, visiting parameters in insertion order.
  void initialize(std::uint64_t seed);
  std::uint64_t seed() const noexcept { return seed_; }
  void set_seed(std::uint64_t seed) noexcept { seed_ = seed; }

  void zero_grad();
  real grad_norm() const;
  void scale_grad(real factor);

  // Copies values (not gradients) from a store with identical layout.
  void copy_values_from(const ParameterStore& other);

 private:
  std::vector<Parameter> params_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::uint64_t seed_ = 0;
};

}  // namespace jamoparse
