#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jamoparse/parameters.hpp"
#include "jamoparse/real.hpp"

namespace jamoparse::nn {

enum class OptimizerKind : std::uint8_t { sgd, adam };

std::string to_string(OptimizerKind kind);
// Throws std::invalid_argument for anything but "sgd" or "adam".
OptimizerKind parse_optimizer_kind(const std::string& name);

struct OptimizerOptions {
  OptimizerKind kind = OptimizerKind::adam;
  real learning_rate = real(1e-3);
  real beta1 = real(0.9);
  real beta2 = real(0.999);
  real epsilon = real(1e-8);
  // Global gradient-norm clip; non-positive disables clipping.
  real clip_norm = real(5.0);
};

// Applies one update from the gradients held in a ParameterStore, then clears
// them. Only elements with nonzero gradient move. For Adam this is the lazy
// (sparse) variant: moment estimates of untouched elements are left alone.
class Optimizer {
 public:
  explicit Optimizer(OptimizerOptions options = {}) : options_(options) {}

  const OptimizerOptions& options() const noexcept { return options_; }
  std::uint64_t steps() const noexcept { return steps_; }

  void step(ParameterStore& store);

 private:
  struct Moments {
    std::vector<real> first;
    std::vector<real> second;
  };

  OptimizerOptions options_;
  std::uint64_t steps_ = 0;
  std::vector<Moments> moments_;
};

}  // namespace jamoparse::nn
