#pragma once

#include <functional>
#include <string>

#include "jamoparse/graph.hpp"
#include "jamoparse/parameters.hpp"

namespace testsupport {

struct GradCheckResult {
  double max_rel_error = 0;
  std::string worst;  // "<param>[<index>] analytic=<a> numeric=<n>"
  std::size_t checked = 0;
};

using LossBuilder = std::function<jamoparse::nn::Expr(jamoparse::nn::Graph&)>;

// Compares backprop gradients with central differences over every element of
// every parameter in `store`. Relative error is |a - n| / max(|a|, |n|, 1e-6).
GradCheckResult check_gradients(jamoparse::ParameterStore& store, const LossBuilder& loss, double step = 1e-4);

}  // namespace testsupport
