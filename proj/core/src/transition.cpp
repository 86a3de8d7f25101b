#include "jamoparse/transition.hpp"

#include <stdexcept>

namespace jamoparse {

std::size_t transition_index(Transition t, std::size_t labels) {
  switch (t.kind) {
    case TransitionKind::shift:
      return 0;
    case TransitionKind::left_arc:
      return 1 + t.label;
    case TransitionKind::right_arc:
      return 1 + labels + t.label;
  }
  return 0;
}

Transition transition_at(std::size_t index, std::size_t labels) {
  if (index == 0) return {TransitionKind::shift, 0};
  if (index <= labels) return {TransitionKind::left_arc, index - 1};
  if (index <= 2 * labels) return {TransitionKind::right_arc, index - 1 - labels};
  throw std::out_of_range("transition index " + std::to_string(index) + " with " + std::to_string(labels) +
                          " labels");
}

std::string to_string(Transition t) {
  switch (t.kind) {
    case TransitionKind::shift:
      return "SHIFT";
    case TransitionKind::left_arc:
      return "LEFT-ARC(" + std::to_string(t.label) + ")";
    case TransitionKind::right_arc:
      return "RIGHT-ARC(" + std::to_string(t.label) + ")";
  }
  return "?";
}

ParserConfiguration::ParserConfiguration(std::size_t sentence_length)
    : n_(sentence_length), stack_{0}, heads_(sentence_length + 1, -1), labels_(sentence_length + 1, 0) {}

std::vector<int> ParserConfiguration::buffer() const {
  std::vector<int> out;
  for (int k = front_; k <= static_cast<int>(n_); ++k) out.push_back(k);
  return out;
}

void ParserConfiguration::apply(Transition t) {
  if (!legal_transitions(*this).allows(t.kind)) throw std::logic_error("illegal transition " + to_string(t));
  switch (t.kind) {
    case TransitionKind::shift:
      stack_.push_back(front_++);
      break;
    case TransitionKind::left_arc: {
      const int dep = stack_.back();
      stack_.pop_back();
      arcs_.push_back({front_, dep, t.label});
      heads_[dep] = front_;
      labels_[dep] = t.label;
      break;
    }
    case TransitionKind::right_arc: {
      const int dep = stack_.back();
      stack_.pop_back();
      const int head = stack_.back();
      arcs_.push_back({head, dep, t.label});
      heads_[dep] = head;
      labels_[dep] = t.label;
      break;
    }
  }
  ++applied_;
}

bool LegalSet::allows(TransitionKind kind) const noexcept {
  switch (kind) {
    case TransitionKind::shift:
      return shift;
    case TransitionKind::left_arc:
      return left_arc;
    case TransitionKind::right_arc:
      return right_arc;
  }
  return false;
}

LegalSet legal_transitions(const ParserConfiguration& cfg) {
  LegalSet legal;
  const bool buffer = !cfg.buffer_empty();
  legal.shift = buffer;
  legal.left_arc = buffer && !cfg.stack().empty() && cfg.stack().back() != 0;
  // ROOT takes its single dependent only once everything else is attached.
  legal.right_arc = cfg.stack().size() >= 3 || (cfg.stack().size() == 2 && !buffer);
  return legal;
}

int TransitionCosts::of(TransitionKind kind) const noexcept {
  switch (kind) {
    case TransitionKind::shift:
      return shift;
    case TransitionKind::left_arc:
      return left_arc;
    case TransitionKind::right_arc:
      return right_arc;
  }
  return kIllegalCost;
}

TransitionCosts transition_costs(const ParserConfiguration& cfg, const GoldTree& gold) {
  const LegalSet legal = legal_transitions(cfg);
  const auto& stack = cfg.stack();
  const int n = static_cast<int>(cfg.sentence_length());
  const int b = cfg.buffer_empty() ? -1 : cfg.buffer_front();
  auto in_buffer = [&](int t) { return b != -1 && t >= b && t <= n; };
  auto in_buffer_tail = [&](int t) { return b != -1 && t > b && t <= n; };
  // Gold dependents of `head` still waiting in the buffer (front included).
  auto buffer_dependents = [&](int head) {
    int count = 0;
    for (int t = b == -1 ? n + 1 : b; t <= n; ++t) count += gold.head_of(t) == head ? 1 : 0;
    return count;
  };

  TransitionCosts costs;
  if (legal.left_arc) {
    const int s0 = stack.back();
    const int s1 = stack.size() >= 2 ? stack[stack.size() - 2] : -1;
    const int h = gold.head_of(s0);
    costs.left_arc = (h == s1 ? 1 : 0) + (in_buffer_tail(h) ? 1 : 0) + buffer_dependents(s0);
  }
  if (legal.right_arc) {
    const int s0 = stack.back();
    const int h = gold.head_of(s0);
    costs.right_arc = (in_buffer(h) ? 1 : 0) + buffer_dependents(s0);
  }
  if (legal.shift) {
    const int h = gold.head_of(b);
    int cost = 0;
    // Its head is lost if it sits on the stack below the top.
    for (std::size_t i = 0; i + 1 < stack.size(); ++i) cost += stack[i] == h ? 1 : 0;
    // Its dependents on the stack can no longer attach to it.
    for (int s : stack) {
      if (s != 0 && gold.head_of(s) == b) ++cost;
    }
    costs.shift = cost;
  }
  return costs;
}

std::vector<std::uint8_t> legal_mask(const ParserConfiguration& cfg, std::size_t labels) {
  const LegalSet legal = legal_transitions(cfg);
  std::vector<std::uint8_t> mask(transition_count(labels), 0);
  mask[0] = legal.shift;
  for (std::size_t l = 0; l < labels; ++l) {
    mask[1 + l] = legal.left_arc;
    mask[1 + labels + l] = legal.right_arc;
  }
  return mask;
}

std::vector<std::uint8_t> correct_transitions(const ParserConfiguration& cfg, const GoldTree& gold,
                                              std::size_t labels) {
  const TransitionCosts costs = transition_costs(cfg, gold);
  std::vector<std::uint8_t> mask(transition_count(labels), 0);
  mask[0] = costs.shift == 0;
  if (costs.left_arc == 0 || costs.right_arc == 0) {
    const std::size_t label = gold.label_of(cfg.stack().back());
    if (label < labels) {
      if (costs.left_arc == 0) mask[1 + label] = 1;
      if (costs.right_arc == 0) mask[1 + labels + label] = 1;
    }
  }
  return mask;
}

Transition static_oracle(const ParserConfiguration& cfg, const GoldTree& gold) {
  const LegalSet legal = legal_transitions(cfg);
  const auto& stack = cfg.stack();
  const int n = static_cast<int>(cfg.sentence_length());
  if (stack.size() >= 2 || (stack.size() == 1 && stack.back() != 0)) {
    const int s0 = stack.back();
    bool complete = true;
    for (int t = 1; t <= n && complete; ++t) {
      if (gold.head_of(t) == s0 && cfg.head_of(t) == -1) complete = false;
    }
    if (complete) {
      const int h = gold.head_of(s0);
      if (legal.left_arc && h == cfg.buffer_front()) return {TransitionKind::left_arc, gold.label_of(s0)};
      if (legal.right_arc && h == stack[stack.size() - 2]) return {TransitionKind::right_arc, gold.label_of(s0)};
    }
  }
  if (legal.shift) return {TransitionKind::shift, 0};
  // Only reachable off the static path; reduce whatever is left.
  return {TransitionKind::right_arc, gold.label_of(stack.back())};
}

}  // namespace jamoparse
