#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace jamoparse {

enum class TransitionKind : std::uint8_t { shift, left_arc, right_arc };

struct Transition {
  TransitionKind kind = TransitionKind::shift;
  std::size_t label = 0;  // ignored for shift

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Score-vector layout: 0 = SHIFT, 1..L = LEFT-ARC(l), L+1..2L = RIGHT-ARC(l).
inline std::size_t transition_count(std::size_t labels) noexcept { return 1 + 2 * labels; }
std::size_t transition_index(Transition t, std::size_t labels);
Transition transition_at(std::size_t index, std::size_t labels);
std::string to_string(Transition t);

struct Arc {
  int head;
  int dependent;
  std::size_t label;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Arc-hybrid configuration. Token 0 is the artificial ROOT and starts alone
// on the stack; tokens 1..n start in the buffer. The buffer is always a
// suffix of the sentence, so it is stored as its front position.
class ParserConfiguration {
 public:
  explicit ParserConfiguration(std::size_t sentence_length);

  std::size_t sentence_length() const noexcept { return n_; }
  const std::vector<int>& stack() const noexcept { return stack_; }
  bool buffer_empty() const noexcept { return front_ > static_cast<int>(n_); }
  std::size_t buffer_size() const noexcept { return buffer_empty() ? 0 : n_ - front_ + 1; }
  // Requires a non-empty buffer.
  int buffer_front() const noexcept { return front_; }
  std::vector<int> buffer() const;
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  // Assigned head of token k (1-based), or -1.
  int head_of(int token) const { return heads_.at(token); }
  std::size_t label_of(int token) const { return labels_.at(token); }
  std::size_t transitions_applied() const noexcept { return applied_; }

  // Empty buffer and only ROOT left on the stack.
  bool terminal() const noexcept { return buffer_empty() && stack_.size() == 1; }

  // Throws std::logic_error when `t` is not legal here.
  void apply(Transition t);

 private:
  std::size_t n_;
  std::vector<int> stack_;
  int front_ = 1;
  std::vector<Arc> arcs_;
  std::vector<int> heads_;
  std::vector<std::size_t> labels_;
  std::size_t applied_ = 0;
};

struct LegalSet {
  bool shift = false;
  bool left_arc = false;
  bool right_arc = false;

  bool allows(TransitionKind kind) const noexcept;
  bool empty() const noexcept { return !shift && !left_arc && !right_arc; }
  friend bool operator==(const LegalSet&, const LegalSet&) = default;
};

// SHIFT: buffer non-empty. LEFT-ARC: stack top is not ROOT and buffer
// non-empty. RIGHT-ARC: at least three stack items, or exactly two with an
// empty buffer, so ROOT ends up with exactly one dependent.
LegalSet legal_transitions(const ParserConfiguration& cfg);

// Gold annotation in the same 1-based numbering as ParserConfiguration:
// heads[k] / labels[k] describe token k+1.
struct GoldTree {
  std::vector<int> heads;
  std::vector<std::size_t> labels;

  int head_of(int token) const { return heads.at(token - 1); }
  std::size_t label_of(int token) const { return labels.at(token - 1); }
};

inline constexpr int kIllegalCost = std::numeric_limits<int>::max();

// Number of gold arcs that become unreachable by taking each transition
// (arc-hybrid dynamic oracle). Illegal transitions get kIllegalCost.
struct TransitionCosts {
  int shift = kIllegalCost;
  int left_arc = kIllegalCost;
  int right_arc = kIllegalCost;

  int of(TransitionKind kind) const noexcept;
};

TransitionCosts transition_costs(const ParserConfiguration& cfg, const GoldTree& gold);

// Zero-cost transitions with the gold label of the stack top on arc moves.
// Indexed like the score vector.
std::vector<std::uint8_t> correct_transitions(const ParserConfiguration& cfg, const GoldTree& gold,
                                              std::size_t labels);
std::vector<std::uint8_t> legal_mask(const ParserConfiguration& cfg, std::size_t labels);

// The canonical static-oracle move: reduce the stack top as soon as its gold
// head is adjacent and all its gold dependents are attached, else shift.
// Requires a configuration reachable along the static path of a projective
// gold tree.
Transition static_oracle(const ParserConfiguration& cfg, const GoldTree& gold);

}  // namespace jamoparse
