#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jamoparse::hangul {

// Precomposed syllable block U+AC00..U+D7A3.
inline constexpr char32_t kSyllableFirst = 0xAC00;
inline constexpr char32_t kSyllableLast = 0xD7A3;

inline constexpr int kHeadCount = 19;
inline constexpr int kVowelCount = 21;
inline constexpr int kTailCount = 27;       // non-empty tails
inline constexpr int kTailSlotCount = 28;   // tails including the empty slot
inline constexpr int kLetterCount = 51;
inline constexpr int kSyllableCount = kHeadCount * kVowelCount * kTailSlotCount;

enum class Role : std::uint8_t { head, vowel, tail };

// A letter identified by its slot. Tail index 0 is the empty tail.
struct PositionalJamo {
  Role role;
  int index;

  friend bool operator==(const PositionalJamo&, const PositionalJamo&) = default;
};

// Position-merged letter id in [0, 51), ordered like the compatibility jamo
// block U+3131..U+3163. kEmptyLetter denotes the empty tail.
using Letter = std::uint8_t;
inline constexpr Letter kEmptyLetter = kLetterCount;

struct JamoTriple {
  int head = 0;   // [0, 19)
  int vowel = 0;  // [0, 21)
  int tail = 0;   // [0, 28), 0 = empty

  bool has_tail() const noexcept { return tail != 0; }
  PositionalJamo head_jamo() const noexcept { return {Role::head, head}; }
  PositionalJamo vowel_jamo() const noexcept { return {Role::vowel, vowel}; }
  PositionalJamo tail_jamo() const noexcept { return {Role::tail, tail}; }

  friend bool operator==(const JamoTriple&, const JamoTriple&) = default;
};

constexpr bool is_syllable(char32_t c) noexcept {
  return c >= kSyllableFirst && c <= kSyllableLast;
}

// std::nullopt means the character is not a precomposed syllable and should
// be treated as an atomic unit.
std::optional<JamoTriple> decompose(char32_t c) noexcept;

// Throws InvalidLetterError when any index is outside its role's range.
char32_t compose(const JamoTriple& triple);

// Throws InvalidLetterError on out-of-range input. Tail index 0 maps to
// kEmptyLetter.
Letter canonicalize(PositionalJamo jamo);

// Idempotent form on already-canonical ids (including kEmptyLetter).
Letter canonicalize(Letter letter);

// Letters playing each role, as canonical ids.
const std::array<Letter, kHeadCount>& head_letters() noexcept;
const std::array<Letter, kVowelCount>& vowel_letters() noexcept;
const std::array<Letter, kTailCount>& tail_letters() noexcept;

// Compatibility-jamo display code point (U+3131..U+3163); U+2205 for the
// empty letter.
char32_t display_code_point(Letter letter);
std::string display(Letter letter);
std::string display(PositionalJamo jamo);

// Positional conjoining jamo code points (U+1100.., U+1161.., U+11A8..).
// Returns std::nullopt for the empty tail.
std::optional<char32_t> conjoining_code_point(PositionalJamo jamo);

// One entry per input scalar value, in order.
struct DecomposedChar {
  char32_t ch;
  std::optional<JamoTriple> jamo;

  bool atomic() const noexcept { return !jamo.has_value(); }
};

std::vector<DecomposedChar> decompose_text(std::u32string_view text);
std::vector<DecomposedChar> decompose_text(std::string_view utf8_text);

}  // namespace jamoparse::hangul
