#include "jamoparse/hangul.hpp"

#include "jamoparse/errors.hpp"
#include "jamoparse/utf8.hpp"

namespace jamoparse::hangul {
namespace {

constexpr char32_t kCompatFirst = 0x3131;
constexpr char32_t kEmptyDisplay = 0x2205;  // ∅
constexpr char32_t kHeadConjoiningBase = 0x1100;
constexpr char32_t kVowelConjoiningBase = 0x1161;
constexpr char32_t kTailConjoiningBase = 0x11A7;  // tail index T >= 1 maps to base + T
constexpr int kVowelLetterBase = 30;

constexpr std::array<Letter, kHeadCount> kHeads = {
    0, 1, 3, 6, 7, 8, 16, 17, 18, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29};

constexpr std::array<Letter, kTailCount> kTails = {
    0, 1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14,
    15, 16, 17, 19, 20, 21, 22, 23, 25, 26, 27, 28, 29};

constexpr std::array<Letter, kVowelCount> make_vowels() {
  std::array<Letter, kVowelCount> out{};
  for (int i = 0; i < kVowelCount; ++i) out[i] = static_cast<Letter>(kVowelLetterBase + i);
  return out;
}
constexpr std::array<Letter, kVowelCount> kVowels = make_vowels();

static_assert(kVowelLetterBase + kVowelCount == kLetterCount);

[[noreturn]] void invalid(const char* role, int index) {
  throw InvalidLetterError(std::string("invalid ") + role + " index " + std::to_string(index));
}

}  // namespace

std::optional<JamoTriple> decompose(char32_t c) noexcept {
  if (!is_syllable(c)) return std::nullopt;
  const int offset = static_cast<int>(c - kSyllableFirst);
  const int tail = offset % kTailSlotCount;
  const int head = offset / (kVowelCount * kTailSlotCount);
  const int vowel = ((offset - tail) % (kVowelCount * kTailSlotCount)) / kTailSlotCount;
  return JamoTriple{head, vowel, tail};
}

char32_t compose(const JamoTriple& t) {
  if (t.head < 0 || t.head >= kHeadCount) invalid("head", t.head);
  if (t.vowel < 0 || t.vowel >= kVowelCount) invalid("vowel", t.vowel);
  if (t.tail < 0 || t.tail >= kTailSlotCount) invalid("tail", t.tail);
  return kSyllableFirst +
         static_cast<char32_t>(t.head * kVowelCount * kTailSlotCount + t.vowel * kTailSlotCount + t.tail);
}

Letter canonicalize(PositionalJamo jamo) {
  switch (jamo.role) {
    case Role::head:
      if (jamo.index < 0 || jamo.index >= kHeadCount) invalid("head", jamo.index);
      return kHeads[jamo.index];
    case Role::vowel:
      if (jamo.index < 0 || jamo.index >= kVowelCount) invalid("vowel", jamo.index);
      return kVowels[jamo.index];
    case Role::tail:
      if (jamo.index < 0 || jamo.index >= kTailSlotCount) invalid("tail", jamo.index);
      return jamo.index == 0 ? kEmptyLetter : kTails[jamo.index - 1];
  }
  invalid("letter", jamo.index);
}

Letter canonicalize(Letter letter) {
  if (letter > kEmptyLetter) invalid("letter", letter);
  return letter;
}

const std::array<Letter, kHeadCount>& head_letters() noexcept { return kHeads; }
const std::array<Letter, kVowelCount>& vowel_letters() noexcept { return kVowels; }
const std::array<Letter, kTailCount>& tail_letters() noexcept { return kTails; }

char32_t display_code_point(Letter letter) {
  if (letter == kEmptyLetter) return kEmptyDisplay;
  if (letter > kEmptyLetter) invalid("letter", letter);
  return kCompatFirst + letter;
}

std::string display(Letter letter) { return utf8::encode(display_code_point(letter)); }

std::string display(PositionalJamo jamo) { return display(canonicalize(jamo)); }

std::optional<char32_t> conjoining_code_point(PositionalJamo jamo) {
  canonicalize(jamo);  // validates
  switch (jamo.role) {
    case Role::head:
      return kHeadConjoiningBase + static_cast<char32_t>(jamo.index);
    case Role::vowel:
      return kVowelConjoiningBase + static_cast<char32_t>(jamo.index);
    case Role::tail:
      if (jamo.index == 0) return std::nullopt;
      return kTailConjoiningBase + static_cast<char32_t>(jamo.index);
  }
  return std::nullopt;
}

std::vector<DecomposedChar> decompose_text(std::u32string_view text) {
  std::vector<DecomposedChar> out;
  out.reserve(text.size());
  for (char32_t c : text) out.push_back({c, decompose(c)});
  return out;
}

std::vector<DecomposedChar> decompose_text(std::string_view utf8_text) {
  return decompose_text(utf8::decode(utf8_text));
}

}  // namespace jamoparse::hangul
