#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "jamoparse/hangul.hpp"

namespace jamoparse {

enum class UnitKind : std::uint8_t { jamo, character, word, label };

std::string to_string(UnitKind kind);

// Dense string -> id map. Ids are contiguous from 0. Reserved entries come
// first and are never reachable through find():
//   jamo:       0 = <unk>, 1 = <empty> (the empty tail), 2..52 = the 51
//               canonical letters keyed by their compatibility-jamo shape
//   character:  0 = <unk>
//   word:       0 = <unk>
//   label:      no reserved entries
// Atomic characters at the jamo tier share the map with letters, so a
// free-standing compatibility jamo (e.g. the ㅎ of ㅎㅎㅎ) resolves to the
// same id as that letter inside a syllable.
class Vocabulary {
 public:
  static constexpr std::size_t kUnk = 0;
  static constexpr std::size_t kEmptyLetter = 1;
  static constexpr std::size_t kFirstLetter = 2;

  struct Entry {
    std::string unit;
    std::uint64_t count = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  explicit Vocabulary(UnitKind kind = UnitKind::word);

  // Rebuilds a vocabulary from serialized entries. Throws CorruptFileError
  // if the reserved prefix does not match `kind`.
  static Vocabulary restore(UnitKind kind, std::vector<Entry> entries);

  UnitKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t reserved_count() const noexcept { return reserved_; }
  bool has_unk() const noexcept { return kind_ != UnitKind::label; }

  // Adds `unit` if new and bumps its count; returns its id.
  std::size_t add(const std::string& unit, std::uint64_t count = 1);
  std::optional<std::size_t> find(const std::string& unit) const;
  // Unknown units map to kUnk. Throws std::out_of_range for the label kind.
  std::size_t lookup(const std::string& unit) const;

  const std::string& unit(std::size_t id) const { return entries_.at(id).unit; }
  std::uint64_t count(std::size_t id) const { return entries_.at(id).count; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  // Jamo kind only.
  std::size_t letter_id(hangul::Letter letter) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.kind_ == b.kind_ && a.entries_ == b.entries_;
  }

 private:
  UnitKind kind_;
  std::size_t reserved_ = 0;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Vocabularies {
  Vocabulary jamo{UnitKind::jamo};
  Vocabulary chars{UnitKind::character};
  Vocabulary words{UnitKind::word};

  friend bool operator==(const Vocabularies&, const Vocabularies&) = default;
};

}  // namespace jamoparse
