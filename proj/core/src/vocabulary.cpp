#include "jamoparse/vocabulary.hpp"

#include <stdexcept>

#include "jamoparse/errors.hpp"

namespace jamoparse {
namespace {

std::vector<std::string> reserved_units(UnitKind kind) {
  switch (kind) {
    case UnitKind::jamo: {
      std::vector<std::string> out = {"<unk>", "<empty>"};
      for (int l = 0; l < hangul::kLetterCount; ++l) out.push_back(hangul::display(static_cast<hangul::Letter>(l)));
      return out;
    }
    case UnitKind::character:
    case UnitKind::word:
      return {"<unk>"};
    case UnitKind::label:
      return {};
  }
  return {};
}

}  // namespace

std::string to_string(UnitKind kind) {
  switch (kind) {
    case UnitKind::jamo:
      return "jamo";
    case UnitKind::character:
      return "char";
    case UnitKind::word:
      return "word";
    case UnitKind::label:
      return "label";
  }
  return "unknown";
}

Vocabulary::Vocabulary(UnitKind kind) : kind_(kind) {
  const auto reserved = reserved_units(kind);
  entries_.reserve(reserved.size());
  for (const auto& u : reserved) entries_.push_back({u, 0});
  // Letters are reserved slots but still looked up by their shape.
  reserved_ = kind == UnitKind::jamo ? kFirstLetter : reserved.size();
  for (std::size_t id = reserved_; id < entries_.size(); ++id) index_.emplace(entries_[id].unit, id);
}

Vocabulary Vocabulary::restore(UnitKind kind, std::vector<Entry> entries) {
  Vocabulary v(kind);
  if (entries.size() < v.entries_.size()) throw CorruptFileError(to_string(kind) + " vocabulary is truncated");
  for (std::size_t i = 0; i < v.entries_.size(); ++i) {
    if (entries[i].unit != v.entries_[i].unit) {
      throw CorruptFileError(to_string(kind) + " vocabulary has unexpected reserved entry " + entries[i].unit);
    }
  }
  const std::size_t fixed = v.entries_.size();
  v.entries_ = std::move(entries);
  for (std::size_t id = fixed; id < v.entries_.size(); ++id) {
    if (!v.index_.emplace(v.entries_[id].unit, id).second) {
      throw CorruptFileError(to_string(kind) + " vocabulary repeats unit " + v.entries_[id].unit);
    }
  }
  return v;
}

std::size_t Vocabulary::add(const std::string& unit, std::uint64_t count) {
  auto [it, inserted] = index_.emplace(unit, entries_.size());
  if (inserted) entries_.push_back({unit, 0});
  entries_[it->second].count += count;
  return it->second;
}

std::optional<std::size_t> Vocabulary::find(const std::string& unit) const {
  auto it = index_.find(unit);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::lookup(const std::string& unit) const {
  if (auto id = find(unit)) return *id;
  if (!has_unk()) throw std::out_of_range("unknown " + to_string(kind_) + ": " + unit);
  return kUnk;
}

std::size_t Vocabulary::letter_id(hangul::Letter letter) const {
  if (kind_ != UnitKind::jamo) throw std::logic_error("letter_id on a non-jamo vocabulary");
  if (letter == hangul::kEmptyLetter) return kEmptyLetter;
  return kFirstLetter + hangul::canonicalize(letter);
}

}  // namespace jamoparse
