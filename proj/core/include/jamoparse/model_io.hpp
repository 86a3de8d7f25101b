#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "jamoparse/parser.hpp"

namespace jamoparse {

inline constexpr std::uint32_t kModelFormatVersion = 1;

// Binary model layout (little-endian; see docs/model_format.md):
//   magic "JAMOPRSR", u32 version, config, four vocabularies
//   (jamo, char, word, label), parameter tensors as f64, u32 CRC-32 of
//   everything before it.
std::string serialize_model(const TrainedModel& model);

// Throws VersionMismatchError for an unknown version field and
// CorruptFileError for a bad magic, checksum, or truncated/garbled payload.
TrainedModel deserialize_model(std::string_view bytes);

// Adds IoError for filesystem failures.
void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace jamoparse
