#pragma once

// Model persistence.
//
// Binary layout, all integers little-endian:
//
//   offset  size  field
//        0     8  magic "TMPRUNE\0"
//        8     4  format version (1)
//       12     4  num_classes
//       16     4  clauses_per_class
//       20     4  vocabulary size n
//       24     4  num_states
//       28     4  vote clip T (signed)
//       32     8  specificity s (IEEE-754 binary64)
//       40     8  vocabulary fingerprint
//       48     -  states, one byte each, row-major (clauses x 2n)
//
// The header carries no timestamps, so equal models serialize to equal bytes.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmprune/tsetlin.hpp"

namespace tmprune {

inline constexpr std::uint32_t kModelFormatVersion = 1;
inline constexpr std::size_t kModelHeaderBytes = 48;

std::vector<std::uint8_t> serialize_model(const Model& model);
// Throws FormatError on a bad magic, version, shape or truncated payload.
Model deserialize_model(const std::vector<std::uint8_t>& bytes);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

// Canonical JSON debug export: fixed key order, one array per clause row.
nlohmann::ordered_json model_to_json(const Model& model);
Model model_from_json(const nlohmann::ordered_json& json);

}  // namespace tmprune
