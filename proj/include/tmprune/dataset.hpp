#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tmprune/text.hpp"
#include "tmprune/tsetlin.hpp"

namespace tmprune {

struct Document {
  std::string text;
  std::vector<std::string> tokens;  // tokenize(text)
  std::size_t label = 0;
  // Human attention maps, one per annotator, each aligned with `tokens`.
  std::vector<std::vector<std::uint8_t>> hams;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Dataset {
  std::vector<Document> documents;
  // Index -> label string.
  std::vector<std::string> labels;
  // "train", "test-50", "test-100", "test-200" or any custom tag.
  std::string split = "custom";

  std::size_t annotator_count() const;  // minimum over documents; 0 if any lacks HAMs
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

enum class DatasetFormat { kJsonl, kCsv };

// From the file extension (.jsonl/.json -> jsonl, .csv -> csv).
DatasetFormat format_from_path(const std::filesystem::path& path);

// Builds a document from raw text; throws DataError when a HAM does not align
// with the token count or holds a value other than 0/1.
Document make_document(std::string text, std::size_t label,
                       std::vector<std::vector<std::uint8_t>> hams = {});

// Loads a dataset. With `known_labels` empty, labels are indexed in order of
// first appearance; otherwise each row's label must be one of them.
// Errors are DataError and name the 0-based row.
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                     const std::vector<std::string>& known_labels = {});

// Canonical form. JSONL rows: {"text":..,"label":..,"hams":[[..]]}, "hams"
// omitted when a document has none. CSV: header text,label,ham1..hamK with
// HAMs written as space-separated digits.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path,
                  DatasetFormat format);
std::string dataset_to_jsonl(const Dataset& dataset);
Dataset dataset_from_jsonl(const std::string& content,
                           const std::vector<std::string>& known_labels = {});

std::vector<LabeledBow> vectorize_dataset(const Dataset& dataset, const Vocabulary& vocab);

// Label list, one per line.
void save_labels(const std::vector<std::string>& labels, const std::filesystem::path& path);
std::vector<std::string> load_labels(const std::filesystem::path& path);

}  // namespace tmprune
