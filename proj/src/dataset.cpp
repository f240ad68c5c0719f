#include "tmprune/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tmprune/error.hpp"

namespace tmprune {
namespace {

std::string row_prefix(std::size_t row) { return "row " + std::to_string(row) + ": "; }

class LabelIndex {
 public:
  explicit LabelIndex(const std::vector<std::string>& known)
      : labels_(known), fixed_(!known.empty()) {}

  std::size_t resolve(const std::string& label, std::size_t row) {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it != labels_.end()) return static_cast<std::size_t>(it - labels_.begin());
    if (fixed_) throw DataError(row_prefix(row) + "unknown label '" + label + "'");
    labels_.push_back(label);
    return labels_.size() - 1;
  }

  std::vector<std::string> take() { return std::move(labels_); }

 private:
  std::vector<std::string> labels_;
  bool fixed_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::uint8_t> parse_ham_digits(const std::string& field, std::size_t row) {
  std::vector<std::uint8_t> ham;
  std::istringstream in(field);
  for (std::string tok; in >> tok;) {
    if (tok == "0") {
      ham.push_back(0);
    } else if (tok == "1") {
      ham.push_back(1);
    } else {
      throw DataError(row_prefix(row) + "HAM entry '" + tok + "' is not 0 or 1");
    }
  }
  return ham;
}

std::string ham_digits(const std::vector<std::uint8_t>& ham) {
  std::string out;
  for (std::size_t i = 0; i < ham.size(); ++i) {
    if (i) out += ' ';
    out += ham[i] ? '1' : '0';
  }
  return out;
}

// RFC 4180 records; quoted fields may contain separators, quotes ("") and
// newlines.
std::vector<std::vector<std::string>> parse_csv(const std::string& content) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < content.size() && content[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
      if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
      record.clear();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) throw DataError("unterminated quoted CSV field");
  if (field_started || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::string csv_quote(const std::string& field) {
  const bool needs = field.find_first_of(",\"\n\r") != std::string::npos || field.empty() ||
                     field.front() == ' ' || field.back() == ' ';
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Dataset load_csv(const std::string& content, const std::vector<std::string>& known_labels) {
  const auto records = parse_csv(content);
  if (records.empty()) throw DataError("CSV dataset has no header row");
  const auto& header = records.front();
  if (header.size() < 2 || header[0] != "text" || header[1] != "label") {
    throw DataError("CSV header must start with text,label");
  }
  const std::size_t ham_columns = header.size() - 2;
  LabelIndex labels(known_labels);
  Dataset ds;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const std::size_t row = r - 1;
    const auto& rec = records[r];
    if (rec.size() != header.size()) {
      throw DataError(row_prefix(row) + "expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(rec.size()));
    }
    std::vector<std::vector<std::uint8_t>> hams;
    for (std::size_t h = 0; h < ham_columns; ++h) hams.push_back(parse_ham_digits(rec[2 + h], row));
    const std::size_t label = labels.resolve(rec[1], row);
    try {
      ds.documents.push_back(make_document(rec[0], label, std::move(hams)));
    } catch (const DataError& e) {
      throw DataError(row_prefix(row) + e.what());
    }
  }
  ds.labels = labels.take();
  return ds;
}

}  // namespace

std::size_t Dataset::annotator_count() const {
  if (documents.empty()) return 0;
  std::size_t count = documents.front().hams.size();
  for (const auto& d : documents) count = std::min(count, d.hams.size());
  return count;
}

DatasetFormat format_from_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".csv") return DatasetFormat::kCsv;
  if (ext == ".jsonl" || ext == ".json") return DatasetFormat::kJsonl;
  throw ConfigError("cannot infer dataset format from '" + path.string() + "'");
}

Document make_document(std::string text, std::size_t label,
                       std::vector<std::vector<std::uint8_t>> hams) {
  Document doc;
  doc.tokens = tokenize(text);
  doc.text = std::move(text);
  doc.label = label;
  for (std::size_t h = 0; h < hams.size(); ++h) {
    if (hams[h].size() != doc.tokens.size()) {
      throw DataError("HAM " + std::to_string(h + 1) + " has length " +
                      std::to_string(hams[h].size()) + " but the text has " +
                      std::to_string(doc.tokens.size()) + " tokens");
    }
    for (std::uint8_t v : hams[h]) {
      if (v > 1) throw DataError("HAM " + std::to_string(h + 1) + " holds a value other than 0/1");
    }
  }
  doc.hams = std::move(hams);
  return doc;
}

Dataset dataset_from_jsonl(const std::string& content,
                           const std::vector<std::string>& known_labels) {
  LabelIndex labels(known_labels);
  Dataset ds;
  std::istringstream in(content);
  std::size_t row = 0;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(row_prefix(row) + "malformed JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("text") || !j["text"].is_string() ||
        !j.contains("label") || !j["label"].is_string()) {
      throw DataError(row_prefix(row) + "expected an object with string fields text and label");
    }
    std::vector<std::vector<std::uint8_t>> hams;
    if (j.contains("hams")) {
      if (!j["hams"].is_array()) throw DataError(row_prefix(row) + "hams must be an array");
      for (const auto& ham : j["hams"]) {
        if (!ham.is_array()) throw DataError(row_prefix(row) + "each HAM must be an array");
        std::vector<std::uint8_t> values;
        for (const auto& v : ham) {
          if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
            throw DataError(row_prefix(row) + "HAM entries must be 0 or 1");
          }
          values.push_back(static_cast<std::uint8_t>(v.get<int>()));
        }
        hams.push_back(std::move(values));
      }
    }
    const std::size_t label = labels.resolve(j["label"].get<std::string>(), row);
    try {
      ds.documents.push_back(make_document(j["text"].get<std::string>(), label, std::move(hams)));
    } catch (const DataError& e) {
      throw DataError(row_prefix(row) + e.what());
    }
    ++row;
  }
  ds.labels = labels.take();
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                     const std::vector<std::string>& known_labels) {
  const std::string content = read_file(path);
  Dataset ds = format == DatasetFormat::kJsonl ? dataset_from_jsonl(content, known_labels)
                                               : load_csv(content, known_labels);
  ds.split = path.stem().string();
  return ds;
}

std::string dataset_to_jsonl(const Dataset& dataset) {
  std::string out;
  for (const auto& doc : dataset.documents) {
    nlohmann::ordered_json j;
    j["text"] = doc.text;
    j["label"] = dataset.labels.at(doc.label);
    if (!doc.hams.empty()) j["hams"] = doc.hams;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path,
                  DatasetFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write dataset " + path.string());
  if (format == DatasetFormat::kJsonl) {
    out << dataset_to_jsonl(dataset);
    return;
  }
  const std::size_t hams = dataset.annotator_count();
  out << "text,label";
  for (std::size_t h = 0; h < hams; ++h) out << ",ham" << (h + 1);
  out << '\n';
  for (const auto& doc : dataset.documents) {
    out << csv_quote(doc.text) << ',' << csv_quote(dataset.labels.at(doc.label));
    for (std::size_t h = 0; h < hams; ++h) out << ',' << csv_quote(ham_digits(doc.hams[h]));
    out << '\n';
  }
}

std::vector<LabeledBow> vectorize_dataset(const Dataset& dataset, const Vocabulary& vocab) {
  std::vector<LabeledBow> out;
  out.reserve(dataset.documents.size());
  for (const auto& doc : dataset.documents) out.push_back({vectorize(doc.tokens, vocab), doc.label});
  return out;
}

void save_labels(const std::vector<std::string>& labels, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write labels " + path.string());
  for (const auto& l : labels) out << l << '\n';
}

std::vector<std::string> load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open labels " + path.string());
  std::vector<std::string> labels;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) labels.push_back(line);
  }
  return labels;
}

}  // namespace tmprune
