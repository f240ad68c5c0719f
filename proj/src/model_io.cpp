#include "tmprune/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <type_traits>

#include "tmprune/error.hpp"
#include "tmprune/fingerprint.hpp"

namespace tmprune {
namespace {

constexpr char kMagic[8] = {'T', 'M', 'P', 'R', 'U', 'N', 'E', '\0'};

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  using U = std::make_unsigned_t<T>;
  const U bits = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
}

template <typename T>
T get_le(const std::vector<std::uint8_t>& in, std::size_t offset) {
  using U = std::make_unsigned_t<T>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bits |= static_cast<U>(static_cast<U>(in[offset + i]) << (8 * i));
  }
  return static_cast<T>(bits);
}

std::uint32_t narrow(std::size_t value, const char* field) {
  if (value > 0xffffffffu) throw FormatError(std::string(field) + " does not fit in 32 bits");
  return static_cast<std::uint32_t>(value);
}

}  // namespace

std::vector<std::uint8_t> serialize_model(const Model& model) {
  const ModelConfig& cfg = model.config();
  std::vector<std::uint8_t> out;
  out.reserve(kModelHeaderBytes + model.states().size());
  for (char c : kMagic) out.push_back(static_cast<std::uint8_t>(c));
  put_le<std::uint32_t>(out, kModelFormatVersion);
  put_le<std::uint32_t>(out, narrow(cfg.num_classes, "num_classes"));
  put_le<std::uint32_t>(out, narrow(cfg.clauses_per_class, "clauses_per_class"));
  put_le<std::uint32_t>(out, narrow(model.vocab_size(), "vocab_size"));
  put_le<std::uint32_t>(out, narrow(cfg.num_states, "num_states"));
  put_le<std::int32_t>(out, cfg.vote_clip_t);
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(cfg.specificity_s));
  put_le<std::uint64_t>(out, model.vocab_fingerprint());
  out.insert(out.end(), model.states().begin(), model.states().end());
  return out;
}

Model deserialize_model(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kModelHeaderBytes) throw FormatError("model file truncated header");
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("not a model file (bad magic)");
  }
  const auto version = get_le<std::uint32_t>(bytes, 8);
  if (version != kModelFormatVersion) {
    throw FormatError("unsupported model format version " + std::to_string(version));
  }
  ModelConfig cfg;
  cfg.num_classes = get_le<std::uint32_t>(bytes, 12);
  cfg.clauses_per_class = get_le<std::uint32_t>(bytes, 16);
  const std::size_t vocab_size = get_le<std::uint32_t>(bytes, 20);
  cfg.num_states = get_le<std::uint32_t>(bytes, 24);
  cfg.vote_clip_t = get_le<std::int32_t>(bytes, 28);
  cfg.specificity_s = std::bit_cast<double>(get_le<std::uint64_t>(bytes, 32));
  cfg.seed = 0;
  const auto fingerprint = get_le<std::uint64_t>(bytes, 40);
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw FormatError(std::string("model header invalid: ") + e.what());
  }
  const std::size_t expected = cfg.total_clauses() * 2 * vocab_size;
  if (bytes.size() - kModelHeaderBytes != expected) {
    throw FormatError("model payload has " + std::to_string(bytes.size() - kModelHeaderBytes) +
                      " bytes, header implies " + std::to_string(expected));
  }
  std::vector<std::uint8_t> states(bytes.begin() + kModelHeaderBytes, bytes.end());
  try {
    return Model::from_states(cfg, vocab_size, fingerprint, std::move(states));
  } catch (const ConfigError& e) {
    throw FormatError(std::string("model header invalid: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  const auto bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write model file " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing model file " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize_model(bytes);
}

nlohmann::ordered_json model_to_json(const Model& model) {
  const ModelConfig& cfg = model.config();
  nlohmann::ordered_json j;
  j["format_version"] = kModelFormatVersion;
  j["num_classes"] = cfg.num_classes;
  j["clauses_per_class"] = cfg.clauses_per_class;
  j["vocab_size"] = model.vocab_size();
  j["num_states"] = cfg.num_states;
  j["vote_clip_t"] = cfg.vote_clip_t;
  j["specificity_s"] = cfg.specificity_s;
  j["vocab_fingerprint"] = fingerprint_hex(model.vocab_fingerprint());
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < model.num_clauses(); ++c) {
    const auto row = model.row(c);
    rows.push_back(std::vector<int>(row.begin(), row.end()));
  }
  j["states"] = std::move(rows);
  return j;
}

Model model_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("format_version").get<std::uint32_t>() != kModelFormatVersion) {
      throw FormatError("unsupported model format version");
    }
    ModelConfig cfg;
    cfg.num_classes = j.at("num_classes").get<std::size_t>();
    cfg.clauses_per_class = j.at("clauses_per_class").get<std::size_t>();
    cfg.num_states = j.at("num_states").get<std::size_t>();
    cfg.vote_clip_t = j.at("vote_clip_t").get<int>();
    cfg.specificity_s = j.at("specificity_s").get<double>();
    cfg.seed = 0;
    const auto vocab_size = j.at("vocab_size").get<std::size_t>();
    const auto fp = parse_fingerprint_hex(j.at("vocab_fingerprint").get<std::string>());
    if (!fp) throw FormatError("bad vocab_fingerprint");
    std::vector<std::uint8_t> states;
    for (const auto& row : j.at("states")) {
      if (row.size() != 2 * vocab_size) throw FormatError("state row has wrong width");
      for (const auto& v : row) {
        const int s = v.get<int>();
        if (s < 0 || s > 255) throw FormatError("state out of byte range");
        states.push_back(static_cast<std::uint8_t>(s));
      }
    }
    return Model::from_states(cfg, vocab_size, *fp, std::move(states));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model JSON: ") + e.what());
  } catch (const ConfigError& e) {
    throw FormatError(std::string("model JSON: ") + e.what());
  }
}

}  // namespace tmprune
