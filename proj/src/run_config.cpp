#include "tmprune/run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tmprune/error.hpp"
#include "tmprune/fingerprint.hpp"

namespace tmprune {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "'");
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config key '" + key + "': expected true or false");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> parse_fraction_list(const std::string& text) {
  std::vector<double> out;
  const std::string body = trim(text);
  if (body.empty()) return out;
  if (body.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(body);
    for (std::string piece; std::getline(ss, piece, ':');) {
      parts.push_back(parse_double("sweep", trim(piece)));
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      throw ConfigError("sweep must be start:stop:step with step > 0 and stop >= start");
    }
    const auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long i = 0; i <= steps; ++i) {
      // Round to 1e-12 so 0.05 * 3 prints as 0.15.
      out.push_back(std::round((parts[0] + static_cast<double>(i) * parts[2]) * 1e12) / 1e12);
    }
    return out;
  }
  std::stringstream ss(body);
  for (std::string piece; std::getline(ss, piece, ',');) {
    out.push_back(parse_double("fractions", trim(piece)));
  }
  return out;
}

void RunConfig::validate() const {
  model.validate();
  if (vocab_max_size == 0) throw ConfigError("vocab_max_size must be positive");
  if (epochs == 0) throw ConfigError("epochs must be >= 1");
  for (double f : prune_fractions) {
    if (!(f >= 0.0 && f <= 0.5)) {
      throw ConfigError("prune fraction " + format_double(f) + " outside [0, 0.5]");
    }
  }
  if (metric != "comprehensiveness" && metric != "sufficiency" && metric != "none") {
    throw ConfigError("metric must be comprehensiveness, sufficiency or none");
  }
  if (annotator != "all" && annotator != "1" && annotator != "2" && annotator != "3") {
    throw ConfigError("annotator must be 1, 2, 3 or all");
  }
  if (threads == 0) throw ConfigError("threads must be >= 1");
}

std::string RunConfig::to_text() const {
  std::ostringstream out;
  out << "train_path = \"" << train_path << "\"\n";
  out << "test_path = \"" << test_path << "\"\n";
  out << "vocab_max_size = " << vocab_max_size << '\n';
  out << "clauses_per_class = " << model.clauses_per_class << '\n';
  out << "num_states = " << model.num_states << '\n';
  out << "vote_clip_t = " << model.vote_clip_t << '\n';
  out << "specificity_s = " << format_double(model.specificity_s) << '\n';
  out << "epochs = " << epochs << '\n';
  out << "prune_fractions = ";
  for (std::size_t i = 0; i < prune_fractions.size(); ++i) {
    if (i) out << ", ";
    out << format_double(prune_fractions[i]);
  }
  out << '\n';
  out << "metric = \"" << metric << "\"\n";
  out << "annotator = \"" << annotator << "\"\n";
  out << "out_dir = \"" << out_dir << "\"\n";
  out << "seed = " << seed << '\n';
  out << "deterministic = " << (deterministic ? "true" : "false") << '\n';
  out << "threads = " << threads << '\n';
  return out.str();
}

std::uint64_t RunConfig::fingerprint() const {
  Fnv1a64 h;
  h.update(to_text());
  return h.digest();
}

void apply_config_text(RunConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    std::string body = line;
    // '#' inside a quoted value is kept.
    bool quoted = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '"') quoted = !quoted;
      if (body[i] == '#' && !quoted) {
        body.resize(i);
        break;
      }
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = unquote(trim(body.substr(eq + 1)));
    if (key == "train_path") {
      config.train_path = value;
    } else if (key == "test_path") {
      config.test_path = value;
    } else if (key == "vocab_max_size") {
      config.vocab_max_size = parse_number<std::size_t>(key, value);
    } else if (key == "clauses_per_class") {
      config.model.clauses_per_class = parse_number<std::size_t>(key, value);
    } else if (key == "num_states") {
      config.model.num_states = parse_number<std::size_t>(key, value);
    } else if (key == "vote_clip_t") {
      config.model.vote_clip_t = parse_number<int>(key, value);
    } else if (key == "specificity_s") {
      config.model.specificity_s = parse_double(key, value);
    } else if (key == "epochs") {
      config.epochs = parse_number<std::size_t>(key, value);
    } else if (key == "prune_fractions") {
      config.prune_fractions = parse_fraction_list(value);
    } else if (key == "metric") {
      config.metric = value;
    } else if (key == "annotator") {
      config.annotator = value;
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "deterministic") {
      config.deterministic = parse_bool(key, value);
    } else if (key == "threads") {
      config.threads = parse_number<std::size_t>(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str());
}

}  // namespace tmprune
