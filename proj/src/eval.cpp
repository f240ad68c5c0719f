#include "tmprune/eval.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tmprune/error.hpp"
#include "tmprune/simd.hpp"

namespace tmprune {
namespace {

double mean_abs_diff(std::span<const double> ham, std::span<const double> mam) {
  if (ham.size() != mam.size()) {
    throw std::invalid_argument("attention maps differ in length (" + std::to_string(ham.size()) +
                                " vs " + std::to_string(mam.size()) + ")");
  }
  if (ham.empty()) throw std::invalid_argument("attention maps are empty");
  return simd::abs_diff_sum(ham, mam) / static_cast<double>(ham.size());
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string format_fraction(const std::optional<double>& f) {
  if (!f) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", *f);
  return buf;
}

}  // namespace

std::string_view metric_name(SimilarityMetric metric) {
  return metric == SimilarityMetric::kComprehensiveness ? "comprehensiveness" : "sufficiency";
}

SimilarityMetric parse_metric(std::string_view name) {
  if (name == "comprehensiveness") return SimilarityMetric::kComprehensiveness;
  if (name == "sufficiency") return SimilarityMetric::kSufficiency;
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

double pair_sim(std::span<const double> ham, std::span<const double> mam) {
  return 1.0 - mean_abs_diff(ham, mam);
}

double pair_sim_sufficiency(std::span<const double> ham, std::span<const double> mam) {
  return mean_abs_diff(ham, mam);
}

double pair_similarity(SimilarityMetric metric, std::span<const double> ham,
                       std::span<const double> mam) {
  return metric == SimilarityMetric::kComprehensiveness ? pair_sim(ham, mam)
                                                        : pair_sim_sufficiency(ham, mam);
}

double sim_measure(std::span<const AttentionMap> hams, std::span<const AttentionMap> maps,
                   SimilarityMetric metric) {
  if (hams.size() != maps.size()) {
    throw std::invalid_argument("sim_measure: " + std::to_string(hams.size()) +
                                " documents but " + std::to_string(maps.size()) + " maps");
  }
  if (hams.empty()) throw std::invalid_argument("sim_measure: no documents");
  double total = 0.0;
  for (std::size_t i = 0; i < hams.size(); ++i) {
    total += pair_similarity(metric, hams[i].scores, maps[i].scores);
  }
  return total / static_cast<double>(hams.size());
}

double accuracy(const Model& model, std::span<const LabeledBow> data, std::size_t threads) {
  if (data.empty()) throw DataError("accuracy of an empty dataset is undefined");
  std::vector<std::uint8_t> correct(data.size(), 0);
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, data.size()));
  auto run = [&](std::size_t start, std::size_t step) {
    for (std::size_t i = start; i < data.size(); i += step) {
      correct[i] = predict(model, data[i].x) == data[i].label ? 1 : 0;
    }
  };
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
  }
  std::size_t hits = 0;
  for (auto c : correct) hits += c;
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

SimilarityReport pairwise_table(std::span<const NamedMaps> annotators,
                                std::span<const NamedMaps> machine, SimilarityMetric metric,
                                std::string dataset_tag) {
  if (annotators.empty()) throw std::invalid_argument("pairwise_table: no annotators");
  if (machine.empty()) throw std::invalid_argument("pairwise_table: no machine variants");
  SimilarityReport report;
  report.metric = metric;
  report.dataset = std::move(dataset_tag);
  for (const auto& a : annotators) report.annotators.push_back(a.name);
  auto add_row = [&](const NamedMaps& row, bool human) {
    report.rows.push_back(row.name);
    report.row_prune_fraction.push_back(human ? std::nullopt : row.prune_fraction);
    report.row_is_human.push_back(human);
    std::vector<double> values;
    for (const auto& a : annotators) values.push_back(sim_measure(a.maps, row.maps, metric));
    report.values.push_back(std::move(values));
  };
  for (const auto& a : annotators) add_row(a, true);
  for (const auto& m : machine) add_row(m, false);
  return report;
}

std::string SimilarityReport::to_csv() const {
  std::ostringstream out;
  out << "model_variant,prune_fraction,annotator,metric,sim_measure,dataset\n";
  const std::string base(metric_name(metric));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t a = 0; a < annotators.size(); ++a) {
      const double v = values[r][a];
      out << rows[r] << ',' << format_fraction(row_prune_fraction[r]) << ',' << annotators[a]
          << ',' << base << ',' << format_value(v) << ',' << dataset << '\n';
      if (metric == SimilarityMetric::kSufficiency) {
        out << rows[r] << ',' << format_fraction(row_prune_fraction[r]) << ',' << annotators[a]
            << ",sufficiency_complement," << format_value(1.0 - v) << ',' << dataset << '\n';
      }
    }
  }
  return out.str();
}

nlohmann::ordered_json SimilarityReport::to_json() const {
  nlohmann::ordered_json j;
  j["metric"] = metric_name(metric);
  j["dataset"] = dataset;
  j["annotators"] = annotators;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t a = 0; a < annotators.size(); ++a) {
      nlohmann::ordered_json e;
      e["model_variant"] = rows[r];
      e["prune_fraction"] = row_prune_fraction[r] ? nlohmann::ordered_json(*row_prune_fraction[r])
                                                  : nlohmann::ordered_json(nullptr);
      e["annotator"] = annotators[a];
      e["metric"] = metric_name(metric);
      e["sim_measure"] = values[r][a];
      if (metric == SimilarityMetric::kSufficiency) {
        e["sufficiency_complement"] = 1.0 - values[r][a];
      }
      e["dataset"] = dataset;
      entries.push_back(std::move(e));
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

std::string SimilarityReport::to_text() const {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-8s %-20s", "", "");
  out << buf;
  for (const auto& a : annotators) {
    std::snprintf(buf, sizeof(buf), " %8s", a.c_str());
    out << buf;
  }
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::snprintf(buf, sizeof(buf), "%-8s %-20s", row_is_human[r] ? "HAM" : "TAM",
                  rows[r].c_str());
    out << buf;
    for (double v : values[r]) {
      std::snprintf(buf, sizeof(buf), " %8.3f", v);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace tmprune
