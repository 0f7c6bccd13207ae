#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entvae/qstate.hpp"

// Builds, balances, projects and serializes the labeled measurement
// datasets used for training and testing. Datasets are immutable value
// types, safe to share across threads.
namespace entvae::data {

enum class MeasurementSubset { Tomographic15, Correlated9, Local6 };

std::size_t subset_width(MeasurementSubset s);
std::size_t subset_offset(MeasurementSubset s);  // first column in canonical order
const char* subset_name(MeasurementSubset s);    // "full" / "correlated" / "local"
std::optional<MeasurementSubset> subset_from_name(std::string_view name);
std::vector<std::string> subset_column_names(MeasurementSubset s);

struct Sample {
  std::vector<double> features;
  qstate::EntanglementLabel label = qstate::EntanglementLabel::Separable;
};

struct DatasetMetadata {
  std::uint64_t seed = 0;
  std::string ensemble = "ginibre";
  bool balanced = false;
  std::string timestamp;  // informational only, never serialized to the sidecar
};

struct LabeledDataset {
  std::vector<Sample> samples;
  MeasurementSubset subset = MeasurementSubset::Tomographic15;
  DatasetMetadata metadata;

  std::size_t size() const { return samples.size(); }
  std::size_t feature_width() const { return subset_width(subset); }
};

// n fresh Ginibre states measured in the canonical order and PPT-labeled.
// Per-sample substreams are keyed by (seed, sample index), so the result
// is fully determined by (n, seed, balanced). Balanced mode walks the
// candidate stream in index order and rejection-samples the
// over-represented class until the counts differ by at most one.
LabeledDataset generate(std::size_t n, std::uint64_t seed, bool balanced);

// Column selection onto a subset. Only a Tomographic15 dataset may be
// projected; labels and row order are unchanged.
LabeledDataset project(const LabeledDataset& ds, MeasurementSubset subset);

// CSV with a header row (label first, then the subset's column names) and
// 17-significant-digit values, so load(save(ds)) is exact. The metadata
// travels in a JSON sidecar at <path>.json.
void save_csv(const LabeledDataset& ds, const std::filesystem::path& path);
LabeledDataset load_csv(const std::filesystem::path& path);

// (separable, entangled) counts.
std::pair<std::size_t, std::size_t> class_counts(const LabeledDataset& ds);

}  // namespace entvae::data
