#include "entvae/dataset.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "entvae/io_util.hpp"
#include "entvae/rng.hpp"

namespace entvae::data {

namespace {

using qstate::EntanglementLabel;

std::string now_utc_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Sample make_sample(std::uint64_t seed, std::uint64_t index) {
  rng::Stream stream(seed, rng::kDataStream, index);
  const qstate::DensityMatrix rho = qstate::random_density_matrix(stream);
  const qstate::MeasurementVector m = qstate::pauli_expectations(rho);
  Sample s;
  s.features.assign(m.values.begin(), m.values.end());
  s.label = qstate::ppt_label(rho);
  return s;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& column, const std::string& what) {
  throw std::runtime_error(path.string() + ": line " + std::to_string(line) +
                           ", column " + column + ": " + what);
}

}  // namespace

std::size_t subset_width(MeasurementSubset s) {
  switch (s) {
    case MeasurementSubset::Tomographic15: return 15;
    case MeasurementSubset::Correlated9: return 9;
    case MeasurementSubset::Local6: return 6;
  }
  throw std::logic_error("subset_width: bad enum");
}

std::size_t subset_offset(MeasurementSubset s) {
  return s == MeasurementSubset::Correlated9 ? 6 : 0;
}

const char* subset_name(MeasurementSubset s) {
  switch (s) {
    case MeasurementSubset::Tomographic15: return "full";
    case MeasurementSubset::Correlated9: return "correlated";
    case MeasurementSubset::Local6: return "local";
  }
  throw std::logic_error("subset_name: bad enum");
}

std::optional<MeasurementSubset> subset_from_name(std::string_view name) {
  if (name == "full") return MeasurementSubset::Tomographic15;
  if (name == "correlated") return MeasurementSubset::Correlated9;
  if (name == "local") return MeasurementSubset::Local6;
  return std::nullopt;
}

std::vector<std::string> subset_column_names(MeasurementSubset s) {
  std::vector<std::string> names;
  const std::size_t off = subset_offset(s);
  for (std::size_t k = 0; k < subset_width(s); ++k)
    names.emplace_back(qstate::kMeasurementNames[off + k]);
  return names;
}

LabeledDataset generate(std::size_t n, std::uint64_t seed, bool balanced) {
  if (n < 1) throw std::invalid_argument("generate: n must be >= 1");

  LabeledDataset ds;
  ds.subset = MeasurementSubset::Tomographic15;
  ds.metadata = DatasetMetadata{seed, "ginibre", balanced, now_utc_iso8601()};
  ds.samples.reserve(n);

  if (!balanced) {
    for (std::uint64_t k = 0; k < n; ++k) ds.samples.push_back(make_sample(seed, k));
    return ds;
  }

  std::size_t want_separable = n / 2;
  std::size_t want_entangled = n - n / 2;
  const std::uint64_t candidate_cap = 1000 + 100 * static_cast<std::uint64_t>(n);
  for (std::uint64_t k = 0; want_separable + want_entangled > 0; ++k) {
    if (k >= candidate_cap)
      throw std::runtime_error("generate: candidate budget exhausted while balancing");
    Sample s = make_sample(seed, k);
    std::size_t& quota = (s.label == EntanglementLabel::Separable) ? want_separable
                                                                   : want_entangled;
    if (quota == 0) continue;
    --quota;
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

LabeledDataset project(const LabeledDataset& ds, MeasurementSubset subset) {
  if (ds.subset != MeasurementSubset::Tomographic15)
    throw std::invalid_argument("project: dataset is already projected");
  LabeledDataset out;
  out.subset = subset;
  out.metadata = ds.metadata;
  out.samples.reserve(ds.samples.size());
  const std::size_t off = subset_offset(subset);
  const std::size_t width = subset_width(subset);
  for (const Sample& s : ds.samples) {
    Sample p;
    p.label = s.label;
    p.features.assign(s.features.begin() + static_cast<std::ptrdiff_t>(off),
                      s.features.begin() + static_cast<std::ptrdiff_t>(off + width));
    out.samples.push_back(std::move(p));
  }
  return out;
}

void save_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::string text = "label";
  for (const std::string& name : subset_column_names(ds.subset)) {
    text += ',';
    text += name;
  }
  text += '\n';
  for (const Sample& s : ds.samples) {
    text += (s.label == EntanglementLabel::Entangled) ? '1' : '0';
    for (double v : s.features) {
      text += ',';
      text += io::format_double(v);
    }
    text += '\n';
  }
  io::write_text_file(path, text);

  nlohmann::json sidecar{
      {"seed", ds.metadata.seed},
      {"ensemble", ds.metadata.ensemble},
      {"balanced", ds.metadata.balanced},
      {"subset", subset_name(ds.subset)},
      {"n", ds.samples.size()},
      {"generator-version", io::kVersion},
  };
  io::write_text_file(path.string() + ".json", sidecar.dump(2) + "\n");
}

LabeledDataset load_csv(const std::filesystem::path& path) {
  const std::string text = io::read_text_file(path);

  std::vector<std::string_view> lines;
  {
    std::string_view rest = text;
    while (!rest.empty()) {
      const std::size_t nl = rest.find('\n');
      std::string_view line = rest.substr(0, nl);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
  }
  if (lines.empty()) parse_fail(path, 1, "label", "missing header row");

  // Header decides the subset: the column names must exactly match one of
  // the three canonical layouts.
  const auto header = io::split_csv_line(lines[0]);
  if (header.empty() || header[0] != "label")
    parse_fail(path, 1, "label", "first column must be 'label'");
  std::optional<MeasurementSubset> subset;
  for (MeasurementSubset s : {MeasurementSubset::Tomographic15,
                              MeasurementSubset::Correlated9,
                              MeasurementSubset::Local6}) {
    const auto names = subset_column_names(s);
    if (header.size() != names.size() + 1) continue;
    if (std::equal(names.begin(), names.end(), header.begin() + 1)) {
      subset = s;
      break;
    }
  }
  if (!subset)
    parse_fail(path, 1, "header",
               "feature columns (" + std::to_string(header.size() - 1) +
                   ") do not match any measurement subset (15, 9 or 6)");

  LabeledDataset ds;
  ds.subset = *subset;
  const std::size_t width = subset_width(*subset);
  const auto names = subset_column_names(*subset);

  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty())
      parse_fail(path, li + 1, "label", "blank row inside data");
    const auto cells = io::split_csv_line(lines[li]);
    if (cells.size() != width + 1)
      parse_fail(path, li + 1, "row",
                 "expected " + std::to_string(width + 1) + " cells, got " +
                     std::to_string(cells.size()));
    Sample s;
    if (cells[0] == "0")
      s.label = EntanglementLabel::Separable;
    else if (cells[0] == "1")
      s.label = EntanglementLabel::Entangled;
    else
      parse_fail(path, li + 1, "label", "invalid label '" + cells[0] + "'");
    s.features.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
      const auto v = io::parse_double(cells[c + 1]);
      if (!v || !std::isfinite(*v))
        parse_fail(path, li + 1, names[c], "non-numeric cell '" + cells[c + 1] + "'");
      if (*v < -1.0 - 1e-9 || *v > 1.0 + 1e-9)
        parse_fail(path, li + 1, names[c], "value outside [-1, 1]");
      s.features.push_back(*v);
    }
    ds.samples.push_back(std::move(s));
  }

  // Sidecar metadata, when present; its subset must agree with the header.
  const std::filesystem::path sidecar_path = path.string() + ".json";
  if (std::filesystem::exists(sidecar_path)) {
    const auto j = nlohmann::json::parse(io::read_text_file(sidecar_path));
    ds.metadata.seed = j.value("seed", std::uint64_t{0});
    ds.metadata.ensemble = j.value("ensemble", std::string{});
    ds.metadata.balanced = j.value("balanced", false);
    const std::string declared = j.value("subset", std::string{});
    if (!declared.empty() && declared != subset_name(*subset))
      throw std::runtime_error(path.string() + ": sidecar declares subset '" +
                               declared + "' but header is '" +
                               subset_name(*subset) + "'");
  }
  return ds;
}

std::pair<std::size_t, std::size_t> class_counts(const LabeledDataset& ds) {
  std::size_t separable = 0;
  for (const Sample& s : ds.samples)
    if (s.label == EntanglementLabel::Separable) ++separable;
  return {separable, ds.samples.size() - separable};
}

}  // namespace entvae::data
