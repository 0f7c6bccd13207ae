#include "entvae/analysis.hpp"

#include <stdexcept>
#include <string>

#include "entvae/io_util.hpp"
#include "entvae/parallel.hpp"
#include "entvae/rng.hpp"

namespace entvae::analysis {

namespace {

using qstate::EntanglementLabel;

}  // namespace

LatentRuleFit fit_latent_rule(const nn::RealMatrix& latents,
                              std::span<const EntanglementLabel> labels) {
  if (latents.rows == 0) throw std::invalid_argument("fit_latent_rule: empty input");
  if (latents.rows != labels.size())
    throw std::invalid_argument("fit_latent_rule: label count mismatch");
  if (latents.cols != 2)
    throw std::invalid_argument("fit_latent_rule: latents must have 2 columns");

  LatentRuleFit best;
  best.accuracy = -1.0;
  for (std::size_t axis = 0; axis < 2; ++axis)
    for (bool positive : {true, false}) {
      const LatentRule rule{axis, positive};
      const double acc = latent_rule_accuracy(rule, latents, labels);
      if (acc > best.accuracy) best = {rule, acc};
    }
  return best;
}

double latent_rule_accuracy(const LatentRule& rule, const nn::RealMatrix& latents,
                            std::span<const EntanglementLabel> labels) {
  if (rule.axis > 1) throw std::invalid_argument("latent_rule_accuracy: bad axis");
  if (latents.rows != labels.size())
    throw std::invalid_argument("latent_rule_accuracy: label count mismatch");
  if (latents.rows == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < latents.rows; ++i) {
    const bool positive = latents.at(i, rule.axis) > 0.0;
    const bool says_separable = positive == rule.positive_separable;
    const bool is_separable = labels[i] == EntanglementLabel::Separable;
    if (says_separable == is_separable) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(latents.rows);
}

std::vector<EntanglementLabel> dataset_labels(const data::LabeledDataset& ds) {
  std::vector<EntanglementLabel> labels;
  labels.reserve(ds.size());
  for (const auto& s : ds.samples) labels.push_back(s.label);
  return labels;
}

SweepResult beta_sweep(const data::LabeledDataset& train_ds,
                       const data::LabeledDataset& test_ds,
                       const std::vector<double>& ratios,
                       const std::vector<std::uint64_t>& seeds,
                       const train::TrainConfig& base, std::size_t jobs) {
  for (double r : ratios)
    if (!(r > 0.0))
      throw std::invalid_argument("beta_sweep: ratios must be positive, got " +
                                  std::to_string(r));
  if (seeds.empty()) throw std::invalid_argument("beta_sweep: no seeds");

  SweepResult result;
  result.rows.resize(ratios.size() * seeds.size());
  par::run_indexed(result.rows.size(), jobs, [&](std::size_t idx) {
    const double ratio = ratios[idx / seeds.size()];
    const std::uint64_t seed = seeds[idx % seeds.size()];

    bvae::BvaeConfig mc;
    mc.input_dim = train_ds.feature_width();
    mc.r_cat = base.r_cat;
    mc.beta = ratio * base.r_cat;

    train::TrainConfig tc = base;
    tc.beta = mc.beta;
    tc.seed = seed;

    rng::Stream init(seed, rng::kInitStream);
    bvae::BvaeModel model = bvae::build_model(mc, init);
    train::fit(model, train_ds, test_ds, tc);

    SweepRow row;
    row.ratio = ratio;
    row.seed = seed;
    row.model_acc = train::evaluate(model, test_ds).accuracy;
    const auto rule = fit_latent_rule(
        bvae::latent_mean(model, train::features_matrix(train_ds)),
        dataset_labels(train_ds));
    row.latent_acc = latent_rule_accuracy(
        rule.rule, bvae::latent_mean(model, train::features_matrix(test_ds)),
        dataset_labels(test_ds));
    result.rows[idx] = row;
  });
  return result;
}

void export_sweep_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::string out = "ratio,seed,model_acc,latent_acc\n";
  for (const SweepRow& r : result.rows) {
    out += io::format_double(r.ratio);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += io::format_double(r.model_acc);
    out += ',';
    out += io::format_double(r.latent_acc);
    out += '\n';
  }
  io::write_text_file(path.string(), out);
}

void export_latent_csv(const bvae::BvaeModel& model, const data::LabeledDataset& ds,
                       const std::filesystem::path& path) {
  const nn::RealMatrix z = bvae::latent_mean(model, train::features_matrix(ds));
  std::string out = "z0,z1,label\n";
  for (std::size_t i = 0; i < z.rows; ++i) {
    out += io::format_double(z.at(i, 0));
    out += ',';
    out += io::format_double(z.at(i, 1));
    out += ',';
    out += std::to_string(static_cast<int>(ds.samples[i].label));
    out += '\n';
  }
  io::write_text_file(path.string(), out);
}

}  // namespace entvae::analysis
