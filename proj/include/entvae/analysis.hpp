#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "entvae/bvae.hpp"
#include "entvae/dataset.hpp"
#include "entvae/trainer.hpp"

// Latent threshold classification, the beta/r_cat ratio sweep and plot-data
// export.
namespace entvae::analysis {

// Sign rule at threshold 0 on one latent axis. positive_separable = true
// reads z[axis] > 0 as separable.
struct LatentRule {
  std::size_t axis = 0;
  bool positive_separable = true;
};

struct LatentRuleFit {
  LatentRule rule;
  double accuracy = 0.0;
};

// Evaluates all four (axis, polarity) rules on the given latents and
// returns the best; ties resolved axis 0 first, positive side first.
LatentRuleFit fit_latent_rule(const nn::RealMatrix& latents,
                              std::span<const qstate::EntanglementLabel> labels);

double latent_rule_accuracy(const LatentRule& rule, const nn::RealMatrix& latents,
                            std::span<const qstate::EntanglementLabel> labels);

std::vector<qstate::EntanglementLabel> dataset_labels(const data::LabeledDataset& ds);

struct SweepRow {
  double ratio = 0.0;
  std::uint64_t seed = 0;
  double model_acc = 0.0;
  double latent_acc = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ratio-major, then seed
};

// One full fit + evaluation per (ratio, seed) on the given datasets.
// r_cat stays at base.r_cat; beta = ratio * r_cat. Model initialization
// and the training streams are keyed by the row's seed. Points are
// independent; at jobs > 1 they run on that many threads with identical
// results.
SweepResult beta_sweep(const data::LabeledDataset& train_ds,
                       const data::LabeledDataset& test_ds,
                       const std::vector<double>& ratios,
                       const std::vector<std::uint64_t>& seeds,
                       const train::TrainConfig& base, std::size_t jobs = 1);

inline const std::vector<double> kDefaultSweepRatios{2e-4, 1e-3, 1e-2, 0.1,
                                                     0.3,  0.5,  1.0};

// CSV columns ratio, seed, model_acc, latent_acc.
void export_sweep_csv(const SweepResult& result, const std::filesystem::path& path);

// CSV columns z0, z1, label: the mu embedding of every sample.
void export_latent_csv(const bvae::BvaeModel& model, const data::LabeledDataset& ds,
                       const std::filesystem::path& path);

}  // namespace entvae::analysis
