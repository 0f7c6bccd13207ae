#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entvae/bvae.hpp"
#include "entvae/dataset.hpp"

// Adam, reduce-on-plateau scheduling, the epoch loop and evaluation.
namespace entvae::train {

struct AdamState {
  std::vector<std::vector<double>> m;  // parallel to the param blocks
  std::vector<std::vector<double>> v;
  std::uint64_t t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

AdamState make_adam_state(std::span<const nn::ParamBlock> blocks);

// One bias-corrected update over every block; increments t.
void adam_step(std::span<nn::ParamBlock> blocks, AdamState& state, double lr);

struct PlateauSchedule {
  double factor = 0.1;
  std::size_t patience = 10;
  double min_delta = 1e-4;
  double min_lr = 1e-6;
  double best = 0.0;
  bool has_best = false;
  std::size_t stale_epochs = 0;
};

// Called once per epoch with that epoch's validation loss; returns the
// learning rate for the next epoch.
double plateau_update(PlateauSchedule& schedule, double validation_loss,
                      double current_lr);

struct TrainConfig {
  std::size_t epochs = 100;
  double initial_lr = 0.005;
  std::size_t batch_size = 32;
  double r_cat = 500.0;
  double beta = 1.0;
  // global-norm gradient clip applied before Adam; 0 disables it
  double clip_norm = 100.0;
  std::uint64_t seed = 0;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double lr = 0.0;
  double train_loss = 0.0;
  double train_cat = 0.0;
  double train_kl = 0.0;
  double train_acc = 0.0;
  double val_loss = 0.0;
  double val_acc = 0.0;
};

struct TrainLog {
  std::vector<EpochRecord> records;
};

void export_train_log_csv(const TrainLog& log, const std::string& path);

// Row-major feature matrix / one-hot label matrix views of a dataset.
nn::RealMatrix features_matrix(const data::LabeledDataset& ds);
nn::RealMatrix one_hot_matrix(const data::LabeledDataset& ds);

// Full training protocol: per-epoch shuffle, minibatch backward + Adam,
// validation on the deterministic mu path, plateau scheduling. Mutates the
// model in place and returns one record per epoch.
TrainLog fit(bvae::BvaeModel& model, const data::LabeledDataset& train_ds,
             const data::LabeledDataset& val_ds, const TrainConfig& config);

struct EvalResult {
  double accuracy = 0.0;
  // confusion[true label][predicted label]
  std::array<std::array<std::size_t, 2>, 2> confusion{{{0, 0}, {0, 0}}};
};

// Deterministic evaluation: argmax of decode(latent_mean(x)), ties to
// class 0.
EvalResult evaluate(const bvae::BvaeModel& model, const data::LabeledDataset& ds);

}  // namespace entvae::train
