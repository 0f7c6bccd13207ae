#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "entvae/analysis.hpp"
#include "entvae/dataset.hpp"
#include "entvae/trainer.hpp"

// Command implementations behind the binary's subcommands. Every command
// works inside one run directory (--out): gen-data writes train.csv and
// test.csv there, train picks them up and adds checkpoint.json plus
// trainlog.csv, evaluate and sweep read the same directory. Each cmd_*
// returns the paths it wrote so callers (and tests) can inspect them; the
// run_cli entry point wires them to argv.
namespace entvae::cli {

struct GenDataOptions {
  std::uint64_t seed = 7;
  data::MeasurementSubset subset = data::MeasurementSubset::Tomographic15;
  std::filesystem::path out_dir = ".";
  std::size_t n_train = 5000;
  std::size_t n_test = 3000;
  bool balanced = true;
};

struct GenDataResult {
  std::filesystem::path train_csv;
  std::filesystem::path test_csv;
  std::filesystem::path manifest;
};

GenDataResult cmd_gen_data(const GenDataOptions& opts);

struct TrainOptions {
  std::uint64_t seed = 7;
  std::filesystem::path out_dir = ".";
  // when set, the dataset found in out_dir must be this subset
  std::optional<data::MeasurementSubset> subset;
  std::size_t epochs = 100;
  double lr = 0.005;
  double r_cat = 500.0;
  double beta = 1.0;
  std::size_t batch = 32;
  double clip_norm = 100.0;
};

struct TrainResult {
  std::filesystem::path checkpoint;
  std::filesystem::path train_log;
  std::filesystem::path manifest;
  double final_val_acc = 0.0;
};

TrainResult cmd_train(const TrainOptions& opts);

struct EvaluateOptions {
  std::filesystem::path out_dir = ".";
};

struct EvaluateResult {
  double model_accuracy = 0.0;
  analysis::LatentRule latent_rule;
  double latent_accuracy = 0.0;
  std::array<std::array<std::size_t, 2>, 2> confusion{{{0, 0}, {0, 0}}};
  std::string metrics_text;  // the JSON that was printed and written
  std::filesystem::path metrics_json;
  std::filesystem::path manifest;
};

EvaluateResult cmd_evaluate(const EvaluateOptions& opts);

struct SweepOptions {
  std::uint64_t seed = 7;
  std::filesystem::path out_dir = ".";
  std::vector<double> ratios = analysis::kDefaultSweepRatios;
  std::size_t epochs = 100;
  double lr = 0.005;
  double r_cat = 500.0;
  std::size_t batch = 32;
  double clip_norm = 100.0;
  std::size_t jobs = 1;
};

struct SweepCmdResult {
  analysis::SweepResult sweep;
  std::filesystem::path csv;
  std::filesystem::path manifest;
};

SweepCmdResult cmd_sweep(const SweepOptions& opts);

struct ReproduceOptions {
  std::uint64_t seed = 7;
  std::filesystem::path out_dir = ".";
  std::size_t epochs = 100;
  std::size_t n_train = 5000;
  std::size_t n_test = 3000;
  std::size_t batch = 32;
  double clip_norm = 100.0;
  std::size_t jobs = 1;
};

struct ReproduceRow {
  std::string subset;
  double model_acc = 0.0;
  double latent_acc = 0.0;
  double ref_model = 0.0;   // published reference accuracy, model column
  double ref_latent = 0.0;  // published reference accuracy, latent column
};

struct ReproduceResult {
  std::vector<ReproduceRow> rows;  // full, correlated, local
  std::string summary_table;       // the printed report
  std::filesystem::path summary_csv;
  std::filesystem::path manifest;
};

ReproduceResult cmd_reproduce(const ReproduceOptions& opts);

// argv entry point; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace entvae::cli
