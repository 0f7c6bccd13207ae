#include "entvae/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "entvae/io_util.hpp"
#include "entvae/rng.hpp"

namespace entvae::train {

namespace {

using nn::RealMatrix;

void check_congruent(std::span<const nn::ParamBlock> blocks, const AdamState& state) {
  if (blocks.size() != state.m.size() || blocks.size() != state.v.size())
    throw std::invalid_argument("adam_step: state block count mismatch");
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].values.size() != state.m[i].size() ||
        blocks[i].values.size() != blocks[i].grads.size())
      throw std::invalid_argument("adam_step: shape mismatch in " + blocks[i].name);
}

std::size_t argmax_row(const RealMatrix& probs, std::size_t i) {
  return probs.at(i, 1) > probs.at(i, 0) ? 1 : 0;
}

void require_width(const bvae::BvaeModel& model, const data::LabeledDataset& ds,
                   const char* where) {
  if (ds.feature_width() != model.config.input_dim)
    throw std::invalid_argument(std::string(where) + ": dataset subset '" +
                                data::subset_name(ds.subset) + "' has width " +
                                std::to_string(ds.feature_width()) +
                                ", model expects " +
                                std::to_string(model.config.input_dim));
}

struct ValMetrics {
  double loss = 0.0;
  double acc = 0.0;
};

void clip_gradients(bvae::GradientStore& grads, double clip_norm) {
  if (clip_norm <= 0.0) return;
  double sq = 0.0;
  const auto accumulate = [&sq](const nn::LayerGrad& g) {
    for (double v : g.weights.data) sq += v * v;
    for (double v : g.biases) sq += v * v;
  };
  for (const auto& g : grads.encoder) accumulate(g);
  accumulate(grads.mu_head);
  accumulate(grads.logvar_head);
  for (const auto& g : grads.decoder) accumulate(g);
  const double norm = std::sqrt(sq);
  if (norm <= clip_norm) return;
  const double scale = clip_norm / norm;
  const auto rescale = [scale](nn::LayerGrad& g) {
    for (double& v : g.weights.data) v *= scale;
    for (double& v : g.biases) v *= scale;
  };
  for (auto& g : grads.encoder) rescale(g);
  rescale(grads.mu_head);
  rescale(grads.logvar_head);
  for (auto& g : grads.decoder) rescale(g);
}

ValMetrics validate(const bvae::BvaeModel& model, const RealMatrix& x,
                    const RealMatrix& y, double r_cat, double beta) {
  const bvae::LatentParams params = bvae::encode(model, x);
  const RealMatrix probs = bvae::decode(model, params.mu);
  const double cat = nn::cross_entropy_mean(y, probs);
  const double kl = bvae::kl_divergence(params);
  ValMetrics out;
  out.loss = r_cat * cat + beta * kl;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < probs.rows; ++i)
    if (y.at(i, argmax_row(probs, i)) == 1.0) ++correct;
  out.acc = static_cast<double>(correct) / static_cast<double>(probs.rows);
  return out;
}

}  // namespace

AdamState make_adam_state(std::span<const nn::ParamBlock> blocks) {
  AdamState state;
  for (const nn::ParamBlock& block : blocks) {
    state.m.emplace_back(block.values.size(), 0.0);
    state.v.emplace_back(block.values.size(), 0.0);
  }
  return state;
}

void adam_step(std::span<nn::ParamBlock> blocks, AdamState& state, double lr) {
  check_congruent(blocks, state);
  state.t += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    double* m = state.m[i].data();
    double* v = state.v[i].data();
    double* p = blocks[i].values.data();
    const double* g = blocks[i].grads.data();
    const std::size_t n = blocks[i].values.size();
    for (std::size_t k = 0; k < n; ++k) {
      m[k] = state.beta1 * m[k] + (1.0 - state.beta1) * g[k];
      v[k] = state.beta2 * v[k] + (1.0 - state.beta2) * g[k] * g[k];
      const double mhat = m[k] / bc1;
      const double vhat = v[k] / bc2;
      p[k] -= lr * mhat / (std::sqrt(vhat) + state.eps);
    }
  }
}

double plateau_update(PlateauSchedule& schedule, double validation_loss,
                      double current_lr) {
  if (!schedule.has_best || validation_loss < schedule.best - schedule.min_delta) {
    schedule.best = validation_loss;
    schedule.has_best = true;
    schedule.stale_epochs = 0;
    return current_lr;
  }
  schedule.stale_epochs += 1;
  if (schedule.stale_epochs >= schedule.patience) {
    schedule.stale_epochs = 0;
    return std::max(current_lr * schedule.factor, schedule.min_lr);
  }
  return current_lr;
}

void export_train_log_csv(const TrainLog& log, const std::string& path) {
  std::string out = "epoch,lr,train_loss,train_cat,train_kl,train_acc,val_loss,val_acc\n";
  for (const EpochRecord& r : log.records) {
    out += std::to_string(r.epoch);
    for (double v : {r.lr, r.train_loss, r.train_cat, r.train_kl, r.train_acc,
                     r.val_loss, r.val_acc}) {
      out += ',';
      out += io::format_double(v);
    }
    out += '\n';
  }
  io::write_text_file(path, out);
}

nn::RealMatrix features_matrix(const data::LabeledDataset& ds) {
  RealMatrix x(ds.size(), ds.feature_width());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& f = ds.samples[i].features;
    std::copy(f.begin(), f.end(), x.row(i));
  }
  return x;
}

nn::RealMatrix one_hot_matrix(const data::LabeledDataset& ds) {
  RealMatrix y(ds.size(), 2);
  for (std::size_t i = 0; i < ds.size(); ++i)
    y.at(i, static_cast<std::size_t>(ds.samples[i].label)) = 1.0;
  return y;
}

TrainLog fit(bvae::BvaeModel& model, const data::LabeledDataset& train_ds,
             const data::LabeledDataset& val_ds, const TrainConfig& config) {
  require_width(model, train_ds, "fit");
  require_width(model, val_ds, "fit");
  if (config.epochs < 1) throw std::invalid_argument("fit: epochs must be >= 1");
  if (config.batch_size < 1)
    throw std::invalid_argument("fit: batch_size must be >= 1");
  if (config.initial_lr <= 0.0) throw std::invalid_argument("fit: lr must be > 0");
  if (train_ds.size() == 0) throw std::invalid_argument("fit: empty training set");

  const RealMatrix x_train = features_matrix(train_ds);
  const RealMatrix y_train = one_hot_matrix(train_ds);
  const RealMatrix x_val = features_matrix(val_ds);
  const RealMatrix y_val = one_hot_matrix(val_ds);
  const std::size_t n = train_ds.size();

  bvae::GradientStore grads = bvae::make_gradient_store(model);
  std::vector<nn::ParamBlock> blocks = bvae::param_blocks(model, grads);
  AdamState adam = make_adam_state(blocks);
  PlateauSchedule schedule;
  rng::Stream shuffle_stream(config.seed, rng::kShuffleStream);
  rng::Stream dropout_stream(config.seed, rng::kDropoutStream);
  rng::Stream latent_stream(config.seed, rng::kLatentStream);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  TrainLog log;
  double lr = config.initial_lr;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t i = n - 1; i > 0; --i)
      std::swap(order[i], order[shuffle_stream.uniform_index(i + 1)]);

    double sum_total = 0.0, sum_cat = 0.0, sum_kl = 0.0;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t b = std::min(config.batch_size, n - start);
      RealMatrix xb(b, x_train.cols);
      RealMatrix yb(b, 2);
      for (std::size_t i = 0; i < b; ++i) {
        const std::size_t src = order[start + i];
        std::copy(x_train.row(src), x_train.row(src) + x_train.cols, xb.row(i));
        yb.at(i, 0) = y_train.at(src, 0);
        yb.at(i, 1) = y_train.at(src, 1);
      }
      const bvae::NoiseDraws noise =
          bvae::draw_noise(model, b, true, latent_stream, dropout_stream);
      try {
        grads = bvae::backward(model, xb, yb, config.r_cat, config.beta, noise);
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "fit: epoch " << epoch << ", batch " << (start / config.batch_size)
            << ": " << e.what();
        throw std::runtime_error(msg.str());
      }
      clip_gradients(grads, config.clip_norm);
      blocks = bvae::param_blocks(model, grads);
      adam_step(blocks, adam, lr);

      const double bw = static_cast<double>(b);
      sum_total += grads.loss.total * bw;
      sum_cat += grads.loss.cat * bw;
      sum_kl += grads.loss.kl * bw;
      for (std::size_t i = 0; i < b; ++i)
        if (yb.at(i, argmax_row(grads.probs, i)) == 1.0) ++correct;
    }

    const ValMetrics vm = validate(model, x_val, y_val, config.r_cat, config.beta);
    if (!std::isfinite(vm.loss)) {
      std::ostringstream msg;
      msg << "fit: epoch " << epoch << ": validation loss is not finite";
      throw std::runtime_error(msg.str());
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.lr = lr;
    rec.train_loss = sum_total / static_cast<double>(n);
    rec.train_cat = sum_cat / static_cast<double>(n);
    rec.train_kl = sum_kl / static_cast<double>(n);
    rec.train_acc = static_cast<double>(correct) / static_cast<double>(n);
    rec.val_loss = vm.loss;
    rec.val_acc = vm.acc;
    log.records.push_back(rec);

    lr = plateau_update(schedule, vm.loss, lr);
  }
  return log;
}

EvalResult evaluate(const bvae::BvaeModel& model, const data::LabeledDataset& ds) {
  require_width(model, ds, "evaluate");
  if (ds.size() == 0) throw std::invalid_argument("evaluate: empty dataset");
  const RealMatrix x = features_matrix(ds);
  const RealMatrix probs = bvae::decode(model, bvae::latent_mean(model, x));
  EvalResult out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const std::size_t truth = static_cast<std::size_t>(ds.samples[i].label);
    out.confusion[truth][argmax_row(probs, i)] += 1;
  }
  out.accuracy =
      static_cast<double>(out.confusion[0][0] + out.confusion[1][1]) /
      static_cast<double>(ds.size());
  return out;
}

}  // namespace entvae::train
