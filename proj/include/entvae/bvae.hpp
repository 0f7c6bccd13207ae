#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entvae/neuralnet.hpp"
#include "entvae/rng.hpp"

// Variational classifier: encoder to a 2-D Gaussian latent, reparameterized
// sample, decoder to 2-class softmax. Loss = r_cat * CE + beta * KL, both
// terms batch means.
namespace entvae::bvae {

struct BvaeConfig {
  std::size_t input_dim = 15;
  std::vector<std::size_t> encoder_widths{512, 256, 128, 64, 32};
  std::size_t latent_dim = 2;
  std::vector<std::size_t> decoder_widths{32, 64, 128, 256, 512};
  std::size_t output_dim = 2;
  double dropout_rate = 0.2;
  double leaky_slope = 0.3;
  double r_cat = 500.0;
  double beta = 1.0;
};

struct BvaeModel {
  std::vector<nn::DenseLayer> encoder;  // hidden LeakyReLU stages
  nn::DenseLayer mu_head;               // linear, last width -> latent_dim
  nn::DenseLayer logvar_head;           // linear, last width -> latent_dim
  std::vector<nn::DenseLayer> decoder;  // hidden stages + softmax output layer
  BvaeConfig config;
};

// The logvar head output is squashed through cap * tanh(raw / cap) before
// use. Identity to third order near zero, it only matters when activations
// blow up mid-training, where it keeps exp(logvar/2) finite instead of
// letting one hot batch overflow the forward pass.
inline constexpr double kLogvarCap = 30.0;

// Batched posterior parameters, one row per sample.
struct LatentParams {
  nn::RealMatrix mu;      // B x latent_dim
  nn::RealMatrix logvar;  // B x latent_dim
};

struct LatentSample {
  nn::RealMatrix z;        // mu + exp(logvar/2) * epsilon, elementwise
  nn::RealMatrix epsilon;  // the standard-normal draws used
};

// Frozen stochasticity for one forward/backward pair: the latent noise and
// every dropout mask. zero_noise() gives the deterministic evaluation path
// (epsilon = 0, masks = 1).
struct NoiseDraws {
  nn::RealMatrix epsilon;                 // B x latent_dim
  std::vector<nn::RealMatrix> enc_masks;  // one per encoder hidden layer
  std::vector<nn::RealMatrix> dec_masks;  // one per decoder hidden layer
};

struct LossTerms {
  double total = 0.0;
  double cat = 0.0;
  double kl = 0.0;
};

struct GradientStore {
  std::vector<nn::LayerGrad> encoder;
  nn::LayerGrad mu_head;
  nn::LayerGrad logvar_head;
  std::vector<nn::LayerGrad> decoder;
  LossTerms loss;
  nn::RealMatrix probs;  // forward-pass class probabilities, for logging
};

BvaeModel build_model(const BvaeConfig& config, rng::Stream& stream);

// Evaluation-mode encoder pass (no dropout).
LatentParams encode(const BvaeModel& model, const nn::RealMatrix& x);

LatentSample sample_latent(const LatentParams& params, const nn::RealMatrix& epsilon);
LatentSample sample_latent(const LatentParams& params, rng::Stream& stream);

// Evaluation-mode decoder pass (no dropout); rows are probability vectors.
nn::RealMatrix decode(const BvaeModel& model, const nn::RealMatrix& z);

// Mean over the batch of (1/2) sum_i (exp(logvar_i) + mu_i^2 - 1 - logvar_i).
double kl_divergence(const LatentParams& params);

NoiseDraws draw_noise(const BvaeModel& model, std::size_t batch, bool training,
                      rng::Stream& latent_stream, rng::Stream& dropout_stream);
NoiseDraws zero_noise(const BvaeModel& model, std::size_t batch);

// Full forward pass under the given frozen noise; throws a diagnostic
// naming the offending term if either loss term is non-finite.
LossTerms loss_total(const BvaeModel& model, const nn::RealMatrix& x,
                     const nn::RealMatrix& y_onehot, double r_cat, double beta,
                     const NoiseDraws& noise);

// Convenience overload drawing fresh noise.
LossTerms loss_total(const BvaeModel& model, const nn::RealMatrix& x,
                     const nn::RealMatrix& y_onehot, double r_cat, double beta,
                     bool training, rng::Stream& latent_stream,
                     rng::Stream& dropout_stream);

// Exact analytic gradients of loss_total under the same frozen noise,
// including the KL path into both heads and the reparameterized path
// through z. The returned store also carries the loss terms.
GradientStore backward(const BvaeModel& model, const nn::RealMatrix& x,
                       const nn::RealMatrix& y_onehot, double r_cat,
                       double beta, const NoiseDraws& noise);

// Deterministic mu embedding (evaluation mode), used for plotting and the
// latent threshold classifier.
nn::RealMatrix latent_mean(const BvaeModel& model, const nn::RealMatrix& x);

GradientStore make_gradient_store(const BvaeModel& model);

// Parameter slabs paired with their gradients, in a fixed order shared by
// the optimizer and the gradient checker.
std::vector<nn::ParamBlock> param_blocks(BvaeModel& model, GradientStore& grads);

void save_checkpoint(const BvaeModel& model, const std::string& path,
                     std::uint64_t seed);
struct Checkpoint {
  BvaeModel model;
  std::uint64_t seed = 0;
};
Checkpoint load_checkpoint(const std::string& path);

}  // namespace entvae::bvae
