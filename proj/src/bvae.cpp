#include "entvae/bvae.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "entvae/io_util.hpp"

namespace entvae::bvae {

namespace {

using nn::Activation;
using nn::DenseLayer;
using nn::RealMatrix;

void validate_config(const BvaeConfig& c) {
  if (c.input_dim != 15 && c.input_dim != 9 && c.input_dim != 6)
    throw std::invalid_argument("build_model: input_dim must be 15, 9 or 6, got " +
                                std::to_string(c.input_dim));
  if (c.encoder_widths.empty() || c.decoder_widths.empty())
    throw std::invalid_argument("build_model: empty width list");
  for (std::size_t w : c.encoder_widths)
    if (w == 0) throw std::invalid_argument("build_model: zero encoder width");
  for (std::size_t w : c.decoder_widths)
    if (w == 0) throw std::invalid_argument("build_model: zero decoder width");
  if (c.latent_dim == 0 || c.output_dim == 0)
    throw std::invalid_argument("build_model: zero latent or output dim");
  if (c.r_cat <= 0.0) throw std::invalid_argument("build_model: r_cat must be > 0");
  if (c.beta < 0.0) throw std::invalid_argument("build_model: beta must be >= 0");
  if (!(c.dropout_rate >= 0.0 && c.dropout_rate < 1.0))
    throw std::invalid_argument("build_model: dropout_rate must be in [0, 1)");
}

DenseLayer make_layer(std::size_t fan_in, std::size_t fan_out, Activation act,
                      double slope, rng::Stream& stream) {
  DenseLayer layer;
  layer.weights = nn::glorot_init(fan_in, fan_out, stream);
  layer.biases.assign(fan_out, 0.0);
  layer.activation = act;
  layer.leaky_slope = slope;
  return layer;
}

RealMatrix mask_like(std::size_t rows, std::size_t cols, double rate,
                     bool training, rng::Stream& stream) {
  RealMatrix mask(rows, cols);
  if (!training || rate == 0.0) {
    std::fill(mask.data.begin(), mask.data.end(), 1.0);
    return mask;
  }
  const double scale = 1.0 / (1.0 - rate);
  for (double& m : mask.data) m = stream.uniform() >= rate ? scale : 0.0;
  return mask;
}

struct ForwardCache {
  std::vector<RealMatrix> enc_z;  // pre-activation per encoder layer
  std::vector<RealMatrix> enc_a;  // post-activation post-mask per encoder layer
  RealMatrix mu, logvar_raw, logvar, z;
  std::vector<RealMatrix> dec_z;  // pre-activation per hidden decoder layer
  std::vector<RealMatrix> dec_a;  // post-activation post-mask
  RealMatrix logits, probs;
  LossTerms loss;
};

void elementwise_mul(RealMatrix& a, const RealMatrix& b) {
  for (std::size_t k = 0; k < a.data.size(); ++k) a.data[k] *= b.data[k];
}

RealMatrix squash_logvar(const RealMatrix& raw) {
  RealMatrix out = raw;
  for (double& v : out.data) v = kLogvarCap * std::tanh(v / kLogvarCap);
  return out;
}

ForwardCache run_forward(const BvaeModel& model, const RealMatrix& x,
                         const RealMatrix& y_onehot, double r_cat, double beta,
                         const NoiseDraws& noise) {
  if (x.cols != model.config.input_dim)
    throw std::invalid_argument("forward: input has " + std::to_string(x.cols) +
                                " columns, model expects " +
                                std::to_string(model.config.input_dim));
  if (y_onehot.rows != x.rows || y_onehot.cols != model.config.output_dim)
    throw std::invalid_argument("forward: label shape mismatch");
  if (noise.epsilon.rows != x.rows || noise.epsilon.cols != model.config.latent_dim)
    throw std::invalid_argument("forward: epsilon shape mismatch");
  if (noise.enc_masks.size() != model.encoder.size() ||
      noise.dec_masks.size() + 1 != model.decoder.size())
    throw std::invalid_argument("forward: dropout mask count mismatch");

  ForwardCache cache;
  const double batch = static_cast<double>(x.rows);

  const RealMatrix* h = &x;
  for (std::size_t l = 0; l < model.encoder.size(); ++l) {
    cache.enc_z.push_back(nn::dense_forward(model.encoder[l], *h));
    RealMatrix a = nn::leaky_relu(cache.enc_z[l], model.config.leaky_slope);
    elementwise_mul(a, noise.enc_masks[l]);
    cache.enc_a.push_back(std::move(a));
    h = &cache.enc_a[l];
  }
  cache.mu = nn::dense_forward(model.mu_head, *h);
  cache.logvar_raw = nn::dense_forward(model.logvar_head, *h);
  cache.logvar = squash_logvar(cache.logvar_raw);

  cache.z = cache.mu;
  for (std::size_t k = 0; k < cache.z.data.size(); ++k)
    cache.z.data[k] += std::exp(0.5 * cache.logvar.data[k]) * noise.epsilon.data[k];

  h = &cache.z;
  const std::size_t hidden = model.decoder.size() - 1;
  for (std::size_t l = 0; l < hidden; ++l) {
    cache.dec_z.push_back(nn::dense_forward(model.decoder[l], *h));
    RealMatrix a = nn::leaky_relu(cache.dec_z[l], model.config.leaky_slope);
    elementwise_mul(a, noise.dec_masks[l]);
    cache.dec_a.push_back(std::move(a));
    h = &cache.dec_a[l];
  }
  cache.logits = nn::dense_forward(model.decoder[hidden], *h);
  cache.probs = nn::softmax(cache.logits);

  cache.loss.cat = nn::cross_entropy_mean(y_onehot, cache.probs);
  double kl = 0.0;
  for (std::size_t k = 0; k < cache.mu.data.size(); ++k) {
    const double lv = cache.logvar.data[k];
    const double m = cache.mu.data[k];
    kl += 0.5 * (std::exp(lv) + m * m - 1.0 - lv);
  }
  cache.loss.kl = kl / batch;
  if (!std::isfinite(cache.loss.cat))
    throw std::runtime_error("loss diverged: categorical term is not finite");
  if (!std::isfinite(cache.loss.kl))
    throw std::runtime_error("loss diverged: kl term is not finite");
  cache.loss.total = r_cat * cache.loss.cat + beta * cache.loss.kl;
  return cache;
}

nn::LayerGrad zero_grad(const DenseLayer& layer) {
  return {RealMatrix(layer.fan_in(), layer.fan_out()),
          std::vector<double>(layer.fan_out(), 0.0)};
}

void accumulate_bias(std::vector<double>& out, const RealMatrix& dz) {
  for (std::size_t j = 0; j < dz.cols; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dz.rows; ++i) acc += dz.at(i, j);
    out[j] = acc;
  }
}

}  // namespace

BvaeModel build_model(const BvaeConfig& config, rng::Stream& stream) {
  validate_config(config);
  BvaeModel model;
  model.config = config;

  std::size_t prev = config.input_dim;
  for (std::size_t w : config.encoder_widths) {
    model.encoder.push_back(
        make_layer(prev, w, Activation::LeakyRelu, config.leaky_slope, stream));
    prev = w;
  }
  model.mu_head = make_layer(prev, config.latent_dim, Activation::Linear,
                             config.leaky_slope, stream);
  model.logvar_head = make_layer(prev, config.latent_dim, Activation::Linear,
                                 config.leaky_slope, stream);

  prev = config.latent_dim;
  for (std::size_t w : config.decoder_widths) {
    model.decoder.push_back(
        make_layer(prev, w, Activation::LeakyRelu, config.leaky_slope, stream));
    prev = w;
  }
  model.decoder.push_back(make_layer(prev, config.output_dim, Activation::Softmax,
                                     config.leaky_slope, stream));
  return model;
}

LatentParams encode(const BvaeModel& model, const nn::RealMatrix& x) {
  if (x.cols != model.config.input_dim)
    throw std::invalid_argument("encode: input has " + std::to_string(x.cols) +
                                " columns, model expects " +
                                std::to_string(model.config.input_dim));
  RealMatrix h = x;
  for (const DenseLayer& layer : model.encoder)
    h = nn::leaky_relu(nn::dense_forward(layer, h), model.config.leaky_slope);
  return {nn::dense_forward(model.mu_head, h),
          squash_logvar(nn::dense_forward(model.logvar_head, h))};
}

LatentSample sample_latent(const LatentParams& params, const nn::RealMatrix& epsilon) {
  if (!params.mu.same_shape(params.logvar) || !params.mu.same_shape(epsilon))
    throw std::invalid_argument("sample_latent: shape mismatch");
  LatentSample sample{params.mu, epsilon};
  for (std::size_t k = 0; k < sample.z.data.size(); ++k)
    sample.z.data[k] += std::exp(0.5 * params.logvar.data[k]) * epsilon.data[k];
  return sample;
}

LatentSample sample_latent(const LatentParams& params, rng::Stream& stream) {
  RealMatrix eps(params.mu.rows, params.mu.cols);
  for (double& e : eps.data) e = stream.normal();
  return sample_latent(params, eps);
}

nn::RealMatrix decode(const BvaeModel& model, const nn::RealMatrix& z) {
  if (z.cols != model.config.latent_dim)
    throw std::invalid_argument("decode: latent has " + std::to_string(z.cols) +
                                " columns, model expects " +
                                std::to_string(model.config.latent_dim));
  RealMatrix h = z;
  const std::size_t hidden = model.decoder.size() - 1;
  for (std::size_t l = 0; l < hidden; ++l)
    h = nn::leaky_relu(nn::dense_forward(model.decoder[l], h),
                       model.config.leaky_slope);
  return nn::softmax(nn::dense_forward(model.decoder[hidden], h));
}

double kl_divergence(const LatentParams& params) {
  if (!params.mu.same_shape(params.logvar))
    throw std::invalid_argument("kl_divergence: shape mismatch");
  if (params.mu.rows == 0) throw std::invalid_argument("kl_divergence: empty batch");
  double total = 0.0;
  for (std::size_t k = 0; k < params.mu.data.size(); ++k) {
    const double lv = params.logvar.data[k];
    const double m = params.mu.data[k];
    total += 0.5 * (std::exp(lv) + m * m - 1.0 - lv);
  }
  return total / static_cast<double>(params.mu.rows);
}

NoiseDraws draw_noise(const BvaeModel& model, std::size_t batch, bool training,
                      rng::Stream& latent_stream, rng::Stream& dropout_stream) {
  NoiseDraws noise;
  noise.epsilon = RealMatrix(batch, model.config.latent_dim);
  for (double& e : noise.epsilon.data) e = latent_stream.normal();
  const double rate = model.config.dropout_rate;
  for (const DenseLayer& layer : model.encoder)
    noise.enc_masks.push_back(
        mask_like(batch, layer.fan_out(), rate, training, dropout_stream));
  for (std::size_t l = 0; l + 1 < model.decoder.size(); ++l)
    noise.dec_masks.push_back(mask_like(batch, model.decoder[l].fan_out(), rate,
                                        training, dropout_stream));
  return noise;
}

NoiseDraws zero_noise(const BvaeModel& model, std::size_t batch) {
  NoiseDraws noise;
  noise.epsilon = RealMatrix(batch, model.config.latent_dim);
  for (const DenseLayer& layer : model.encoder) {
    RealMatrix ones(batch, layer.fan_out());
    std::fill(ones.data.begin(), ones.data.end(), 1.0);
    noise.enc_masks.push_back(std::move(ones));
  }
  for (std::size_t l = 0; l + 1 < model.decoder.size(); ++l) {
    RealMatrix ones(batch, model.decoder[l].fan_out());
    std::fill(ones.data.begin(), ones.data.end(), 1.0);
    noise.dec_masks.push_back(std::move(ones));
  }
  return noise;
}

LossTerms loss_total(const BvaeModel& model, const nn::RealMatrix& x,
                     const nn::RealMatrix& y_onehot, double r_cat, double beta,
                     const NoiseDraws& noise) {
  return run_forward(model, x, y_onehot, r_cat, beta, noise).loss;
}

LossTerms loss_total(const BvaeModel& model, const nn::RealMatrix& x,
                     const nn::RealMatrix& y_onehot, double r_cat, double beta,
                     bool training, rng::Stream& latent_stream,
                     rng::Stream& dropout_stream) {
  const NoiseDraws noise =
      draw_noise(model, x.rows, training, latent_stream, dropout_stream);
  return loss_total(model, x, y_onehot, r_cat, beta, noise);
}

GradientStore backward(const BvaeModel& model, const nn::RealMatrix& x,
                       const nn::RealMatrix& y_onehot, double r_cat,
                       double beta, const NoiseDraws& noise) {
  const ForwardCache cache = run_forward(model, x, y_onehot, r_cat, beta, noise);
  GradientStore grads = make_gradient_store(model);
  grads.loss = cache.loss;
  grads.probs = cache.probs;
  const double batch = static_cast<double>(x.rows);

  // categorical path, scaled so gradients match r_cat * mean CE
  RealMatrix dz = nn::cross_entropy_grad_logits(y_onehot, cache.probs);
  for (double& v : dz.data) v *= r_cat / batch;

  const std::size_t hidden = model.decoder.size() - 1;
  const RealMatrix& last_a = hidden > 0 ? cache.dec_a[hidden - 1] : cache.z;
  grads.decoder[hidden].weights = nn::matmul_at_b(last_a, dz);
  accumulate_bias(grads.decoder[hidden].biases, dz);
  RealMatrix dh = nn::matmul(dz, nn::transpose(model.decoder[hidden].weights));

  for (std::size_t l = hidden; l-- > 0;) {
    elementwise_mul(dh, noise.dec_masks[l]);
    const RealMatrix act =
        nn::leaky_relu_grad(cache.dec_z[l], model.config.leaky_slope);
    elementwise_mul(dh, act);
    const RealMatrix& prev = l > 0 ? cache.dec_a[l - 1] : cache.z;
    grads.decoder[l].weights = nn::matmul_at_b(prev, dh);
    accumulate_bias(grads.decoder[l].biases, dh);
    dh = nn::matmul(dh, nn::transpose(model.decoder[l].weights));
  }

  // dh is now dL/dz; split into the mu and logvar paths, adding the KL terms
  RealMatrix dmu = dh;
  for (std::size_t k = 0; k < dmu.data.size(); ++k)
    dmu.data[k] += (beta / batch) * cache.mu.data[k];
  RealMatrix dlogvar(cache.logvar.rows, cache.logvar.cols);
  for (std::size_t k = 0; k < dlogvar.data.size(); ++k) {
    const double lv = cache.logvar.data[k];
    const double t = std::tanh(cache.logvar_raw.data[k] / kLogvarCap);
    const double dlv = dh.data[k] * noise.epsilon.data[k] * 0.5 * std::exp(0.5 * lv) +
                       (beta / batch) * 0.5 * (std::exp(lv) - 1.0);
    dlogvar.data[k] = dlv * (1.0 - t * t);
  }

  const RealMatrix& enc_last = model.encoder.empty() ? x : cache.enc_a.back();
  grads.mu_head.weights = nn::matmul_at_b(enc_last, dmu);
  accumulate_bias(grads.mu_head.biases, dmu);
  grads.logvar_head.weights = nn::matmul_at_b(enc_last, dlogvar);
  accumulate_bias(grads.logvar_head.biases, dlogvar);

  RealMatrix de = nn::matmul(dmu, nn::transpose(model.mu_head.weights));
  {
    const RealMatrix de_lv =
        nn::matmul(dlogvar, nn::transpose(model.logvar_head.weights));
    for (std::size_t k = 0; k < de.data.size(); ++k) de.data[k] += de_lv.data[k];
  }

  for (std::size_t l = model.encoder.size(); l-- > 0;) {
    elementwise_mul(de, noise.enc_masks[l]);
    const RealMatrix act =
        nn::leaky_relu_grad(cache.enc_z[l], model.config.leaky_slope);
    elementwise_mul(de, act);
    const RealMatrix& prev = l > 0 ? cache.enc_a[l - 1] : x;
    grads.encoder[l].weights = nn::matmul_at_b(prev, de);
    accumulate_bias(grads.encoder[l].biases, de);
    if (l > 0) de = nn::matmul(de, nn::transpose(model.encoder[l].weights));
  }
  return grads;
}

nn::RealMatrix latent_mean(const BvaeModel& model, const nn::RealMatrix& x) {
  return encode(model, x).mu;
}

GradientStore make_gradient_store(const BvaeModel& model) {
  GradientStore grads;
  for (const DenseLayer& layer : model.encoder) grads.encoder.push_back(zero_grad(layer));
  grads.mu_head = zero_grad(model.mu_head);
  grads.logvar_head = zero_grad(model.logvar_head);
  for (const DenseLayer& layer : model.decoder) grads.decoder.push_back(zero_grad(layer));
  return grads;
}

std::vector<nn::ParamBlock> param_blocks(BvaeModel& model, GradientStore& grads) {
  std::vector<nn::ParamBlock> blocks;
  const auto add = [&blocks](const std::string& name, DenseLayer& layer,
                             nn::LayerGrad& grad) {
    blocks.push_back({name + ".w", layer.weights.data, grad.weights.data});
    blocks.push_back({name + ".b", layer.biases, grad.biases});
  };
  for (std::size_t l = 0; l < model.encoder.size(); ++l)
    add("enc" + std::to_string(l), model.encoder[l], grads.encoder[l]);
  add("mu", model.mu_head, grads.mu_head);
  add("logvar", model.logvar_head, grads.logvar_head);
  for (std::size_t l = 0; l < model.decoder.size(); ++l)
    add("dec" + std::to_string(l), model.decoder[l], grads.decoder[l]);
  return blocks;
}

namespace {

nlohmann::json layer_to_json(const DenseLayer& layer) {
  nlohmann::json w = nlohmann::json::array();
  for (std::size_t i = 0; i < layer.weights.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < layer.weights.cols; ++j)
      row.push_back(layer.weights.at(i, j));
    w.push_back(std::move(row));
  }
  return {{"weights", std::move(w)}, {"biases", layer.biases}};
}

DenseLayer layer_from_json(const nlohmann::json& j, std::size_t fan_in,
                           std::size_t fan_out, Activation act, double slope,
                           const std::string& name) {
  const auto& w = j.at("weights");
  if (!w.is_array() || w.size() != fan_in)
    throw std::runtime_error("checkpoint: " + name + " expects " +
                             std::to_string(fan_in) + " weight rows");
  DenseLayer layer;
  layer.weights = RealMatrix(fan_in, fan_out);
  for (std::size_t i = 0; i < fan_in; ++i) {
    const auto& row = w.at(i);
    if (!row.is_array() || row.size() != fan_out)
      throw std::runtime_error("checkpoint: " + name + " row " +
                               std::to_string(i) + " expects " +
                               std::to_string(fan_out) + " entries");
    for (std::size_t jj = 0; jj < fan_out; ++jj)
      layer.weights.at(i, jj) = row.at(jj).get<double>();
  }
  layer.biases = j.at("biases").get<std::vector<double>>();
  if (layer.biases.size() != fan_out)
    throw std::runtime_error("checkpoint: " + name + " expects " +
                             std::to_string(fan_out) + " biases");
  layer.activation = act;
  layer.leaky_slope = slope;
  return layer;
}

}  // namespace

void save_checkpoint(const BvaeModel& model, const std::string& path,
                     std::uint64_t seed) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["tool_version"] = io::kVersion;
  j["rng_seed"] = seed;
  j["config"] = {{"input_dim", model.config.input_dim},
                 {"encoder_widths", model.config.encoder_widths},
                 {"latent_dim", model.config.latent_dim},
                 {"decoder_widths", model.config.decoder_widths},
                 {"output_dim", model.config.output_dim},
                 {"dropout_rate", model.config.dropout_rate},
                 {"leaky_slope", model.config.leaky_slope},
                 {"r_cat", model.config.r_cat},
                 {"beta", model.config.beta}};
  nlohmann::json enc = nlohmann::json::array();
  for (const DenseLayer& layer : model.encoder) enc.push_back(layer_to_json(layer));
  j["encoder"] = std::move(enc);
  j["mu_head"] = layer_to_json(model.mu_head);
  j["logvar_head"] = layer_to_json(model.logvar_head);
  nlohmann::json dec = nlohmann::json::array();
  for (const DenseLayer& layer : model.decoder) dec.push_back(layer_to_json(layer));
  j["decoder"] = std::move(dec);
  io::write_text_file(path, j.dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("checkpoint: " + path + " is not valid JSON: " + e.what());
  }
  if (j.value("format_version", 0) != 1)
    throw std::runtime_error("checkpoint: unsupported format_version in " + path);

  const auto& cj = j.at("config");
  BvaeConfig config;
  config.input_dim = cj.at("input_dim").get<std::size_t>();
  config.encoder_widths = cj.at("encoder_widths").get<std::vector<std::size_t>>();
  config.latent_dim = cj.at("latent_dim").get<std::size_t>();
  config.decoder_widths = cj.at("decoder_widths").get<std::vector<std::size_t>>();
  config.output_dim = cj.at("output_dim").get<std::size_t>();
  config.dropout_rate = cj.at("dropout_rate").get<double>();
  config.leaky_slope = cj.at("leaky_slope").get<double>();
  config.r_cat = cj.at("r_cat").get<double>();
  config.beta = cj.at("beta").get<double>();
  validate_config(config);

  Checkpoint ckpt;
  ckpt.seed = j.value("rng_seed", 0ull);
  ckpt.model.config = config;

  const auto& enc = j.at("encoder");
  if (enc.size() != config.encoder_widths.size())
    throw std::runtime_error("checkpoint: encoder layer count mismatch");
  std::size_t prev = config.input_dim;
  for (std::size_t l = 0; l < enc.size(); ++l) {
    ckpt.model.encoder.push_back(
        layer_from_json(enc[l], prev, config.encoder_widths[l],
                        Activation::LeakyRelu, config.leaky_slope,
                        "encoder[" + std::to_string(l) + "]"));
    prev = config.encoder_widths[l];
  }
  ckpt.model.mu_head = layer_from_json(j.at("mu_head"), prev, config.latent_dim,
                                       Activation::Linear, config.leaky_slope,
                                       "mu_head");
  ckpt.model.logvar_head =
      layer_from_json(j.at("logvar_head"), prev, config.latent_dim,
                      Activation::Linear, config.leaky_slope, "logvar_head");

  const auto& dec = j.at("decoder");
  if (dec.size() != config.decoder_widths.size() + 1)
    throw std::runtime_error("checkpoint: decoder layer count mismatch");
  prev = config.latent_dim;
  for (std::size_t l = 0; l < config.decoder_widths.size(); ++l) {
    ckpt.model.decoder.push_back(
        layer_from_json(dec[l], prev, config.decoder_widths[l],
                        Activation::LeakyRelu, config.leaky_slope,
                        "decoder[" + std::to_string(l) + "]"));
    prev = config.decoder_widths[l];
  }
  ckpt.model.decoder.push_back(
      layer_from_json(dec[config.decoder_widths.size()], prev, config.output_dim,
                      Activation::Softmax, config.leaky_slope, "decoder[out]"));
  return ckpt;
}

}  // namespace entvae::bvae
