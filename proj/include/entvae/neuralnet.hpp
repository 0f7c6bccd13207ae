#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "entvae/rng.hpp"

// Minimal dense-network primitives with exact analytic gradients. All
// arithmetic is double precision; forward ops are pure and reentrant.
namespace entvae::nn {

struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }

  bool same_shape(const RealMatrix& o) const {
    return rows == o.rows && cols == o.cols;
  }
};

// a (m x k) . b (k x n)
RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);
// a^T . b with a (k x m), b (k x n) -> (m x n); the weight-gradient shape.
RealMatrix matmul_at_b(const RealMatrix& a, const RealMatrix& b);
RealMatrix transpose(const RealMatrix& a);

enum class Activation { LeakyRelu, Linear, Softmax };

struct DenseLayer {
  RealMatrix weights;          // fan_in x fan_out
  std::vector<double> biases;  // fan_out
  Activation activation = Activation::Linear;
  double leaky_slope = 0.3;

  std::size_t fan_in() const { return weights.rows; }
  std::size_t fan_out() const { return weights.cols; }
};

// Per-layer gradients, shape-congruent with their DenseLayer.
struct LayerGrad {
  RealMatrix weights;
  std::vector<double> biases;
};

// Uniform on [-L, L] with L = sqrt(6 / (fan_in + fan_out)).
RealMatrix glorot_init(std::size_t fan_in, std::size_t fan_out, rng::Stream& stream);

// Pre-activation batch: x . W + b broadcast per row.
RealMatrix dense_forward(const DenseLayer& layer, const RealMatrix& x);

RealMatrix leaky_relu(const RealMatrix& z, double slope);
// Elementwise derivative; exactly 1 at z = 0.
RealMatrix leaky_relu_grad(const RealMatrix& z, double slope);

struct DropoutResult {
  RealMatrix output;
  RealMatrix mask;  // 0 or 1/(1-rate) while training; all ones in evaluation
};

// Inverted dropout: survivors are pre-scaled so the expectation is
// unchanged; backward multiplies by the same mask.
DropoutResult dropout(const RealMatrix& x, double rate, bool training,
                      rng::Stream& stream);

// Row-wise softmax with max-subtraction. Rejects non-finite logits.
RealMatrix softmax(const RealMatrix& logits);
std::vector<double> softmax(const std::vector<double>& logits);

inline constexpr double kLogFloor = 1e-12;

// -sum_i y_i log(p_i + floor); y must be one-hot.
double cross_entropy(std::span<const double> y_onehot, std::span<const double> p);
// Batch mean of the above over rows.
double cross_entropy_mean(const RealMatrix& y_onehot, const RealMatrix& p);
// d(loss)/d(logits) = p - y for softmax + cross-entropy, per row (unscaled).
RealMatrix cross_entropy_grad_logits(const RealMatrix& y_onehot, const RealMatrix& p);

// One named slab of parameters paired with its analytic gradient.
struct ParamBlock {
  std::string name;
  std::span<double> values;
  std::span<const double> grads;
};

// Central-difference gradient verification. Perturbs every selected
// parameter in place (restoring it afterwards), recomputes `loss`, and
// returns max_i |g_analytic - g_numeric| / max(|g_a| + |g_n|, 1e-8).
// Blocks larger than max_entries_per_block are strided deterministically.
// The loss closure must be noise-free: dropout off, any sampling frozen.
double grad_check(std::span<ParamBlock> blocks,
                  const std::function<double()>& loss, double eps,
                  std::size_t max_entries_per_block = static_cast<std::size_t>(-1));

}  // namespace entvae::nn
