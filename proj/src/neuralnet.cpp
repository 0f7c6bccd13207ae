#include "entvae/neuralnet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entvae::nn {

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
  RealMatrix c(a.rows, b.cols);
  const std::size_t n = b.cols;
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.row(i);
    double* crow = c.row(i);
    for (std::size_t p = 0; p < a.cols; ++p) {
      const double aip = arow[p];
      const double* brow = b.row(p);
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
  return c;
}

RealMatrix matmul_at_b(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows != b.rows) throw std::invalid_argument("matmul_at_b: shape mismatch");
  RealMatrix c(a.cols, b.cols);
  const std::size_t n = b.cols;
  for (std::size_t r = 0; r < a.rows; ++r) {
    const double* arow = a.row(r);
    const double* brow = b.row(r);
    for (std::size_t i = 0; i < a.cols; ++i) {
      const double ari = arow[i];
      double* crow = c.row(i);
      for (std::size_t j = 0; j < n; ++j) crow[j] += ari * brow[j];
    }
  }
  return c;
}

RealMatrix transpose(const RealMatrix& a) {
  RealMatrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

RealMatrix glorot_init(std::size_t fan_in, std::size_t fan_out, rng::Stream& stream) {
  if (fan_in < 1 || fan_out < 1)
    throw std::invalid_argument("glorot_init: fans must be >= 1");
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  RealMatrix w(fan_in, fan_out);
  for (double& v : w.data) v = stream.uniform(-limit, limit);
  return w;
}

RealMatrix dense_forward(const DenseLayer& layer, const RealMatrix& x) {
  if (x.cols != layer.fan_in())
    throw std::invalid_argument("dense_forward: input width " +
                                std::to_string(x.cols) + " != fan_in " +
                                std::to_string(layer.fan_in()));
  RealMatrix out = matmul(x, layer.weights);
  for (std::size_t i = 0; i < out.rows; ++i) {
    double* row = out.row(i);
    for (std::size_t j = 0; j < out.cols; ++j) row[j] += layer.biases[j];
  }
  return out;
}

RealMatrix leaky_relu(const RealMatrix& z, double slope) {
  if (slope <= 0.0) throw std::invalid_argument("leaky_relu: slope must be > 0");
  RealMatrix out = z;
  for (double& v : out.data) v = v >= 0.0 ? v : slope * v;
  return out;
}

RealMatrix leaky_relu_grad(const RealMatrix& z, double slope) {
  if (slope <= 0.0) throw std::invalid_argument("leaky_relu_grad: slope must be > 0");
  RealMatrix out = z;
  for (double& v : out.data) v = v >= 0.0 ? 1.0 : slope;
  return out;
}

DropoutResult dropout(const RealMatrix& x, double rate, bool training,
                      rng::Stream& stream) {
  if (rate < 0.0 || rate >= 1.0)
    throw std::invalid_argument("dropout: rate must be in [0, 1)");
  DropoutResult res;
  res.mask = RealMatrix(x.rows, x.cols);
  if (!training || rate == 0.0) {
    std::fill(res.mask.data.begin(), res.mask.data.end(), 1.0);
    res.output = x;
    return res;
  }
  const double scale = 1.0 / (1.0 - rate);
  res.output = RealMatrix(x.rows, x.cols);
  for (std::size_t k = 0; k < x.data.size(); ++k) {
    const double m = stream.uniform() >= rate ? scale : 0.0;
    res.mask.data[k] = m;
    res.output.data[k] = x.data[k] * m;
  }
  return res;
}

RealMatrix softmax(const RealMatrix& logits) {
  RealMatrix out(logits.rows, logits.cols);
  for (std::size_t i = 0; i < logits.rows; ++i) {
    const double* in = logits.row(i);
    double* res = out.row(i);
    double top = in[0];
    for (std::size_t j = 0; j < logits.cols; ++j) {
      if (std::isnan(in[j])) throw std::invalid_argument("softmax: NaN logit");
      top = std::max(top, in[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < logits.cols; ++j) {
      res[j] = std::exp(in[j] - top);
      sum += res[j];
    }
    for (std::size_t j = 0; j < logits.cols; ++j) res[j] /= sum;
  }
  return out;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  RealMatrix m(1, logits.size());
  m.data = logits;
  return softmax(m).data;
}

namespace {

void require_one_hot(std::span<const double> y) {
  double sum = 0.0;
  for (double v : y) {
    if (v != 0.0 && v != 1.0)
      throw std::invalid_argument("cross_entropy: y is not one-hot");
    sum += v;
  }
  if (sum != 1.0) throw std::invalid_argument("cross_entropy: y is not one-hot");
}

}  // namespace

double cross_entropy(std::span<const double> y_onehot, std::span<const double> p) {
  if (y_onehot.size() != p.size())
    throw std::invalid_argument("cross_entropy: size mismatch");
  require_one_hot(y_onehot);
  double loss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (y_onehot[i] == 0.0) continue;
    // log1p on the upper branch keeps p near 1 accurate (p - 1 is exact there)
    const double lp = p[i] > 0.5 ? std::log1p(p[i] - 1.0 + kLogFloor)
                                 : std::log(p[i] + kLogFloor);
    loss -= y_onehot[i] * lp;
  }
  return loss;
}

double cross_entropy_mean(const RealMatrix& y_onehot, const RealMatrix& p) {
  if (!y_onehot.same_shape(p))
    throw std::invalid_argument("cross_entropy_mean: shape mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < p.rows; ++i)
    total += cross_entropy({y_onehot.row(i), y_onehot.cols}, {p.row(i), p.cols});
  return total / static_cast<double>(p.rows);
}

RealMatrix cross_entropy_grad_logits(const RealMatrix& y_onehot, const RealMatrix& p) {
  if (!y_onehot.same_shape(p))
    throw std::invalid_argument("cross_entropy_grad_logits: shape mismatch");
  RealMatrix g(p.rows, p.cols);
  for (std::size_t k = 0; k < p.data.size(); ++k)
    g.data[k] = p.data[k] - y_onehot.data[k];
  return g;
}

double grad_check(std::span<ParamBlock> blocks,
                  const std::function<double()>& loss, double eps,
                  std::size_t max_entries_per_block) {
  if (eps <= 0.0) throw std::invalid_argument("grad_check: eps must be > 0");
  double worst = 0.0;
  for (ParamBlock& block : blocks) {
    if (block.values.size() != block.grads.size())
      throw std::invalid_argument("grad_check: grads do not match values in " +
                                  block.name);
    const std::size_t n = block.values.size();
    const std::size_t count = std::min(n, max_entries_per_block);
    const std::size_t stride = count > 0 ? std::max<std::size_t>(1, n / count) : 1;
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t idx = std::min(k * stride, n - 1);
      const double saved = block.values[idx];
      block.values[idx] = saved + eps;
      const double plus = loss();
      block.values[idx] = saved - eps;
      const double minus = loss();
      block.values[idx] = saved;
      const double numeric = (plus - minus) / (2.0 * eps);
      const double analytic = block.grads[idx];
      const double rel = std::abs(analytic - numeric) /
                         std::max(std::abs(analytic) + std::abs(numeric), 1e-8);
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

}  // namespace entvae::nn
