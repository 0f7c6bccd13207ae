#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "entvae/neuralnet.hpp"
#include "entvae/rng.hpp"

using namespace entvae;
using nn::Activation;
using nn::DenseLayer;
using nn::RealMatrix;

namespace {

RealMatrix random_matrix(std::size_t r, std::size_t c, rng::Stream& s) {
  RealMatrix m(r, c);
  for (double& v : m.data) v = s.normal();
  return m;
}

// Independent triple-loop oracle for x . W + b.
RealMatrix naive_dense(const RealMatrix& x, const RealMatrix& w,
                       const std::vector<double>& b) {
  RealMatrix out(x.rows, w.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < w.cols; ++j) {
      double acc = b[j];
      for (std::size_t k = 0; k < x.cols; ++k) acc += x.at(i, k) * w.at(k, j);
      out.at(i, j) = acc;
    }
  return out;
}

}  // namespace

TEST_CASE("glorot init: bounds, determinism, mean") {
  rng::Stream s1(1, rng::kInitStream);
  const RealMatrix single = nn::glorot_init(1, 1, s1);
  CHECK(std::abs(single.at(0, 0)) <= std::sqrt(3.0));

  rng::Stream s2(9, rng::kInitStream);
  rng::Stream s3(9, rng::kInitStream);
  const RealMatrix a = nn::glorot_init(8, 4, s2);
  const RealMatrix b = nn::glorot_init(8, 4, s3);
  CHECK(a.data == b.data);

  rng::Stream s4(33, rng::kInitStream);
  const RealMatrix big = nn::glorot_init(512, 256, s4);
  const double limit = std::sqrt(6.0 / 768.0);
  double mean = 0.0;
  for (double v : big.data) {
    CHECK(std::abs(v) <= limit);
    mean += v;
  }
  mean /= static_cast<double>(big.data.size());
  CHECK(std::abs(mean) < 0.01);

  CHECK_THROWS_AS(nn::glorot_init(0, 4, s4), std::invalid_argument);
}

TEST_CASE("dense forward: identity, bias-only, naive oracle") {
  DenseLayer id;
  id.weights = RealMatrix(3, 3);
  id.weights.at(0, 0) = id.weights.at(1, 1) = id.weights.at(2, 2) = 1.0;
  id.biases.assign(3, 0.0);
  rng::Stream s(4, 0);
  const RealMatrix x = random_matrix(5, 3, s);
  CHECK(nn::dense_forward(id, x).data == x.data);

  DenseLayer biased;
  biased.weights = RealMatrix(3, 2);
  biased.biases = {0.5, -1.5};
  const RealMatrix zeros(4, 3);
  const RealMatrix out = nn::dense_forward(biased, zeros);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(out.at(i, 0) == 0.5);
    CHECK(out.at(i, 1) == -1.5);
  }

  DenseLayer rand_layer;
  rand_layer.weights = random_matrix(7, 6, s);
  rand_layer.biases.resize(6);
  for (double& v : rand_layer.biases) v = s.normal();
  const RealMatrix xr = random_matrix(9, 7, s);
  const RealMatrix got = nn::dense_forward(rand_layer, xr);
  const RealMatrix want = naive_dense(xr, rand_layer.weights, rand_layer.biases);
  for (std::size_t k = 0; k < got.data.size(); ++k)
    CHECK(std::abs(got.data[k] - want.data[k]) < 1e-12);

  CHECK_THROWS_AS(nn::dense_forward(rand_layer, RealMatrix(2, 5)),
                  std::invalid_argument);
}

TEST_CASE("matmul_at_b and transpose agree with the naive route") {
  rng::Stream s(21, 0);
  const RealMatrix a = random_matrix(6, 4, s);
  const RealMatrix b = random_matrix(6, 5, s);
  const RealMatrix got = nn::matmul_at_b(a, b);
  const RealMatrix want = nn::matmul(nn::transpose(a), b);
  REQUIRE(got.rows == 4);
  REQUIRE(got.cols == 5);
  for (std::size_t k = 0; k < got.data.size(); ++k)
    CHECK(got.data[k] == doctest::Approx(want.data[k]).epsilon(1e-13));
}

TEST_CASE("leaky relu: values, derivative, monotone grid") {
  RealMatrix z(1, 3);
  z.data = {2.0, -2.0, 0.0};
  const RealMatrix f = nn::leaky_relu(z, 0.3);
  CHECK(f.data[0] == 2.0);
  CHECK(f.data[1] == doctest::Approx(-0.6));
  CHECK(f.data[2] == 0.0);

  const RealMatrix g = nn::leaky_relu_grad(z, 0.3);
  CHECK(g.data[0] == 1.0);
  CHECK(g.data[1] == 0.3);
  CHECK(g.data[2] == 1.0);  // z = 0 takes the right-hand slope

  // derivative at z = -1 vs central differences
  const double h = 1e-6;
  RealMatrix zp(1, 1), zm(1, 1);
  zp.data = {-1.0 + h};
  zm.data = {-1.0 - h};
  const double numeric =
      (nn::leaky_relu(zp, 0.3).data[0] - nn::leaky_relu(zm, 0.3).data[0]) / (2 * h);
  RealMatrix z1(1, 1);
  z1.data = {-1.0};
  CHECK(std::abs(nn::leaky_relu_grad(z1, 0.3).data[0] - numeric) < 1e-6);

  // monotone and continuous on a grid crossing zero
  double prev = -1e9;
  for (int i = -100; i <= 100; ++i) {
    RealMatrix zz(1, 1);
    zz.data = {i * 0.01};
    const double v = nn::leaky_relu(zz, 0.3).data[0];
    CHECK(v >= prev);
    prev = v;
  }

  CHECK_THROWS_AS(nn::leaky_relu(z, 0.0), std::invalid_argument);
}

TEST_CASE("dropout: passthrough, unbiasedness, mask semantics") {
  rng::Stream s(8, rng::kDropoutStream);
  RealMatrix ones(100, 1000);
  std::fill(ones.data.begin(), ones.data.end(), 1.0);

  const auto off = nn::dropout(ones, 0.0, true, s);
  CHECK(off.output.data == ones.data);

  const auto eval = nn::dropout(ones, 0.9, false, s);
  CHECK(eval.output.data == ones.data);
  for (double m : eval.mask.data) CHECK(m == 1.0);

  const auto train = nn::dropout(ones, 0.2, true, s);
  double mean = 0.0;
  for (double v : train.output.data) mean += v;
  mean /= static_cast<double>(train.output.data.size());
  CHECK(std::abs(mean - 1.0) < 0.01);
  // mask entries are exactly 0 or the inverted scale, and output = x * mask
  for (std::size_t k = 0; k < train.mask.data.size(); ++k) {
    const double m = train.mask.data[k];
    CHECK((m == 0.0 || m == doctest::Approx(1.25)));
    CHECK(train.output.data[k] == m);
  }

  CHECK_THROWS_AS(nn::dropout(ones, 1.0, true, s), std::invalid_argument);
  CHECK_THROWS_AS(nn::dropout(ones, -0.1, true, s), std::invalid_argument);
}

TEST_CASE("softmax: symmetry, shift invariance, frozen value") {
  const auto half = nn::softmax(std::vector<double>{0.0, 0.0});
  CHECK(half[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half[1] == doctest::Approx(0.5).epsilon(1e-12));

  const auto big = nn::softmax(std::vector<double>{1000.0, 1000.0});
  CHECK(big[0] == doctest::Approx(0.5).epsilon(1e-12));

  // e/(e+1), 1/(e+1) from the analytic oracle
  const auto p = nn::softmax(std::vector<double>{1.0, 0.0});
  CHECK(p[0] == doctest::Approx(0.731058578630005).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.268941421369995).epsilon(1e-12));

  rng::Stream s(5, 0);
  for (int trial = 0; trial < 50; ++trial) {
    RealMatrix logits = random_matrix(4, 2, s);
    const RealMatrix probs = nn::softmax(logits);
    RealMatrix shifted = logits;
    for (std::size_t i = 0; i < shifted.rows; ++i)
      for (std::size_t j = 0; j < shifted.cols; ++j) shifted.at(i, j) += 7.5;
    const RealMatrix probs2 = nn::softmax(shifted);
    for (std::size_t i = 0; i < probs.rows; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < probs.cols; ++j) {
        CHECK(probs.at(i, j) > 0.0);
        CHECK(probs.at(i, j) == doctest::Approx(probs2.at(i, j)).epsilon(1e-12));
        sum += probs.at(i, j);
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
  }

  RealMatrix bad(1, 2);
  bad.data = {std::nan(""), 0.0};
  CHECK_THROWS_AS(nn::softmax(bad), std::invalid_argument);
}

TEST_CASE("cross entropy: perfect, ln2, gradient vs finite differences") {
  const std::vector<double> y{1.0, 0.0};
  CHECK(std::abs(nn::cross_entropy(y, std::vector<double>{1.0, 0.0})) <= 1e-12);
  CHECK(nn::cross_entropy(y, std::vector<double>{0.5, 0.5}) ==
        doctest::Approx(0.693147180559945).epsilon(1e-9));

  // gradient wrt logits is p - y; verify against central differences
  rng::Stream s(12, 0);
  for (int trial = 0; trial < 20; ++trial) {
    RealMatrix logits = random_matrix(1, 2, s);
    RealMatrix yy(1, 2);
    yy.data = {1.0, 0.0};
    const RealMatrix analytic = nn::cross_entropy_grad_logits(yy, nn::softmax(logits));
    for (std::size_t j = 0; j < 2; ++j) {
      const double eps = 1e-6;
      RealMatrix lp = logits, lm = logits;
      lp.at(0, j) += eps;
      lm.at(0, j) -= eps;
      const double fp = nn::cross_entropy(
          {yy.row(0), 2}, {nn::softmax(lp).row(0), 2});
      const double fm = nn::cross_entropy(
          {yy.row(0), 2}, {nn::softmax(lm).row(0), 2});
      const double numeric = (fp - fm) / (2 * eps);
      const double rel = std::abs(analytic.at(0, j) - numeric) /
                         std::max(std::abs(analytic.at(0, j)) + std::abs(numeric), 1e-8);
      CHECK(rel < 1e-5);
    }
  }

  CHECK_THROWS_AS(nn::cross_entropy(std::vector<double>{0.5, 0.5},
                                    std::vector<double>{0.5, 0.5}),
                  std::invalid_argument);
}

// Hand-wired 3 -> 4 -> 2 classifier with analytic backprop, checked against
// the central-difference engine.
TEST_CASE("grad_check on a tiny dense classifier") {
  rng::Stream init(77, rng::kInitStream);
  DenseLayer l1{nn::glorot_init(3, 4, init), {0.1, -0.2, 0.3, 0.0},
                Activation::LeakyRelu, 0.3};
  DenseLayer l2{nn::glorot_init(4, 2, init), {0.05, -0.05},
                Activation::Softmax, 0.3};

  rng::Stream ds(78, 0);
  const RealMatrix x = random_matrix(6, 3, ds);
  RealMatrix y(6, 2);
  for (std::size_t i = 0; i < 6; ++i) y.at(i, i % 2) = 1.0;

  nn::LayerGrad g1{RealMatrix(3, 4), std::vector<double>(4, 0.0)};
  nn::LayerGrad g2{RealMatrix(4, 2), std::vector<double>(2, 0.0)};

  const auto forward_loss = [&] {
    const RealMatrix z1 = nn::dense_forward(l1, x);
    const RealMatrix a1 = nn::leaky_relu(z1, l1.leaky_slope);
    const RealMatrix z2 = nn::dense_forward(l2, a1);
    return nn::cross_entropy_mean(y, nn::softmax(z2));
  };

  // analytic gradients
  {
    const RealMatrix z1 = nn::dense_forward(l1, x);
    const RealMatrix a1 = nn::leaky_relu(z1, l1.leaky_slope);
    const RealMatrix z2 = nn::dense_forward(l2, a1);
    const RealMatrix p = nn::softmax(z2);
    RealMatrix dz2 = nn::cross_entropy_grad_logits(y, p);
    for (double& v : dz2.data) v /= static_cast<double>(x.rows);
    g2.weights = nn::matmul_at_b(a1, dz2);
    for (std::size_t j = 0; j < 2; ++j) {
      g2.biases[j] = 0.0;
      for (std::size_t i = 0; i < dz2.rows; ++i) g2.biases[j] += dz2.at(i, j);
    }
    RealMatrix da1 = nn::matmul(dz2, nn::transpose(l2.weights));
    const RealMatrix act = nn::leaky_relu_grad(z1, l1.leaky_slope);
    RealMatrix dz1 = da1;
    for (std::size_t k = 0; k < dz1.data.size(); ++k) dz1.data[k] *= act.data[k];
    g1.weights = nn::matmul_at_b(x, dz1);
    for (std::size_t j = 0; j < 4; ++j) {
      g1.biases[j] = 0.0;
      for (std::size_t i = 0; i < dz1.rows; ++i) g1.biases[j] += dz1.at(i, j);
    }
  }

  std::vector<nn::ParamBlock> blocks{
      {"l1.w", l1.weights.data, g1.weights.data},
      {"l1.b", l1.biases, g1.biases},
      {"l2.w", l2.weights.data, g2.weights.data},
      {"l2.b", l2.biases, g2.biases},
  };
  const double err1 = nn::grad_check(blocks, forward_loss, 1e-5);
  CHECK(err1 < 1e-4);
  const double err2 = nn::grad_check(blocks, forward_loss, 1e-5);
  CHECK(err1 == err2);  // deterministic

  // zero input forces zero weight gradient in the first layer
  const RealMatrix x0(6, 3);
  const RealMatrix z1 = nn::dense_forward(l1, x0);
  RealMatrix dz1(6, 4);
  std::fill(dz1.data.begin(), dz1.data.end(), 0.37);
  const RealMatrix gw = nn::matmul_at_b(x0, dz1);
  for (double v : gw.data) CHECK(v == 0.0);
}
