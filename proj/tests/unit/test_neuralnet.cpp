#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "scatternet/harness/gratings.hpp"
#include "scatternet/harness/verify.hpp"
#include "scatternet/neuralnet/layers.hpp"
#include "scatternet/neuralnet/loss.hpp"
#include "scatternet/neuralnet/network.hpp"
#include "scatternet/oracles.hpp"
#include "scatternet/rng.hpp"

using namespace scatternet;
using namespace scatternet::nn;

namespace {

FeatureTensor random_tensor(Shape s, Rng& rng) {
  std::vector<double> v(s.size());
  for (auto& x : v) x = rng.normal();
  return FeatureTensor(s, std::move(v));
}

std::vector<double> random_distribution(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  for (auto& x : p) x = rng.uniform() + 1e-3;
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= s;
  return p;
}

}  // namespace

TEST_SUITE("neuralnet") {
  TEST_CASE("tensor invariants") {
    CHECK_THROWS_AS(FeatureTensor(Shape{0, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(FeatureTensor(Shape{1, 2, 2}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(FeatureTensor(Shape{1, 1, 1}, {INFINITY}), std::invalid_argument);
  }

  TEST_CASE("delta kernel returns the interior") {
    Rng rng(31);
    const auto x = random_tensor({1, 7, 6}, rng);
    auto layer = ConvLayer::zeros(1, 1, 3, 3);
    layer.kernel(0, 0, 1, 1) = 1.0;
    const auto y = conv2d(x, layer);
    REQUIRE(y.shape() == Shape{1, 5, 4});
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 4; ++c) CHECK(y(0, r, c) == x(0, r + 1, c + 1));
  }

  TEST_CASE("1x1 convolution is affine") {
    auto layer = ConvLayer::zeros(1, 1, 1, 1);
    layer.kernels[0] = 2.5;
    layer.bias[0] = -0.5;
    CHECK(conv2d(FeatureTensor({1, 1, 1}, {3.0}), layer)(0, 0, 0) == 7.0);
  }

  TEST_CASE("two-tap kernel on a constant image doubles it") {
    auto layer = ConvLayer::zeros(1, 1, 1, 3);
    layer.kernel(0, 0, 0, 0) = 1.0;
    layer.kernel(0, 0, 0, 1) = 1.0;
    const auto y = conv2d(FeatureTensor({1, 4, 9}, std::vector<double>(36, 1.75)), layer);
    for (double v : y.data()) CHECK(v == 3.5);
  }

  TEST_CASE("convolution output shape and preconditions") {
    const auto layer = ConvLayer::zeros(2, 3, 3, 5, 2);
    CHECK(layer.output_shape({3, 9, 10}) == Shape{2, 4, 3});
    CHECK_THROWS_AS(ConvLayer::zeros(1, 1, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(conv2d(FeatureTensor({2, 9, 10}), layer), std::invalid_argument);
    CHECK_THROWS_AS(conv2d(FeatureTensor({3, 2, 10}), layer), std::invalid_argument);
  }

  TEST_CASE("convolution equals direct summation on integer data") {
    Rng rng(32);
    for (int t = 0; t < 200; ++t) {
      const std::size_t in_c = 1 + rng.index(3);
      const std::size_t out_c = 1 + rng.index(3);
      const std::size_t kh = 1 + 2 * rng.index(5);
      const std::size_t kw = 1 + 2 * rng.index(5);
      const std::size_t stride = 1 + rng.index(2);
      const std::size_t h = kh + rng.index(6);
      const std::size_t w = kw + rng.index(6);
      auto layer = ConvLayer::zeros(out_c, in_c, kh, kw, stride);
      for (auto& v : layer.kernels) v = static_cast<double>(rng.index(11)) - 5.0;
      for (auto& v : layer.bias) v = static_cast<double>(rng.index(11)) - 5.0;
      std::vector<double> x(in_c * h * w);
      for (auto& v : x) v = static_cast<double>(rng.index(21)) - 10.0;
      const auto got = conv2d(FeatureTensor({in_c, h, w}, x), layer);
      const auto ref = oracle::conv2d(x, in_c, h, w, layer.kernels, layer.bias, out_c, kh, kw, stride);
      CHECK(std::equal(got.data().begin(), got.data().end(), ref.begin(), ref.end()));
    }
  }

  TEST_CASE("convolution is translation covariant") {
    Rng rng(33);
    auto layer = ConvLayer::zeros(2, 2, 3, 3);
    for (auto& w : layer.kernels) w = rng.normal();
    const auto x = random_tensor({2, 10, 10}, rng);
    FeatureTensor shifted({2, 10, 10});
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t r = 0; r < 10; ++r)
        for (std::size_t col = 1; col < 10; ++col) shifted(c, r, col) = x(c, r, col - 1);
    const auto a = conv2d(x, layer);
    const auto b = conv2d(shifted, layer);
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t col = 1; col < 8; ++col) CHECK(b(c, r, col) == a(c, r, col - 1));
  }

  TEST_CASE("pooling shape, constants and ties") {
    const auto p = max_pool(FeatureTensor({1, 4, 4}, std::vector<double>(16, 2.5)), 2, 2);
    CHECK(p.output.shape() == Shape{1, 2, 2});
    for (double v : p.output.data()) CHECK(v == 2.5);
    CHECK(p.argmax == std::vector<std::size_t>{0, 2, 8, 10});
    CHECK(MaxPoolLayer{}.output_shape({3, 4, 4}) == Shape{3, 2, 2});
    CHECK_THROWS_AS(max_pool(FeatureTensor({1, 3, 3}), 4, 1), std::invalid_argument);
  }

  TEST_CASE("pooling equals brute-force window maxima") {
    Rng rng(34);
    for (int t = 0; t < 200; ++t) {
      const std::size_t c = 1 + rng.index(3);
      const std::size_t window = 1 + rng.index(3);
      const std::size_t stride = 1 + rng.index(3);
      const auto x = random_tensor({c, 6, 6}, rng);
      const auto got = max_pool(x, window, stride);
      const auto ref = oracle::max_pool(x.data(), c, 6, 6, window, stride);
      CHECK(std::equal(got.output.data().begin(), got.output.data().end(), ref.begin(), ref.end()));
      for (std::size_t i = 0; i < got.argmax.size(); ++i) CHECK(x.data()[got.argmax[i]] == got.output.data()[i]);
    }
  }

  TEST_CASE("pooling twice by 2 equals pooling once by 4") {
    Rng rng(35);
    for (int t = 0; t < 50; ++t) {
      const std::size_t side = 4 * (1 + rng.index(5));
      const auto x = random_tensor({1 + rng.index(3), side, side}, rng);
      CHECK(max_pool(max_pool(x, 2, 2).output, 2, 2).output == max_pool(x, 4, 4).output);
    }
  }

  TEST_CASE("activations") {
    CHECK(relu(-3.2) == 0.0);
    CHECK(relu(3.2) == 3.2);
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(-800.0) >= 0.0);
    CHECK(sigmoid(800.0) == 1.0);
    const std::vector<double> z(3, 0.7);
    for (double q : softmax(z)) CHECK(q == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }

  TEST_CASE("softmax normalisation and shift invariance") {
    Rng rng(36);
    for (int t = 0; t < 500; ++t) {
      std::vector<double> z(2 + rng.index(9));
      for (auto& x : z) x = 10.0 * rng.normal();
      const double shift = 50.0 * rng.normal();
      std::vector<double> zs(z);
      for (auto& x : zs) x += shift;
      const double temperature = std::exp(rng.uniform(-3.0, 3.0));
      for (const auto& [a, b] : {std::pair{softmax(z), softmax(zs)},
                                 std::pair{softmax_temperature(z, temperature), softmax_temperature(zs, temperature)}}) {
        CHECK(std::abs(std::accumulate(a.begin(), a.end(), 0.0) - 1.0) <= 1e-12);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12);
      }
    }
  }

  TEST_CASE("temperature softmax examples") {
    const std::vector<double> z{1.0, 0.0};
    const auto q = softmax_temperature(z, 1.0);
    CHECK(q[0] == doctest::Approx(0.731059).epsilon(1e-6));
    CHECK(q[1] == doctest::Approx(0.268941).epsilon(1e-6));
    const auto s = softmax(z);
    CHECK(std::abs(q[0] - s[0]) <= 1e-15);
    const std::vector<double> spread{-1.0, -0.2, 0.4, 1.0};
    for (double v : softmax_temperature(spread, 1e6)) CHECK(std::abs(v - 0.25) < 1e-5);
    CHECK_THROWS_AS(softmax_temperature(z, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(softmax_temperature(z, -1.0), std::invalid_argument);
  }

  TEST_CASE("temperature keeps the argmax and raises the entropy") {
    Rng rng(37);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> z(2 + rng.index(8));
      for (auto& x : z) x = 3.0 * rng.normal();
      const auto top = std::max_element(z.begin(), z.end()) - z.begin();
      double previous = -1.0;
      for (int i = 0; i < 20; ++i) {
        const double temperature = std::pow(10.0, -2.0 + 0.25 * i);
        const auto q = softmax_temperature(z, temperature);
        CHECK(std::max_element(q.begin(), q.end()) - q.begin() == top);
        const double h = entropy(q);
        CHECK(h >= previous - 1e-15);
        previous = h;
      }
    }
  }

  TEST_CASE("entropy examples and preconditions") {
    CHECK(entropy(std::vector<double>{0.0, 1.0, 0.0}) == 0.0);
    CHECK(std::abs(entropy(std::vector<double>(4, 0.25)) - std::log(4.0)) <= 1e-12);
    CHECK(std::abs(entropy(std::vector<double>{0.5, 0.5}) - std::log(2.0)) <= 1e-12);
    for (std::size_t n = 1; n <= 64; ++n) {
      CHECK(std::abs(entropy(std::vector<double>(n, 1.0 / static_cast<double>(n))) -
                     std::log(static_cast<double>(n))) <= 1e-12);
    }
    CHECK_THROWS_AS(entropy(std::vector<double>{-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(entropy(std::vector<double>{0.5, 0.6}), std::invalid_argument);
  }

  TEST_CASE("cross entropy examples") {
    const std::vector<double> u(4, 0.25);
    CHECK(std::abs(cross_entropy(u, u) - std::log(4.0)) <= 1e-12);
    const double ce = cross_entropy(std::vector<double>{0.0, 0.0, 1.0}, std::vector<double>{0.0010, 0.0001, 0.9989});
    CHECK(std::abs(ce + std::log(0.9989)) <= 1e-9);
    CHECK(ce == doctest::Approx(0.001101).epsilon(1e-3));
    CHECK(std::abs(cross_entropy(std::vector<double>{1.0, 0.0}, std::vector<double>{0.5, 0.5}) - std::log(2.0)) <=
          1e-12);
    CHECK_THROWS_AS(cross_entropy(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0}), std::domain_error);
    Rng rng(38);
    for (int t = 0; t < 100; ++t) {
      const auto p = random_distribution(rng, 2 + rng.index(10));
      CHECK(std::abs(cross_entropy(p, p) - entropy(p)) <= 1e-12);
    }
  }

  TEST_CASE("kl divergence") {
    const std::vector<double> p{0.2, 0.3, 0.5};
    CHECK(kl_divergence(p, p) == 0.0);
    CHECK(std::abs(kl_divergence(std::vector<double>{1.0, 0.0}, std::vector<double>{0.5, 0.5}) - std::log(2.0)) <=
          1e-12);
    CHECK_THROWS_AS(kl_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{0.0, 1.0}), std::domain_error);
    Rng rng(39);
    for (int t = 0; t < 10000; ++t) {
      const std::size_t n = 2 + rng.index(10);
      const auto a = random_distribution(rng, n);
      const auto b = random_distribution(rng, n);
      CHECK(kl_divergence(a, b) >= -1e-12);
    }
  }

  TEST_CASE("fused loss gradient is q - p") {
    const std::vector<double> z{0.3, -1.2, 2.0};
    const auto r = softmax_cross_entropy(z, Target{std::size_t{2}});
    const auto q = softmax(z);
    for (std::size_t i = 0; i < 3; ++i) CHECK(r.grad_logits[i] == q[i] - (i == 2 ? 1.0 : 0.0));
    CHECK(r.loss == doctest::Approx(-std::log(q[2])).epsilon(1e-14));
    const std::vector<double> p{0.2, 0.3, 0.5};
    const auto soft = softmax_cross_entropy(z, Target{p});
    for (std::size_t i = 0; i < 3; ++i) CHECK(soft.grad_logits[i] == q[i] - p[i]);
    CHECK_THROWS_AS(softmax_cross_entropy(z, Target{std::size_t{3}}), std::invalid_argument);
  }

  TEST_CASE("single dense layer: logit gradient is q - p") {
    Network net({1, 1, 2});
    net.add(DenseLayer::zeros(3, 2));
    auto& d = std::get<DenseLayer>(net.layers()[0]);
    d.weights = {1.0, 0.0, 0.0, 1.0, 0.5, -0.5};
    d.bias = {0.1, 0.2, 0.3};
    const FeatureTensor x({1, 1, 2}, {0.4, -0.7});
    const auto cache = forward(net, x);
    const auto r = backward(net, cache, Target{std::size_t{1}});
    const auto q = softmax(cache.logits());
    // With the bias entering the logit with unit weight, its gradient is q - p.
    for (std::size_t i = 0; i < 3; ++i) CHECK(r.gradients.blocks[1][i] == q[i] - (i == 1 ? 1.0 : 0.0));
    CHECK(r.loss.grad_logits == r.gradients.blocks[1]);
  }

  TEST_CASE("gradients of a 2-conv + pool + dense net on 8x8 match finite differences") {
    // Central differences only estimate the derivative where no ReLU sign or
    // pooling argmax flips within +-step; draw points until one is kink-free.
    std::optional<harness::GradientCheck> found;
    for (std::uint64_t attempt = 0; attempt < 16 && !found; ++attempt) {
      Rng rng(40, attempt);
      Network net({1, 8, 8});
      net.add(ConvLayer::zeros(3, 1, 3, 3)).add(ReluLayer{}).add(ConvLayer::zeros(2, 3, 3, 3)).add(ReluLayer{});
      net.add(MaxPoolLayer{2, 2}).add(DenseLayer::zeros(3, 8));
      initialize(net, rng);
      for (auto block : net.parameter_blocks())
        for (double& b : block) b += 0.1 * rng.normal();
      const auto x = random_tensor({1, 8, 8}, rng);
      const auto r = harness::check_gradients(net, x, Target{std::size_t{1}}, 1e-3);
      if (r.kink_crossings == 0) found = r;
    }
    REQUIRE(found.has_value());
    CHECK(found->max_rel_error < 1e-4);
  }

  TEST_CASE("zero input and zero weights: only the final bias has a gradient") {
    Network net({1, 6, 6});
    net.add(ConvLayer::zeros(2, 1, 3, 3)).add(ReluLayer{}).add(MaxPoolLayer{2, 2}).add(DenseLayer::zeros(3, 8));
    const auto r = backward(net, forward(net, FeatureTensor({1, 6, 6})), Target{std::size_t{0}});
    const auto& g = r.gradients.blocks;
    REQUIRE(g.size() == 4);
    for (std::size_t b = 0; b < 3; ++b)
      for (double v : g[b]) CHECK(v == 0.0);
    CHECK(g[3][0] == doctest::Approx(1.0 / 3.0 - 1.0));
    CHECK(g[3][1] == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("network shape checks") {
    Network net({1, 8, 8});
    net.add(ConvLayer::zeros(2, 1, 3, 3));
    CHECK(net.output_shape() == Shape{2, 6, 6});
    CHECK_THROWS_AS(net.add(ConvLayer::zeros(2, 3, 3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(net.add(DenseLayer::zeros(2, 71)), std::invalid_argument);
    CHECK_THROWS_AS(forward(net, FeatureTensor({1, 7, 8})), std::invalid_argument);
    const auto cnn = build_cnn({});
    CHECK(cnn.output_shape() == Shape{4, 1, 1});
    CHECK(cnn.parameter_count() == 8 * 25 + 8 + 4 * 8 * 6 * 6 + 4);
  }

  TEST_CASE("initialisation range and biases") {
    Rng rng(41);
    Network net = build_cnn({});
    initialize(net, rng);
    const auto blocks = net.parameter_blocks();
    const double s_conv = std::sqrt(6.0 / (25.0 + 200.0));
    for (double w : blocks[0]) CHECK(std::abs(w) <= s_conv);
    for (double b : blocks[1]) CHECK(b == 0.0);
    for (double b : blocks[3]) CHECK(b == 0.0);
  }

  TEST_CASE("checkpoint round-trip preserves every parameter") {
    Rng rng(42);
    Network net = build_cnn({});
    initialize(net, rng);
    const auto text = save_checkpoint(net);
    std::istringstream in(text);
    Network back = load_checkpoint(in);
    CHECK(back.input_shape() == net.input_shape());
    auto a = net.parameter_blocks();
    auto b = back.parameter_blocks();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::equal(a[i].begin(), a[i].end(), b[i].begin(), b[i].end()));
    CHECK(save_checkpoint(back) == text);
    CHECK(text.find("[layer 0] type=input shape=1x16x16\n[layer 1] type=conv shape=8x1x5x5") != std::string::npos);
    std::istringstream bad("# scatternet-checkpoint v1 kind=rbm\n");
    CHECK_THROWS(load_checkpoint(bad));
  }

  TEST_CASE("training is deterministic and learns a small grating task") {
    harness::GratingDataset data;
    data.samples_per_class = 60;
    const auto train = harness::gen_gratings(data, 5, 0);
    data.samples_per_class = 30;
    const auto test = harness::gen_gratings(data, 5, 1);
    TrainConfig cfg;
    cfg.epochs = 3;
    auto run = [&] {
      Rng rng(6);
      Network net = build_cnn({});
      initialize(net, rng);
      const auto metrics = train_classifier(net, train, test, cfg);
      return std::pair{save_checkpoint(net), metrics};
    };
    const auto [ckpt_a, metrics_a] = run();
    const auto [ckpt_b, metrics_b] = run();
    CHECK(ckpt_a == ckpt_b);
    REQUIRE(metrics_a.size() == 3);
    CHECK(metrics_csv(metrics_a) == metrics_csv(metrics_b));
    CHECK(metrics_a.back().accuracy > 0.5);
    CHECK(metrics_csv(metrics_a).rfind("epoch,loss,accuracy\n", 0) == 0);
  }

  TEST_CASE("first-layer kernel image") {
    Rng rng(43);
    Network net = build_cnn({});
    initialize(net, rng);
    // 8 kernels of width 5 with one-pixel gaps.
    CHECK(first_layer_kernels_pgm(net).rfind("P5\n47 5\n65535\n", 0) == 0);
  }
}
