#include <algorithm>
#include <cmath>

#include "checks.hpp"
#include "scatternet/neuralnet/layers.hpp"
#include "scatternet/neuralnet/loss.hpp"
#include "scatternet/neuralnet/network.hpp"
#include "scatternet/oracles.hpp"

namespace scatternet::harness::detail {

namespace {

nn::FeatureTensor random_tensor(nn::Shape s, Rng& rng) {
  std::vector<double> v(s.size());
  for (auto& x : v) x = rng.normal();
  return nn::FeatureTensor(s, std::move(v));
}

double integer(Rng& rng) { return static_cast<double>(static_cast<long>(rng.index(11)) - 5); }

std::size_t argmax(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::vector<double> random_logits(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> z(n);
  for (auto& x : z) x = rng.uniform(lo, hi);
  return z;
}

std::vector<double> random_distribution(Rng& rng, std::size_t n) {
  return nn::softmax(random_logits(rng, n, -4.0, 4.0));
}

double gradient_error(std::vector<nn::Layer> layers, nn::Shape in, Rng& rng) {
  nn::Network net(in);
  for (auto& l : layers) net.add(std::move(l));
  nn::initialize(net, rng);
  for (auto block : net.parameter_blocks()) {
    for (double& b : block) b += 0.1 * rng.normal();  // biases too, so every path is active
  }
  const auto x = random_tensor(in, rng);
  const std::size_t classes = net.output_shape().size();
  return check_gradients(net, x, nn::Target{rng.index(classes)}, 1e-3).max_rel_error;
}

}  // namespace

void add_neuralnet_checks(std::vector<Check>& out) {
  out.push_back({"neuralnet.conv_translation", [](std::uint64_t seed) {
                   Rng rng(seed, 300);
                   auto layer = nn::ConvLayer::zeros(3, 2, 3, 5);
                   for (auto& w : layer.kernels) w = rng.normal();
                   for (auto& b : layer.bias) b = rng.normal();
                   const auto x = random_tensor({2, 12, 14}, rng);
                   nn::FeatureTensor shifted({2, 12, 14});
                   for (std::size_t c = 0; c < 2; ++c)
                     for (std::size_t y = 0; y < 12; ++y)
                       for (std::size_t i = 0; i < 14; ++i) shifted(c, y, i) = i == 0 ? rng.normal() : x(c, y, i - 1);
                   const auto a = nn::conv2d(x, layer);
                   const auto b = nn::conv2d(shifted, layer);
                   double mismatches = 0.0;
                   for (std::size_t o = 0; o < 3; ++o)
                     for (std::size_t y = 0; y < a.height(); ++y)
                       for (std::size_t i = 0; i + 1 < a.width(); ++i) mismatches += a(o, y, i) == b(o, y, i + 1) ? 0 : 1;
                   return make_check("neuralnet.conv_translation", mismatches, "<=", 0.0);
                 }});
  out.push_back({"neuralnet.softmax_normalised", [](std::uint64_t seed) {
                   Rng rng(seed, 301);
                   double worst = 0.0;
                   for (int t = 0; t < 1000; ++t) {
                     const auto z = random_logits(rng, 2 + rng.index(9), -20.0, 20.0);
                     const double c = rng.uniform(-50.0, 50.0);
                     const double temp = std::exp(rng.uniform(-3.0, 3.0));
                     std::vector<double> zc(z);
                     for (auto& v : zc) v += c;
                     for (const auto& [p, q] : {std::pair{nn::softmax(z), nn::softmax(zc)},
                                                std::pair{nn::softmax_temperature(z, temp),
                                                          nn::softmax_temperature(zc, temp)}}) {
                       double sum = 0.0;
                       for (std::size_t i = 0; i < p.size(); ++i) {
                         sum += p[i];
                         worst = std::max(worst, std::abs(p[i] - q[i]));
                       }
                       worst = std::max(worst, std::abs(sum - 1.0));
                     }
                   }
                   return make_check("neuralnet.softmax_normalised", worst, "<=", 1e-12);
                 }});
  out.push_back({"neuralnet.argmax_invariance", [](std::uint64_t seed) {
                   Rng rng(seed, 302);
                   double mismatches = 0.0;
                   for (int t = 0; t < 1000; ++t) {
                     const auto z = random_logits(rng, 2 + rng.index(9), -1.0, 1.0);
                     for (int e = -3; e <= 6; ++e) {
                       mismatches += argmax(nn::softmax_temperature(z, std::pow(10.0, e))) == argmax(z) ? 0 : 1;
                     }
                   }
                   return make_check("neuralnet.argmax_invariance", mismatches, "<=", 0.0);
                 }});
  out.push_back({"neuralnet.entropy_monotone_temperature", [](std::uint64_t seed) {
                   Rng rng(seed, 303);
                   // Non-decreasing up to one rounding step of the entropy sum.
                   double violations = 0.0;
                   for (int t = 0; t < 200; ++t) {
                     const auto z = random_logits(rng, 2 + rng.index(9), -5.0, 5.0);
                     double prev = -1.0;
                     for (int i = 0; i < 20; ++i) {
                       const double temp = 0.05 * std::pow(2000.0, i / 19.0);
                       const double h = nn::entropy(nn::softmax_temperature(z, temp));
                       if (h < prev - 1e-15) violations += 1.0;
                       prev = h;
                     }
                   }
                   return make_check("neuralnet.entropy_monotone_temperature", violations, "<=", 0.0);
                 }});
  out.push_back({"neuralnet.temperature_unit", [](std::uint64_t seed) {
                   Rng rng(seed, 304);
                   double worst = 0.0;
                   for (int t = 0; t < 1000; ++t) {
                     const auto z = random_logits(rng, 2 + rng.index(9), -1.0, 1.0);
                     const auto a = nn::softmax(z);
                     const auto b = nn::softmax_temperature(z, 1.0);
                     for (std::size_t i = 0; i < z.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
                   }
                   return make_check("neuralnet.temperature_unit", worst, "<=", 1e-15);
                 }});
  out.push_back({"neuralnet.temperature_hot", [](std::uint64_t seed) {
                   Rng rng(seed, 312);
                   double worst = 0.0;
                   for (int t = 0; t < 1000; ++t) {
                     const auto z = random_logits(rng, 2 + rng.index(9), -1.0, 1.0);
                     const auto q = nn::softmax_temperature(z, 1e6);
                     for (double x : q) worst = std::max(worst, std::abs(x - 1.0 / static_cast<double>(z.size())));
                   }
                   return make_check("neuralnet.temperature_hot", worst, "<", 1e-5);
                 }});
  out.push_back({"neuralnet.pool_composition", [](std::uint64_t seed) {
                   Rng rng(seed, 305);
                   double mismatches = 0.0;
                   for (int t = 0; t < 50; ++t) {
                     const std::size_t side = 4 * (1 + rng.index(6));
                     const auto x = random_tensor({1 + rng.index(3), side, side}, rng);
                     const auto twice = nn::max_pool(nn::max_pool(x, 2, 2).output, 2, 2).output;
                     const auto once = nn::max_pool(x, 4, 4).output;
                     mismatches += twice == once ? 0 : 1;
                   }
                   return make_check("neuralnet.pool_composition", mismatches, "<=", 0.0);
                 }});
  out.push_back({"neuralnet.conv_oracle", [](std::uint64_t seed) {
                   Rng rng(seed, 306);
                   double mismatches = 0.0;
                   for (int t = 0; t < 200; ++t) {
                     const std::size_t in_c = 1 + rng.index(3);
                     const std::size_t out_c = 1 + rng.index(3);
                     const std::size_t kh = 1 + 2 * rng.index(5);
                     const std::size_t kw = 1 + 2 * rng.index(5);
                     const std::size_t stride = 1 + rng.index(2);
                     const std::size_t h = kh + rng.index(8);
                     const std::size_t w = kw + rng.index(8);
                     auto layer = nn::ConvLayer::zeros(out_c, in_c, kh, kw, stride);
                     for (auto& v : layer.kernels) v = integer(rng);
                     for (auto& v : layer.bias) v = integer(rng);
                     std::vector<double> px(in_c * h * w);
                     for (auto& v : px) v = integer(rng);
                     const nn::FeatureTensor x({in_c, h, w}, px);
                     const auto got = nn::conv2d(x, layer);
                     const auto ref =
                         oracle::conv2d(px, in_c, h, w, layer.kernels, layer.bias, out_c, kh, kw, stride);
                     mismatches += std::equal(ref.begin(), ref.end(), got.data().begin(), got.data().end()) ? 0 : 1;
                   }
                   return make_check("neuralnet.conv_oracle", mismatches, "<=", 0.0);
                 }});
  out.push_back({"neuralnet.pool_oracle", [](std::uint64_t seed) {
                   Rng rng(seed, 307);
                   const auto four = nn::max_pool(random_tensor({1, 4, 4}, rng), 2, 2).output.shape();
                   double mismatches = four == nn::Shape{1, 2, 2} ? 0.0 : 1.0;
                   for (int t = 0; t < 200; ++t) {
                     const std::size_t c = 1 + rng.index(3);
                     const std::size_t window = 1 + rng.index(3);
                     const std::size_t stride = 1 + rng.index(3);
                     const std::size_t h = window + rng.index(7);
                     const std::size_t w = window + rng.index(7);
                     const auto x = random_tensor({c, h, w}, rng);
                     const auto got = nn::max_pool(x, window, stride).output;
                     const auto ref = oracle::max_pool(x.data(), c, h, w, window, stride);
                     mismatches += std::equal(ref.begin(), ref.end(), got.data().begin(), got.data().end()) ? 0 : 1;
                   }
                   return make_check("neuralnet.pool_oracle", mismatches, "<=", 0.0);
                 }});
  out.push_back({"neuralnet.gradient_check", [](std::uint64_t seed) {
                   // Candidate points are drawn until one has no kink within one
                   // step of any parameter. ReLU and max pooling are positively
                   // homogeneous, so scaling the conv layer by 4 and the dense
                   // weights by 1/4 keeps the function and widens the margins.
                   Rng rng(seed, 308);
                   for (int attempt = 0; attempt < 16; ++attempt) {
                     nn::Network net = nn::build_cnn({});
                     nn::initialize(net, rng);
                     auto blocks = net.parameter_blocks();
                     for (auto block : blocks) {
                       for (double& b : block) b += 0.1 * rng.normal();
                     }
                     for (double& w : blocks[0]) w *= 4.0;
                     for (double& w : blocks[1]) w *= 4.0;
                     for (double& w : blocks[2]) w /= 4.0;
                     const auto x = random_tensor(net.input_shape(), rng);
                     const auto r = check_gradients(net, x, nn::Target{rng.index(4)}, 1e-3);
                     if (r.kink_crossings == 0) return make_check("neuralnet.gradient_check", r.max_rel_error, "<", 1e-4);
                   }
                   return make_check("neuralnet.gradient_check", INFINITY, "<", 1e-4);
                 }});
  out.push_back({"neuralnet.gradient_check_layers", [](std::uint64_t seed) {
                   Rng rng(seed, 309);
                   const nn::Shape in{2, 8, 8};
                   double worst = 0.0;
                   worst = std::max(worst, gradient_error({nn::ConvLayer::zeros(2, 2, 3, 3)}, in, rng));
                   worst = std::max(worst, gradient_error({nn::DenseLayer::zeros(3, in.size())}, in, rng));
                   worst = std::max(worst, gradient_error({nn::ConvLayer::zeros(2, 2, 3, 3), nn::ReluLayer{},
                                                           nn::DenseLayer::zeros(3, 72)},
                                                          in, rng));
                   worst = std::max(worst, gradient_error({nn::ConvLayer::zeros(2, 2, 3, 3), nn::MaxPoolLayer{2, 2},
                                                           nn::DenseLayer::zeros(3, 18)},
                                                          in, rng));
                   worst = std::max(worst, gradient_error({nn::ConvLayer::zeros(3, 2, 3, 3), nn::ReluLayer{},
                                                           nn::ConvLayer::zeros(4, 3, 3, 3), nn::MaxPoolLayer{2, 2},
                                                           nn::DenseLayer::zeros(3, 16)},
                                                          in, rng));
                   return make_check("neuralnet.gradient_check_layers", worst, "<", 1e-4);
                 }});
  out.push_back({"neuralnet.entropy_examples", [](std::uint64_t) {
                   const double ln2 = std::log(2.0);
                   const double ln4 = std::log(4.0);
                   const std::vector<double> u4(4, 0.25);
                   const std::vector<double> p{0.0, 0.0, 1.0};
                   const std::vector<double> q{0.0010, 0.0001, 0.9989};
                   const std::vector<double> one_hot{0.0, 1.0, 0.0, 0.0};
                   const std::vector<double> half{0.5, 0.5};
                   const std::vector<double> first{1.0, 0.0};
                   double worst = 0.0;
                   worst = std::max(worst, std::abs(nn::entropy(one_hot)));
                   worst = std::max(worst, std::abs(nn::entropy(u4) - ln4));
                   worst = std::max(worst, std::abs(nn::entropy(half) - ln2));
                   worst = std::max(worst, std::abs(nn::cross_entropy(u4, u4) - ln4));
                   worst = std::max(worst, std::abs(nn::cross_entropy(first, half) - ln2));
                   worst = std::max(worst, std::abs(nn::kl_divergence(first, half) - ln2));
                   worst = std::max(worst, std::abs(nn::kl_divergence(u4, u4)));
                   worst = std::max(worst, std::abs(nn::cross_entropy(p, q) + std::log(0.9989)));
                   return make_check("neuralnet.entropy_examples", worst, "<=", 1e-12);
                 }});
  out.push_back({"neuralnet.cross_entropy_self", [](std::uint64_t seed) {
                   Rng rng(seed, 310);
                   double worst = 0.0;
                   for (int t = 0; t < 1000; ++t) {
                     const auto p = random_distribution(rng, 2 + rng.index(9));
                     worst = std::max(worst, std::abs(nn::cross_entropy(p, p) - nn::entropy(p)));
                   }
                   return make_check("neuralnet.cross_entropy_self", worst, "<=", 1e-12);
                 }});
  out.push_back({"neuralnet.kl_nonnegative", [](std::uint64_t seed) {
                   Rng rng(seed, 311);
                   double lowest = INFINITY;
                   for (int t = 0; t < 10000; ++t) {
                     const std::size_t n = 2 + rng.index(9);
                     const auto p = random_distribution(rng, n);
                     const auto q = random_distribution(rng, n);
                     lowest = std::min(lowest, nn::kl_divergence(p, q));
                   }
                   return make_check("neuralnet.kl_nonnegative", lowest, ">=", -1e-12);
                 }});
}

}  // namespace scatternet::harness::detail
