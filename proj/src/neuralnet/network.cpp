#include "scatternet/neuralnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "scatternet/io.hpp"
#include "scatternet/optim.hpp"

namespace scatternet::nn {

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

Network::Network(Shape input_shape) : input_shape_(input_shape), shapes_{input_shape} {
  if (input_shape.size() == 0) throw std::invalid_argument("Network: empty input shape");
}

Network& Network::add(Layer layer) {
  const Shape in = shapes_.back();
  const Shape out = std::visit(Overloaded{
                                   [&](const ConvLayer& l) { return l.output_shape(in); },
                                   [&](const ReluLayer&) { return in; },
                                   [&](const MaxPoolLayer& l) { return l.output_shape(in); },
                                   [&](const DenseLayer& l) {
                                     l.validate();
                                     if (l.in_features != in.size()) {
                                       throw std::invalid_argument("Network: dense layer expects " +
                                                                   std::to_string(l.in_features) + " inputs, got " +
                                                                   std::to_string(in.size()));
                                     }
                                     return Shape{l.out_features, 1, 1};
                                   },
                               },
                               layer);
  layers_.push_back(std::move(layer));
  shapes_.push_back(out);
  return *this;
}

std::vector<std::span<double>> Network::parameter_blocks() {
  std::vector<std::span<double>> blocks;
  for (auto& layer : layers_) {
    if (auto* c = std::get_if<ConvLayer>(&layer)) {
      blocks.emplace_back(c->kernels);
      blocks.emplace_back(c->bias);
    } else if (auto* d = std::get_if<DenseLayer>(&layer)) {
      blocks.emplace_back(d->weights);
      blocks.emplace_back(d->bias);
    }
  }
  return blocks;
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) {
    if (const auto* c = std::get_if<ConvLayer>(&layer)) n += c->kernels.size() + c->bias.size();
    if (const auto* d = std::get_if<DenseLayer>(&layer)) n += d->weights.size() + d->bias.size();
  }
  return n;
}

void initialize(Network& net, Rng& rng) {
  for (auto& layer : net.layers()) {
    if (auto* c = std::get_if<ConvLayer>(&layer)) {
      const double area = static_cast<double>(c->kernel_h * c->kernel_w);
      const double s = std::sqrt(6.0 / (area * static_cast<double>(c->in_channels + c->out_channels)));
      for (double& w : c->kernels) w = rng.uniform(-s, s);
      std::fill(c->bias.begin(), c->bias.end(), 0.0);
    } else if (auto* d = std::get_if<DenseLayer>(&layer)) {
      const double s = std::sqrt(6.0 / static_cast<double>(d->in_features + d->out_features));
      for (double& w : d->weights) w = rng.uniform(-s, s);
      std::fill(d->bias.begin(), d->bias.end(), 0.0);
    }
  }
}

ForwardCache forward(const Network& net, const FeatureTensor& input) {
  if (!(input.shape() == net.input_shape())) throw std::invalid_argument("forward: input shape mismatch");
  ForwardCache cache;
  cache.inputs.reserve(net.layers().size() + 1);
  cache.argmax.resize(net.layers().size());
  cache.inputs.push_back(input);
  for (std::size_t i = 0; i < net.layers().size(); ++i) {
    const FeatureTensor& x = cache.inputs.back();
    FeatureTensor y = std::visit(Overloaded{
                                     [&](const ConvLayer& l) { return conv2d(x, l); },
                                     [&](const ReluLayer&) { return relu(x); },
                                     [&](const MaxPoolLayer& l) {
                                       auto r = max_pool(x, l.window, l.stride);
                                       cache.argmax[i] = std::move(r.argmax);
                                       return std::move(r.output);
                                     },
                                     [&](const DenseLayer& l) { return dense(x, l); },
                                 },
                                 net.layers()[i]);
    cache.inputs.push_back(std::move(y));
  }
  return cache;
}

BackwardResult backward(const Network& net, const ForwardCache& cache, const Target& target) {
  if (cache.inputs.size() != net.layers().size() + 1) throw std::invalid_argument("backward: cache/network mismatch");
  BackwardResult r;
  r.loss = softmax_cross_entropy(cache.logits(), target);

  const Shape& out_shape = cache.inputs.back().shape();
  FeatureTensor grad(out_shape, r.loss.grad_logits);
  std::vector<std::vector<double>> reversed;  // blocks collected back to front
  for (std::size_t i = net.layers().size(); i-- > 0;) {
    const FeatureTensor& x = cache.inputs[i];
    const Layer& layer = net.layers()[i];
    if (const auto* c = std::get_if<ConvLayer>(&layer)) {
      auto g = conv2d_backward(x, *c, grad);
      reversed.push_back(std::move(g.bias));
      reversed.push_back(std::move(g.kernels));
      grad = std::move(g.input);
    } else if (const auto* d = std::get_if<DenseLayer>(&layer)) {
      auto g = dense_backward(x, *d, grad);
      reversed.push_back(std::move(g.bias));
      reversed.push_back(std::move(g.weights));
      grad = std::move(g.input);
    } else if (std::holds_alternative<ReluLayer>(layer)) {
      grad = relu_backward(x, grad);
    } else {
      grad = max_pool_backward(x.shape(), cache.argmax[i], grad);
    }
  }
  r.gradients.blocks.assign(std::make_move_iterator(reversed.rbegin()), std::make_move_iterator(reversed.rend()));
  return r;
}

std::size_t predict(const Network& net, const FeatureTensor& input) {
  const auto cache = forward(net, input);
  const auto z = cache.logits();
  return static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
}

Network build_cnn(const CnnConfig& cfg) {
  Network net(cfg.input);
  net.add(ConvLayer::zeros(cfg.conv_channels, cfg.input.channels, cfg.kernel, cfg.kernel));
  net.add(ReluLayer{});
  net.add(MaxPoolLayer{cfg.pool, cfg.pool});
  net.add(DenseLayer::zeros(cfg.classes, net.output_shape().size()));
  return net;
}

double accuracy(const Network& net, std::span<const LabeledImage> data) {
  if (data.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& s : data) hits += predict(net, s.image) == s.label ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

std::vector<EpochMetrics> train_classifier(Network& net, std::span<const LabeledImage> train,
                                           std::span<const LabeledImage> eval, const TrainConfig& cfg,
                                           const std::function<void(const EpochMetrics&)>& on_epoch) {
  if (train.empty()) throw std::invalid_argument("train_classifier: empty training set");
  if (cfg.batch_size < 1) throw std::invalid_argument("train_classifier: batch size must be >= 1");
  Rng rng(cfg.seed, 1);
  auto blocks = net.parameter_blocks();
  std::vector<optim::MomentumState> states;
  for (const auto& b : blocks) states.push_back(optim::MomentumState::create(b.size(), cfg.momentum, cfg.learning_rate));

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<EpochMetrics> history;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);

    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      std::vector<std::vector<double>> acc;
      for (std::size_t j = start; j < stop; ++j) {
        const auto& sample = train[order[j]];
        auto res = backward(net, forward(net, sample.image), sample.label);
        loss_sum += res.loss.loss;
        if (acc.empty()) {
          acc = std::move(res.gradients.blocks);
          continue;
        }
        for (std::size_t b = 0; b < acc.size(); ++b) {
          for (std::size_t k = 0; k < acc[b].size(); ++k) acc[b][k] += res.gradients.blocks[b][k];
        }
      }
      const double inv = 1.0 / static_cast<double>(stop - start);
      for (std::size_t b = 0; b < acc.size(); ++b) {
        for (double& v : acc[b]) v *= inv;
        optim::momentum_step(states[b], blocks[b], acc[b]);
      }
    }
    EpochMetrics m{epoch, loss_sum / static_cast<double>(train.size()), accuracy(net, eval)};
    history.push_back(m);
    if (on_epoch) on_epoch(m);
  }
  return history;
}

std::string metrics_csv(std::span<const EpochMetrics> metrics) {
  io::CsvTable t({"epoch", "loss", "accuracy"});
  for (const auto& m : metrics) t.add_row({static_cast<double>(m.epoch), m.loss, m.accuracy});
  return t.str();
}

std::string first_layer_kernels_pgm(const Network& net) {
  const ConvLayer* conv = nullptr;
  for (const auto& layer : net.layers()) {
    if ((conv = std::get_if<ConvLayer>(&layer))) break;
  }
  if (!conv) throw std::invalid_argument("first_layer_kernels_pgm: network has no convolution layer");
  const std::size_t kh = conv->kernel_h;
  const std::size_t kw = conv->kernel_w;
  const std::size_t width = conv->out_channels * (kw + 1) - 1;

  double lo = conv->kernel(0, 0, 0, 0);
  for (std::size_t o = 0; o < conv->out_channels; ++o)
    for (std::size_t y = 0; y < kh; ++y)
      for (std::size_t x = 0; x < kw; ++x) lo = std::min(lo, conv->kernel(o, 0, y, x));

  // Gaps take the minimum so they render black.
  std::vector<double> img(width * kh, lo);
  for (std::size_t o = 0; o < conv->out_channels; ++o)
    for (std::size_t y = 0; y < kh; ++y)
      for (std::size_t x = 0; x < kw; ++x) img[y * width + o * (kw + 1) + x] = conv->kernel(o, 0, y, x);
  return io::encode_pgm16(width, kh, img, io::GreyScale::kMinMax);
}

}  // namespace scatternet::nn
