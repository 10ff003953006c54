#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "scatternet/neuralnet/layers.hpp"
#include "scatternet/neuralnet/loss.hpp"
#include "scatternet/neuralnet/tensor.hpp"
#include "scatternet/rng.hpp"

namespace scatternet::nn {

using Layer = std::variant<ConvLayer, ReluLayer, MaxPoolLayer, DenseLayer>;

/// Sequential layer stack ending in class logits.
class Network {
 public:
  explicit Network(Shape input_shape);

  /// Appends a layer; throws if it cannot consume the current output shape.
  /// A dense layer consumes the flattened tensor.
  Network& add(Layer layer);

  const Shape& input_shape() const { return input_shape_; }
  Shape output_shape() const { return shapes_.back(); }
  /// Shape entering layer i (i == layers().size() gives the output shape).
  const Shape& shape_at(std::size_t i) const { return shapes_.at(i); }

  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& layers() { return layers_; }

  /// Trainable blocks in layer order: for each conv/dense layer its weights,
  /// then its bias.
  std::vector<std::span<double>> parameter_blocks();
  std::size_t parameter_count() const;

 private:
  Shape input_shape_;
  std::vector<Layer> layers_;
  std::vector<Shape> shapes_;
};

/// Uniform on [-s, s], s = sqrt(6 / (fan_in + fan_out)); biases zero.
void initialize(Network& net, Rng& rng);

struct ForwardCache {
  /// inputs[i] is the tensor entering layer i; inputs.back() is the logits.
  std::vector<FeatureTensor> inputs;
  std::vector<std::vector<std::size_t>> argmax;  // per layer, pooling only

  std::span<const double> logits() const { return inputs.back().data(); }
};

ForwardCache forward(const Network& net, const FeatureTensor& input);

/// Gradient blocks in Network::parameter_blocks() order.
struct Gradients {
  std::vector<std::vector<double>> blocks;
};

struct BackwardResult {
  LossReport loss;
  Gradients gradients;
};

BackwardResult backward(const Network& net, const ForwardCache& cache, const Target& target);

std::size_t predict(const Network& net, const FeatureTensor& input);

/// conv(k x k, relu) -> max_pool -> dense.
struct CnnConfig {
  Shape input{1, 16, 16};
  std::size_t conv_channels = 8;
  std::size_t kernel = 5;
  std::size_t pool = 2;
  std::size_t classes = 4;
};

Network build_cnn(const CnnConfig& cfg);

struct LabeledImage {
  FeatureTensor image;
  std::size_t label = 0;
};

struct TrainConfig {
  std::size_t epochs = 5;
  std::size_t batch_size = 16;
  double learning_rate = 0.05;
  double momentum = 0.9;
  std::uint64_t seed = 1;
};

struct EpochMetrics {
  std::size_t epoch = 0;
  double loss = 0.0;      // mean training loss over the epoch
  double accuracy = 0.0;  // on the evaluation set
};

/// Minibatch momentum SGD on the fused softmax cross-entropy. Training starts
/// from whatever parameters the network holds; there is no pre-training stage.
std::vector<EpochMetrics> train_classifier(Network& net, std::span<const LabeledImage> train,
                                           std::span<const LabeledImage> eval, const TrainConfig& cfg,
                                           const std::function<void(const EpochMetrics&)>& on_epoch = {});

double accuracy(const Network& net, std::span<const LabeledImage> data);

std::string metrics_csv(std::span<const EpochMetrics> metrics);

std::string save_checkpoint(const Network& net);
Network load_checkpoint(std::istream& in);

/// First-layer kernels tiled left to right (input channel 0), one-pixel gaps.
std::string first_layer_kernels_pgm(const Network& net);

}  // namespace scatternet::nn
