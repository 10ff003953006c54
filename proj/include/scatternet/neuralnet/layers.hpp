#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scatternet/neuralnet/tensor.hpp"

namespace scatternet::nn {

/// Shared-weight convolution. Kernels are indexed [out][in][ky][kx] and
/// applied as a cross-correlation (no flip) over the valid region.
struct ConvLayer {
  std::size_t out_channels = 0;
  std::size_t in_channels = 0;
  std::size_t kernel_h = 0;
  std::size_t kernel_w = 0;
  std::size_t stride = 1;
  std::vector<double> kernels;
  std::vector<double> bias;

  /// Zero-initialised layer; kernel sides must be odd.
  static ConvLayer zeros(std::size_t out_ch, std::size_t in_ch, std::size_t kh, std::size_t kw,
                         std::size_t stride = 1);
  void validate() const;

  double& kernel(std::size_t o, std::size_t i, std::size_t y, std::size_t x) {
    return kernels[((o * in_channels + i) * kernel_h + y) * kernel_w + x];
  }
  double kernel(std::size_t o, std::size_t i, std::size_t y, std::size_t x) const {
    return kernels[((o * in_channels + i) * kernel_h + y) * kernel_w + x];
  }

  Shape output_shape(const Shape& in) const;
};

struct ReluLayer {};

struct MaxPoolLayer {
  std::size_t window = 2;
  std::size_t stride = 2;

  Shape output_shape(const Shape& in) const;
};

/// Fully connected layer over the flattened input; weights are [out][in].
struct DenseLayer {
  std::size_t out_features = 0;
  std::size_t in_features = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  static DenseLayer zeros(std::size_t out, std::size_t in);
  void validate() const;
};

FeatureTensor conv2d(const FeatureTensor& input, const ConvLayer& layer);

struct ConvGradients {
  FeatureTensor input;
  std::vector<double> kernels;
  std::vector<double> bias;
};

ConvGradients conv2d_backward(const FeatureTensor& input, const ConvLayer& layer, const FeatureTensor& grad_output);

struct PoolResult {
  FeatureTensor output;
  /// For each output element, the linear index of the input element it came from.
  std::vector<std::size_t> argmax;
};

/// Per-channel window maximum. Ties resolve to the lowest linear index.
PoolResult max_pool(const FeatureTensor& input, std::size_t window, std::size_t stride);

FeatureTensor max_pool_backward(const Shape& input_shape, std::span<const std::size_t> argmax,
                                const FeatureTensor& grad_output);

double relu(double x);
FeatureTensor relu(const FeatureTensor& x);
FeatureTensor relu_backward(const FeatureTensor& input, const FeatureTensor& grad_output);

double sigmoid(double x);

/// Output has shape (out_features, 1, 1).
FeatureTensor dense(const FeatureTensor& input, const DenseLayer& layer);

struct DenseGradients {
  FeatureTensor input;
  std::vector<double> weights;
  std::vector<double> bias;
};

DenseGradients dense_backward(const FeatureTensor& input, const DenseLayer& layer, const FeatureTensor& grad_output);

}  // namespace scatternet::nn
