#include "scatternet/neuralnet/layers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scatternet::nn {

ConvLayer ConvLayer::zeros(std::size_t out_ch, std::size_t in_ch, std::size_t kh, std::size_t kw, std::size_t stride) {
  ConvLayer l;
  l.out_channels = out_ch;
  l.in_channels = in_ch;
  l.kernel_h = kh;
  l.kernel_w = kw;
  l.stride = stride;
  l.kernels.assign(out_ch * in_ch * kh * kw, 0.0);
  l.bias.assign(out_ch, 0.0);
  l.validate();
  return l;
}

void ConvLayer::validate() const {
  if (out_channels < 1 || in_channels < 1) throw std::invalid_argument("ConvLayer: channel counts must be >= 1");
  if (kernel_h % 2 == 0 || kernel_w % 2 == 0) throw std::invalid_argument("ConvLayer: kernel sides must be odd");
  if (stride < 1) throw std::invalid_argument("ConvLayer: stride must be >= 1");
  if (kernels.size() != out_channels * in_channels * kernel_h * kernel_w || bias.size() != out_channels) {
    throw std::invalid_argument("ConvLayer: parameter storage does not match its shape");
  }
}

Shape ConvLayer::output_shape(const Shape& in) const {
  if (in.channels != in_channels) {
    throw std::invalid_argument("conv2d: input has " + std::to_string(in.channels) + " channels, layer expects " +
                                std::to_string(in_channels));
  }
  if (in.height < kernel_h || in.width < kernel_w) throw std::invalid_argument("conv2d: input smaller than kernel");
  return {out_channels, (in.height - kernel_h) / stride + 1, (in.width - kernel_w) / stride + 1};
}

Shape MaxPoolLayer::output_shape(const Shape& in) const {
  if (window < 1 || stride < 1) throw std::invalid_argument("max_pool: window and stride must be >= 1");
  if (window > in.height || window > in.width) throw std::invalid_argument("max_pool: window larger than input");
  return {in.channels, (in.height - window) / stride + 1, (in.width - window) / stride + 1};
}

DenseLayer DenseLayer::zeros(std::size_t out, std::size_t in) {
  DenseLayer l;
  l.out_features = out;
  l.in_features = in;
  l.weights.assign(out * in, 0.0);
  l.bias.assign(out, 0.0);
  l.validate();
  return l;
}

void DenseLayer::validate() const {
  if (out_features < 1 || in_features < 1) throw std::invalid_argument("DenseLayer: sizes must be >= 1");
  if (weights.size() != out_features * in_features || bias.size() != out_features) {
    throw std::invalid_argument("DenseLayer: parameter storage does not match its shape");
  }
}

FeatureTensor conv2d(const FeatureTensor& input, const ConvLayer& layer) {
  layer.validate();
  const Shape os = layer.output_shape(input.shape());
  FeatureTensor out(os);
  const std::size_t s = layer.stride;
  for (std::size_t o = 0; o < os.channels; ++o) {
    for (std::size_t y = 0; y < os.height; ++y) {
      for (std::size_t x = 0; x < os.width; ++x) {
        double acc = layer.bias[o];
        for (std::size_t i = 0; i < layer.in_channels; ++i) {
          for (std::size_t ky = 0; ky < layer.kernel_h; ++ky) {
            for (std::size_t kx = 0; kx < layer.kernel_w; ++kx) {
              acc += layer.kernel(o, i, ky, kx) * input(i, y * s + ky, x * s + kx);
            }
          }
        }
        out(o, y, x) = acc;
      }
    }
  }
  return out;
}

ConvGradients conv2d_backward(const FeatureTensor& input, const ConvLayer& layer, const FeatureTensor& grad_output) {
  const Shape os = layer.output_shape(input.shape());
  if (!(grad_output.shape() == os)) throw std::invalid_argument("conv2d_backward: gradient shape mismatch");
  ConvGradients g{FeatureTensor(input.shape()), std::vector<double>(layer.kernels.size(), 0.0),
                  std::vector<double>(layer.out_channels, 0.0)};
  const std::size_t s = layer.stride;
  const std::size_t kh = layer.kernel_h;
  const std::size_t kw = layer.kernel_w;
  for (std::size_t o = 0; o < os.channels; ++o) {
    for (std::size_t y = 0; y < os.height; ++y) {
      for (std::size_t x = 0; x < os.width; ++x) {
        const double go = grad_output(o, y, x);
        g.bias[o] += go;
        for (std::size_t i = 0; i < layer.in_channels; ++i) {
          const std::size_t kbase = (o * layer.in_channels + i) * kh * kw;
          for (std::size_t ky = 0; ky < kh; ++ky) {
            for (std::size_t kx = 0; kx < kw; ++kx) {
              g.kernels[kbase + ky * kw + kx] += go * input(i, y * s + ky, x * s + kx);
              g.input(i, y * s + ky, x * s + kx) += go * layer.kernels[kbase + ky * kw + kx];
            }
          }
        }
      }
    }
  }
  return g;
}

PoolResult max_pool(const FeatureTensor& input, std::size_t window, std::size_t stride) {
  const Shape os = MaxPoolLayer{window, stride}.output_shape(input.shape());
  PoolResult r{FeatureTensor(os), std::vector<std::size_t>(os.size())};
  const std::size_t h = input.height();
  const std::size_t w = input.width();
  std::size_t j = 0;
  for (std::size_t c = 0; c < os.channels; ++c) {
    for (std::size_t y = 0; y < os.height; ++y) {
      for (std::size_t x = 0; x < os.width; ++x, ++j) {
        // Row-major scan with strict '>' keeps the lowest linear index on ties.
        std::size_t best = (c * h + y * stride) * w + x * stride;
        double best_v = input.data()[best];
        for (std::size_t wy = 0; wy < window; ++wy) {
          for (std::size_t wx = 0; wx < window; ++wx) {
            const std::size_t idx = (c * h + y * stride + wy) * w + x * stride + wx;
            if (input.data()[idx] > best_v) {
              best_v = input.data()[idx];
              best = idx;
            }
          }
        }
        r.output.data()[j] = best_v;
        r.argmax[j] = best;
      }
    }
  }
  return r;
}

FeatureTensor max_pool_backward(const Shape& input_shape, std::span<const std::size_t> argmax,
                                const FeatureTensor& grad_output) {
  if (argmax.size() != grad_output.size()) throw std::invalid_argument("max_pool_backward: argmax size mismatch");
  FeatureTensor g(input_shape);
  for (std::size_t j = 0; j < argmax.size(); ++j) g.data()[argmax[j]] += grad_output.data()[j];
  return g;
}

double relu(double x) { return x > 0.0 ? x : 0.0; }

FeatureTensor relu(const FeatureTensor& x) {
  FeatureTensor y(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) y.data()[i] = relu(x.data()[i]);
  return y;
}

FeatureTensor relu_backward(const FeatureTensor& input, const FeatureTensor& grad_output) {
  if (!(input.shape() == grad_output.shape())) throw std::invalid_argument("relu_backward: shape mismatch");
  FeatureTensor g(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) g.data()[i] = input.data()[i] > 0.0 ? grad_output.data()[i] : 0.0;
  return g;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

FeatureTensor dense(const FeatureTensor& input, const DenseLayer& layer) {
  layer.validate();
  if (input.size() != layer.in_features) {
    throw std::invalid_argument("dense: input has " + std::to_string(input.size()) + " features, layer expects " +
                                std::to_string(layer.in_features));
  }
  FeatureTensor out(Shape{layer.out_features, 1, 1});
  const auto in = input.data();
  for (std::size_t o = 0; o < layer.out_features; ++o) {
    double acc = layer.bias[o];
    const double* row = layer.weights.data() + o * layer.in_features;
    for (std::size_t i = 0; i < layer.in_features; ++i) acc += row[i] * in[i];
    out.data()[o] = acc;
  }
  return out;
}

DenseGradients dense_backward(const FeatureTensor& input, const DenseLayer& layer, const FeatureTensor& grad_output) {
  if (input.size() != layer.in_features || grad_output.size() != layer.out_features) {
    throw std::invalid_argument("dense_backward: shape mismatch");
  }
  DenseGradients g{FeatureTensor(input.shape()), std::vector<double>(layer.weights.size(), 0.0),
                   std::vector<double>(grad_output.data().begin(), grad_output.data().end())};
  const auto in = input.data();
  auto gin = g.input.data();
  for (std::size_t o = 0; o < layer.out_features; ++o) {
    const double go = grad_output.data()[o];
    const double* row = layer.weights.data() + o * layer.in_features;
    double* grow = g.weights.data() + o * layer.in_features;
    for (std::size_t i = 0; i < layer.in_features; ++i) {
      grow[i] = go * in[i];
      gin[i] += row[i] * go;
    }
  }
  return g;
}

}  // namespace scatternet::nn
