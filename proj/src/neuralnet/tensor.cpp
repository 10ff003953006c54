#include "scatternet/neuralnet/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace scatternet::nn {

namespace {
void check_shape(const Shape& s) {
  if (s.channels < 1 || s.height < 1 || s.width < 1) {
    throw std::invalid_argument("FeatureTensor: every dimension must be >= 1");
  }
}
}  // namespace

FeatureTensor::FeatureTensor(Shape shape) : shape_(shape), data_(shape.size(), 0.0) { check_shape(shape); }

FeatureTensor::FeatureTensor(Shape shape, std::vector<double> values) : shape_(shape), data_(std::move(values)) {
  check_shape(shape);
  if (data_.size() != shape.size()) throw std::invalid_argument("FeatureTensor: value count != shape size");
  for (double v : data_) {
    if (!std::isfinite(v)) throw std::invalid_argument("FeatureTensor: non-finite value");
  }
}

}  // namespace scatternet::nn
