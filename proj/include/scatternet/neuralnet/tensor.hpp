#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scatternet::nn {

struct Shape {
  std::size_t channels = 1;
  std::size_t height = 1;
  std::size_t width = 1;

  std::size_t size() const { return channels * height * width; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Stack of real feature maps, stored channel-major then row-major.
class FeatureTensor {
 public:
  FeatureTensor() = default;
  explicit FeatureTensor(Shape shape);  // zeros
  FeatureTensor(Shape shape, std::vector<double> values);

  const Shape& shape() const { return shape_; }
  std::size_t channels() const { return shape_.channels; }
  std::size_t height() const { return shape_.height; }
  std::size_t width() const { return shape_.width; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t c, std::size_t y, std::size_t x) {
    return data_[(c * shape_.height + y) * shape_.width + x];
  }
  double operator()(std::size_t c, std::size_t y, std::size_t x) const {
    return data_[(c * shape_.height + y) * shape_.width + x];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const FeatureTensor&, const FeatureTensor&) = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

}  // namespace scatternet::nn
