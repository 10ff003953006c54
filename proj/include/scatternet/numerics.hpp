#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace scatternet {

/// Pairwise (cascade) summation with a fixed split point. The reduction tree
/// depends only on the input length, so results are bit-reproducible and can
/// be computed by any number of workers that respect the same tree.
template <typename T>
T pairwise_sum(std::span<const T> values) {
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    T acc{};
    for (const T& v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Correctly rounded sum of a sequence of doubles (Shewchuk partials, as in
/// Python's math.fsum). The result depends only on the multiset of inputs,
/// never on their order. Inputs must be finite and the sum must not overflow.
double exact_sum(std::span<const double> values);

/// Incremental form of exact_sum.
class ExactAccumulator {
 public:
  void add(double x);
  double result() const;

 private:
  std::vector<double> partials_;
};

/// Central finite-difference weights for the derivative of the given order on
/// the stencil offsets -half_width..half_width (unit spacing), computed with
/// Fornberg's recursion. Divide by spacing^order before use.
std::vector<double> central_difference_weights(int order, int half_width);

}  // namespace scatternet
