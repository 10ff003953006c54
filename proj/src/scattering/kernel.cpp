#include <cmath>
#include <stdexcept>

#include "scatternet/scattering.hpp"

namespace scatternet {

const Complex& ScatterKernel::at(long dx, long dy) const {
  const long h = static_cast<long>(window / 2);
  if (dx < -h || dx > h || dy < -h || dy > h) throw std::out_of_range("ScatterKernel::at: offset outside window");
  return values[static_cast<std::size_t>(dy + h) * window + static_cast<std::size_t>(dx + h)];
}

ScatterKernel scatter_kernel(const ScatterPotential& potential, double k, std::size_t window, Complex bias) {
  if (window % 2 == 0) throw std::invalid_argument("scatter_kernel: window size must be odd");
  if (window < 3 || window > 9) throw std::invalid_argument("scatter_kernel: window must be 3, 5, 7 or 9");
  const Grid3D& g = potential.grid();
  if (window > g.extent[0] || window > g.extent[1]) {
    throw std::invalid_argument("scatter_kernel: window larger than the potential grid");
  }

  const std::size_t cx = g.extent[0] / 2;
  const std::size_t cy = g.extent[1] / 2;
  const std::size_t cz = g.extent[2] / 2;
  const std::size_t h = window / 2;

  ScatterKernel kernel;
  kernel.window = window;
  kernel.k = k;
  kernel.bias = bias;
  kernel.values.assign(window * window, Complex{});
  const Point3 neuron{0.0, 0.0, 0.0};
  for (std::size_t wy = 0; wy < window; ++wy) {
    for (std::size_t wx = 0; wx < window; ++wx) {
      const std::size_t ix = cx - h + wx;
      const std::size_t iy = cy - h + wy;
      const double x = (static_cast<double>(ix) - static_cast<double>(cx)) * g.spacing[0];
      const double y = (static_cast<double>(iy) - static_cast<double>(cy)) * g.spacing[1];
      Complex acc{};
      for (std::size_t iz = 0; iz < g.extent[2]; ++iz) {
        const double u = potential[g.ravel({ix, iy, iz})];
        if (u == 0.0) continue;
        if (ix == cx && iy == cy && iz == cz) continue;  // self-term regularised to 0
        const double z = (static_cast<double>(iz) - static_cast<double>(cz)) * g.spacing[2];
        acc += green_outgoing(neuron, Point3{x, y, z}, k) * u;
      }
      kernel.values[wy * window + wx] = acc;
    }
  }
  return kernel;
}

NeuronResponse neuron_response(const ScatterKernel& kernel, const WaveField<2>& patch) {
  const auto& e = patch.grid().extent;
  if (e[0] != kernel.window || e[1] != kernel.window) {
    throw std::invalid_argument("neuron_response: patch shape does not match the kernel window");
  }
  Complex acc{};
  for (std::size_t i = 0; i < kernel.values.size(); ++i) acc += kernel.values[i] * patch[i];
  acc += kernel.bias;
  const double s = std::abs(acc);
  return {s, s * s};
}

std::string kernel_csv(const ScatterKernel& kernel) {
  io::CsvTable t({"x", "y", "re", "im"});
  const long h = static_cast<long>(kernel.window / 2);
  for (long dy = -h; dy <= h; ++dy) {
    for (long dx = -h; dx <= h; ++dx) {
      const Complex& v = kernel.at(dx, dy);
      t.add_row({static_cast<double>(dx), static_cast<double>(dy), v.real(), v.imag()});
    }
  }
  return t.str();
}

std::string kernel_modulus_pgm(const ScatterKernel& kernel) {
  std::vector<double> m(kernel.values.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::abs(kernel.values[i]);
  return io::encode_pgm16(kernel.window, kernel.window, m, io::GreyScale::kMaxModulus);
}

}  // namespace scatternet
