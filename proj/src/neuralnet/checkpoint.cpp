#include <stdexcept>
#include <string>

#include "scatternet/io.hpp"
#include "scatternet/neuralnet/network.hpp"

namespace scatternet::nn {

std::string save_checkpoint(const Network& net) {
  std::vector<io::CheckpointSection> sections;
  const Shape& in = net.input_shape();
  sections.push_back({"input", {in.channels, in.height, in.width}, {}, {}});
  for (const auto& layer : net.layers()) {
    io::CheckpointSection s;
    if (const auto* c = std::get_if<ConvLayer>(&layer)) {
      s.type = "conv";
      s.shape = {c->out_channels, c->in_channels, c->kernel_h, c->kernel_w};
      s.attributes["stride"] = std::to_string(c->stride);
      s.values = c->kernels;
      s.values.insert(s.values.end(), c->bias.begin(), c->bias.end());
    } else if (const auto* d = std::get_if<DenseLayer>(&layer)) {
      s.type = "dense";
      s.shape = {d->out_features, d->in_features};
      s.values = d->weights;
      s.values.insert(s.values.end(), d->bias.begin(), d->bias.end());
    } else if (const auto* p = std::get_if<MaxPoolLayer>(&layer)) {
      s.type = "maxpool";
      s.shape = {p->window, p->window};
      s.attributes["stride"] = std::to_string(p->stride);
    } else {
      s.type = "relu";
    }
    sections.push_back(std::move(s));
  }
  return io::encode_checkpoint("cnn", sections);
}

namespace {

std::size_t stride_of(const io::CheckpointSection& s) {
  const auto it = s.attributes.find("stride");
  if (it == s.attributes.end()) throw std::runtime_error("checkpoint: " + s.type + " section without stride");
  return std::stoul(it->second);
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("checkpoint: " + what);
}

}  // namespace

Network load_checkpoint(std::istream& in) {
  const auto sections = io::decode_checkpoint(in, "cnn");
  expect(!sections.empty() && sections[0].type == "input" && sections[0].shape.size() == 3, "missing input section");
  Network net(Shape{sections[0].shape[0], sections[0].shape[1], sections[0].shape[2]});
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const auto& s = sections[i];
    if (s.type == "conv") {
      expect(s.shape.size() == 4, "conv shape must have 4 dims");
      auto c = ConvLayer::zeros(s.shape[0], s.shape[1], s.shape[2], s.shape[3], stride_of(s));
      expect(s.values.size() == c.kernels.size() + c.bias.size(), "conv value count mismatch");
      std::copy(s.values.begin(), s.values.begin() + static_cast<long>(c.kernels.size()), c.kernels.begin());
      std::copy(s.values.begin() + static_cast<long>(c.kernels.size()), s.values.end(), c.bias.begin());
      net.add(std::move(c));
    } else if (s.type == "dense") {
      expect(s.shape.size() == 2, "dense shape must have 2 dims");
      auto d = DenseLayer::zeros(s.shape[0], s.shape[1]);
      expect(s.values.size() == d.weights.size() + d.bias.size(), "dense value count mismatch");
      std::copy(s.values.begin(), s.values.begin() + static_cast<long>(d.weights.size()), d.weights.begin());
      std::copy(s.values.begin() + static_cast<long>(d.weights.size()), s.values.end(), d.bias.begin());
      net.add(std::move(d));
    } else if (s.type == "maxpool") {
      expect(s.shape.size() == 2 && s.values.empty(), "bad maxpool section");
      net.add(MaxPoolLayer{s.shape[0], stride_of(s)});
    } else if (s.type == "relu") {
      expect(s.values.empty(), "relu section carries values");
      net.add(ReluLayer{});
    } else {
      throw std::runtime_error("checkpoint: unknown layer type '" + s.type + "'");
    }
  }
  return net;
}

}  // namespace scatternet::nn
