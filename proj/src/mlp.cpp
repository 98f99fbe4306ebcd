#include "qf/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qf/error.hpp"

namespace qf {

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::kInvalidArgument, "learning_rate must be >= 0");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "momentum must lie in [0,1)");
  }
  if (max_epochs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_epochs must be >= 1");
  }
  if (!(target_mse >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "target_mse must be >= 0");
  }
}

MlpModel init_mlp(const std::vector<std::size_t>& layer_sizes,
                  std::uint64_t seed) {
  if (layer_sizes.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "an MLP needs at least 2 layer sizes");
  }
  if (std::find(layer_sizes.begin(), layer_sizes.end(), 0u) != layer_sizes.end()) {
    throw Error(ErrorCode::kInvalidArgument, "layer sizes must be >= 1");
  }
  std::mt19937_64 rng(seed);
  MlpModel model;
  model.layer_sizes = layer_sizes;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    DenseLayer layer;
    layer.fan_in = layer_sizes[l];
    layer.fan_out = layer_sizes[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.fan_in));
    // uniform_real_distribution is implementation-defined; map the raw
    // 53-bit draw ourselves so models are identical across toolchains.
    layer.weights.resize(layer.fan_in * layer.fan_out);
    for (double& w : layer.weights) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      w = bound * (2.0 * u - 1.0);
    }
    layer.biases.assign(layer.fan_out, 0.0);
    layer.weight_velocity.assign(layer.weights.size(), 0.0);
    layer.bias_velocity.assign(layer.fan_out, 0.0);
    model.layers.push_back(std::move(layer));
  }
  return model;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

void check_input(const MlpModel& model, std::span<const double> x) {
  if (x.size() != model.input_size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "MLP input has " + std::to_string(x.size()) + " entries, expected " +
                    std::to_string(model.input_size()));
  }
}

void check_sample(const MlpModel& model, const Sample& sample) {
  check_input(model, sample.features);
  if (sample.target.size() != model.output_size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "MLP target has " + std::to_string(sample.target.size()) +
                    " entries, expected " + std::to_string(model.output_size()));
  }
}

// activations[0] is the input, activations[l+1] the output of layer l.
std::vector<std::vector<double>> forward_all(const MlpModel& model,
                                             std::span<const double> x) {
  std::vector<std::vector<double>> acts;
  acts.reserve(model.layers.size() + 1);
  acts.emplace_back(x.begin(), x.end());
  for (const DenseLayer& layer : model.layers) {
    const std::vector<double>& in = acts.back();
    std::vector<double> out(layer.fan_out);
    for (std::size_t o = 0; o < layer.fan_out; ++o) {
      double z = layer.biases[o];
      const double* row = layer.weights.data() + o * layer.fan_in;
      for (std::size_t i = 0; i < layer.fan_in; ++i) z += row[i] * in[i];
      out[o] = sigmoid(z);
    }
    acts.push_back(std::move(out));
  }
  return acts;
}

Gradient backprop(const MlpModel& model,
                  const std::vector<std::vector<double>>& acts,
                  std::span<const double> target) {
  const std::size_t num_layers = model.layers.size();
  Gradient grad(num_layers);
  const std::vector<double>& output = acts.back();
  std::vector<double> delta(output.size());
  for (std::size_t o = 0; o < output.size(); ++o) {
    delta[o] = (output[o] - target[o]) * output[o] * (1.0 - output[o]);
  }
  for (std::size_t l = num_layers; l-- > 0;) {
    const DenseLayer& layer = model.layers[l];
    const std::vector<double>& in = acts[l];
    LayerGradient& g = grad[l];
    g.weights.resize(layer.weights.size());
    for (std::size_t o = 0; o < layer.fan_out; ++o) {
      for (std::size_t i = 0; i < layer.fan_in; ++i) {
        g.weights[o * layer.fan_in + i] = delta[o] * in[i];
      }
    }
    g.biases = delta;
    if (l == 0) break;
    std::vector<double> prev(layer.fan_in, 0.0);
    for (std::size_t o = 0; o < layer.fan_out; ++o) {
      for (std::size_t i = 0; i < layer.fan_in; ++i) {
        prev[i] += layer.w(o, i) * delta[o];
      }
    }
    for (std::size_t i = 0; i < layer.fan_in; ++i) prev[i] *= in[i] * (1.0 - in[i]);
    delta = std::move(prev);
  }
  return grad;
}

double squared_error(std::span<const double> output, std::span<const double> target) {
  double s = 0.0;
  for (std::size_t o = 0; o < output.size(); ++o) {
    const double e = output[o] - target[o];
    s += e * e;
  }
  return s;
}

}  // namespace

std::vector<double> forward(const MlpModel& model, std::span<const double> x) {
  check_input(model, x);
  return std::move(forward_all(model, x).back());
}

Gradient gradient(const MlpModel& model, const Sample& sample) {
  check_sample(model, sample);
  return backprop(model, forward_all(model, sample.features), sample.target);
}

double sample_loss(const MlpModel& model, const Sample& sample) {
  check_sample(model, sample);
  return 0.5 * squared_error(forward(model, sample.features), sample.target);
}

double train_epoch(MlpModel& model, std::span<const Sample> samples,
                   const TrainConfig& cfg) {
  cfg.validate();
  if (samples.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "train_epoch needs at least one sample");
  }
  double total = 0.0;
  for (const Sample& sample : samples) {
    check_sample(model, sample);
    const auto acts = forward_all(model, sample.features);
    total += squared_error(acts.back(), sample.target);
    const Gradient grad = backprop(model, acts, sample.target);
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
      DenseLayer& layer = model.layers[l];
      for (std::size_t i = 0; i < layer.weights.size(); ++i) {
        layer.weight_velocity[i] =
            cfg.momentum * layer.weight_velocity[i] - cfg.learning_rate * grad[l].weights[i];
        layer.weights[i] += layer.weight_velocity[i];
      }
      for (std::size_t i = 0; i < layer.biases.size(); ++i) {
        layer.bias_velocity[i] =
            cfg.momentum * layer.bias_velocity[i] - cfg.learning_rate * grad[l].biases[i];
        layer.biases[i] += layer.bias_velocity[i];
      }
    }
  }
  return total / static_cast<double>(samples.size() * model.output_size());
}

TrainResult train(MlpModel& model, std::vector<Sample> samples,
                  const TrainConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed ^ 0x9E3779B97F4A7C15ull);
  TrainResult result;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    if (cfg.shuffle) {
      // Fisher-Yates with explicit draws; std::shuffle is not portable.
      for (std::size_t i = samples.size(); i > 1; --i) {
        std::swap(samples[i - 1], samples[rng() % i]);
      }
    }
    result.final_mse = train_epoch(model, samples, cfg);
    result.epochs = epoch;
    if (!std::isfinite(result.final_mse)) {
      throw Error(ErrorCode::kInvalidArgument, "training diverged");
    }
    if (result.final_mse <= cfg.target_mse) break;
  }
  return result;
}

std::size_t predict(const MlpModel& model, std::span<const double> x) {
  const std::vector<double> out = forward(model, x);
  return static_cast<std::size_t>(std::max_element(out.begin(), out.end()) - out.begin());
}

std::vector<double> one_hot(std::size_t index, std::size_t size) {
  if (index >= size) {
    throw Error(ErrorCode::kInvalidArgument, "one_hot index out of range");
  }
  std::vector<double> v(size, 0.0);
  v[index] = 1.0;
  return v;
}

}  // namespace qf
