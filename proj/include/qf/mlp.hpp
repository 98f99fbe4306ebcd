#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qf {

/// One fully connected sigmoid layer. `weights` is fan_out x fan_in,
/// row-major. Velocities carry the momentum state and share the parameter
/// shapes.
struct DenseLayer {
  std::size_t fan_in = 0;
  std::size_t fan_out = 0;
  std::vector<double> weights;
  std::vector<double> biases;
  std::vector<double> weight_velocity;
  std::vector<double> bias_velocity;

  double& w(std::size_t out, std::size_t in) { return weights[out * fan_in + in]; }
  double w(std::size_t out, std::size_t in) const { return weights[out * fan_in + in]; }
};

struct MlpModel {
  std::vector<std::size_t> layer_sizes;
  std::vector<DenseLayer> layers;

  std::size_t input_size() const { return layer_sizes.front(); }
  std::size_t output_size() const { return layer_sizes.back(); }
};

struct TrainConfig {
  double learning_rate = 0.1;
  double momentum = 0.9;
  int max_epochs = 2000;
  double target_mse = 1e-3;
  std::uint64_t seed = 42;
  bool shuffle = false;

  void validate() const;
};

struct Sample {
  std::vector<double> features;
  std::vector<double> target;
};

struct LayerGradient {
  std::vector<double> weights;
  std::vector<double> biases;
};
using Gradient = std::vector<LayerGradient>;

/// Weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)] from a generator
/// seeded with `seed`; biases and velocities zero.
MlpModel init_mlp(const std::vector<std::size_t>& layer_sizes, std::uint64_t seed);

double sigmoid(double z);

std::vector<double> forward(const MlpModel& model, std::span<const double> x);

/// Backpropagated gradient of 0.5 * ||forward(x) - target||^2.
Gradient gradient(const MlpModel& model, const Sample& sample);

/// 0.5 * ||forward(x) - target||^2.
double sample_loss(const MlpModel& model, const Sample& sample);

/// One online pass over `samples` in order. Each sample first contributes
/// its squared error, then updates v <- m*v - lr*g and theta <- theta + v.
/// Returns the mean over samples and outputs of the squared error.
double train_epoch(MlpModel& model, std::span<const Sample> samples,
                   const TrainConfig& cfg);

struct TrainResult {
  int epochs = 0;
  double final_mse = 0.0;
};

/// Runs epochs until the epoch MSE is <= target_mse or max_epochs is hit.
/// With cfg.shuffle the sample order is permuted each epoch by a generator
/// seeded from cfg.seed.
TrainResult train(MlpModel& model, std::vector<Sample> samples,
                  const TrainConfig& cfg);

/// Argmax of forward(); ties go to the lowest index.
std::size_t predict(const MlpModel& model, std::span<const double> x);

std::vector<double> one_hot(std::size_t index, std::size_t size);

}  // namespace qf
