#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace hcr {

/// One-hidden-layer perceptron with logistic activations on both layers.
///
/// All weights and biases live in one flat vector, in the order
///   w1 (n_hidden x n_in, row-major), b1, w2 (n_out x n_hidden, row-major), b2
/// which is also the order of gradients and of the model file.
class MlpModel {
 public:
  /// Zero-initialized model. Throws if any dimension is zero.
  MlpModel(std::size_t n_in, std::size_t n_hidden, std::size_t n_out);

  static std::size_t parameter_count(std::size_t n_in, std::size_t n_hidden,
                                     std::size_t n_out) noexcept {
    return n_in * n_hidden + n_hidden + n_hidden * n_out + n_out;
  }

  std::size_t n_in() const noexcept { return n_in_; }
  std::size_t n_hidden() const noexcept { return n_hidden_; }
  std::size_t n_out() const noexcept { return n_out_; }
  std::size_t parameter_count() const noexcept { return params_.size(); }

  std::span<double> params() noexcept { return params_; }
  std::span<const double> params() const noexcept { return params_; }
  /// Throws on length mismatch.
  void set_params(std::span<const double> values);

  double w1(std::size_t h, std::size_t i) const { return params_[h * n_in_ + i]; }
  double b1(std::size_t h) const { return params_[b1_offset() + h]; }
  double w2(std::size_t o, std::size_t h) const {
    return params_[w2_offset() + o * n_hidden_ + h];
  }
  double b2(std::size_t o) const { return params_[b2_offset() + o]; }

  double& w1(std::size_t h, std::size_t i) { return params_[h * n_in_ + i]; }
  double& b1(std::size_t h) { return params_[b1_offset() + h]; }
  double& w2(std::size_t o, std::size_t h) {
    return params_[w2_offset() + o * n_hidden_ + h];
  }
  double& b2(std::size_t o) { return params_[b2_offset() + o]; }

  std::size_t b1_offset() const noexcept { return n_in_ * n_hidden_; }
  std::size_t w2_offset() const noexcept { return b1_offset() + n_hidden_; }
  std::size_t b2_offset() const noexcept { return w2_offset() + n_hidden_ * n_out_; }

  bool all_finite() const noexcept;

  friend bool operator==(const MlpModel&, const MlpModel&) = default;

 private:
  std::size_t n_in_;
  std::size_t n_hidden_;
  std::size_t n_out_;
  std::vector<double> params_;
};

/// Weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero.
/// Bit-identical for identical arguments on every platform.
MlpModel init_model(std::size_t n_in, std::size_t n_hidden, std::size_t n_out,
                    std::uint64_t seed);

double sigmoid(double z) noexcept;

/// Output activations. Throws on input length mismatch.
std::vector<double> forward(const MlpModel& m, std::span<const double> x);

struct Example {
  std::vector<double> input;
  std::size_t label = 0;  // target is the one-hot vector of this index
};

struct LossGradient {
  double loss = 0.0;
  std::vector<double> grad;
};

/// Mean over the batch of 0.5 * ||y - onehot(label)||^2 and its exact
/// gradient. Throws on an empty batch, bad input length or label.
LossGradient loss_and_gradient(const MlpModel& m, std::span<const Example> batch);

/// Same loss value as loss_and_gradient(), bit for bit, without the gradient.
double loss_only(const MlpModel& m, std::span<const Example> batch);

/// Loss at `params` using `m`'s dimensions. Avoids copying a model inside
/// line searches.
double loss_at(const MlpModel& m, std::span<const double> params,
               std::span<const Example> batch, std::span<double> grad = {});

/// Index of the largest entry; the lowest index wins ties.
std::size_t argmax(std::span<const double> values);

std::size_t predict(const MlpModel& m, std::span<const double> x);

struct Evaluation {
  double accuracy = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
  /// confusion[true][predicted]
  std::vector<std::vector<std::size_t>> confusion;
};

/// Throws on an empty set.
Evaluation evaluate(const MlpModel& m, std::span<const Example> data);

/// Text format:
///   MLPCG 1
///   n_in n_hidden n_out
///   one line per w1 row, b1, one line per w2 row, b2
/// Values use 17 significant digits so doubles round-trip exactly.
void save_model(std::ostream& out, const MlpModel& m);
void save_model(const std::filesystem::path& path, const MlpModel& m);
MlpModel load_model(std::istream& in);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace hcr
