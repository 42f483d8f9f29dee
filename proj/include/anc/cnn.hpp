#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anc/dataset.hpp"

namespace anc::cnn {

/// (channels, length) tensor, rows contiguous.
struct Tensor {
  int channels = 0;
  int length = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(int c, int l)
      : channels(c), length(l),
        v(static_cast<std::size_t>(c) * static_cast<std::size_t>(l), 0.0) {}

  double* row(int c) { return v.data() + static_cast<std::size_t>(c) * length; }
  const double* row(int c) const {
    return v.data() + static_cast<std::size_t>(c) * length;
  }
  double& at(int c, int i) { return row(c)[i]; }
  double at(int c, int i) const { return row(c)[i]; }
};

using Batch = std::vector<Tensor>;

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Conv1d {
  std::string name;
  int in_ch = 0, out_ch = 0, kernel = 1, stride = 1, padding = 0;
  std::vector<double> w;  // [out][in][k]
  std::vector<double> b;  // [out]
  std::vector<double> gw, gb;

  int out_len(int in_len) const {
    return (in_len + 2 * padding - kernel) / stride + 1;
  }
  double& wat(int o, int c, int t) {
    return w[(static_cast<std::size_t>(o) * in_ch + c) * kernel + t];
  }
  Tensor forward(const Tensor& x) const;
  /// Accumulates gw/gb and returns the input gradient.
  Tensor backward(const Tensor& x, const Tensor& gy);
  void zero_grad();
};

struct BatchNorm1d {
  int ch = 0;
  double momentum = 0.1;
  double epsilon = 1e-5;
  std::vector<double> gamma, beta;
  std::vector<double> run_mean, run_var;
  std::vector<double> ggamma, gbeta;

  struct Cache {
    std::vector<double> mean, inv_std;
    Batch xhat;
  };

  /// Training mode: normalizes with batch statistics over all examples
  /// and positions. Does not touch the running statistics.
  Batch forward_train(const Batch& xs, Cache& cache) const;
  Tensor forward_infer(const Tensor& x) const;
  Batch backward(const Cache& cache, const Batch& gys);
  void update_running(const Cache& cache);
  void zero_grad();
};

struct Dense {
  int in = 0, out = 0;
  std::vector<double> w;  // [out][in]
  std::vector<double> b;
  std::vector<double> gw, gb;

  std::vector<double> forward(const std::vector<double>& x) const;
  std::vector<double> backward(const std::vector<double>& x,
                               const std::vector<double>& gy);
  void zero_grad();
};

Tensor maxpool_forward(const Tensor& x, int factor, std::vector<int>* argmax);
Tensor maxpool_backward(const Tensor& gy, int factor,
                        const std::vector<int>& argmax, int in_len);
std::vector<double> global_avg_pool(const Tensor& x);
Tensor global_avg_pool_backward(const std::vector<double>& gg, int channels,
                                int length);

void relu_inplace(Tensor& t);
/// Zeroes gradient entries where the stored activation is not positive.
void relu_mask(const Tensor& activation, Tensor& grad);

double log_sum_exp(const std::vector<double>& logits);
double cross_entropy(const std::vector<double>& logits, int label);
std::vector<double> softmax(const std::vector<double>& logits);

/// Residual unit: conv-bn-relu-conv-bn, shortcut add, relu. A 1x1
/// projection carries the shortcut when channel counts change.
struct ResidualBlock {
  Conv1d conv1, conv2;
  BatchNorm1d bn1, bn2;
  std::optional<Conv1d> proj;

  struct Cache {
    Batch in;
    BatchNorm1d::Cache c1, c2;
    Batch a1;
    Batch out;
  };

  Batch forward_train(const Batch& xs, Cache& cache);
  Tensor forward_infer(const Tensor& x) const;
  Batch backward(const Cache& cache, const Batch& gout);
  void update_running(const Cache& cache);
};

struct ModelSpec {
  int input_len = 16000;
  int classes = 15;
  int stem_kernel = 80;
  int stem_stride = 16;
  int stem_padding = 38;
  int stem_channels = 32;
  int block1_channels = 32;
  int pool_factor = 4;
  int block2_channels = 64;
  int block_kernel = 3;
};

struct ParamRef {
  std::vector<double>* value;
  std::vector<double>* grad;
  bool is_weight;  // true for conv/dense weights (L2 applies)
};

class CnnModel {
 public:
  CnnModel() = default;
  CnnModel(const ModelSpec& spec, std::uint64_t seed);

  const ModelSpec& spec() const { return spec_; }
  std::size_t parameter_count() const;
  int counted_layers() const;  // convolutional + fully connected

  std::vector<double> forward_infer(std::span<const double> frame) const;
  int predict(std::span<const double> frame) const;

  struct ForwardCache {
    Batch x;
    BatchNorm1d::Cache stem_c;
    Batch a0;
    ResidualBlock::Cache b1;
    std::vector<std::vector<int>> pool_argmax;
    Batch pooled;
    ResidualBlock::Cache b2;
    std::vector<std::vector<double>> gap;
    std::vector<std::vector<double>> logits;
  };

  /// Training-mode forward over a batch (batch statistics in every
  /// batch-norm layer). Running statistics are not modified.
  ForwardCache forward_train(const Batch& frames);

  /// Mean cross-entropy plus l2 * sum of squared conv/dense weights.
  double loss(const ForwardCache& cache, const std::vector<int>& labels,
              double l2) const;

  /// Accumulates exact gradients of loss() into the parameter grads.
  void backward(const ForwardCache& cache, const std::vector<int>& labels,
                double l2);

  void zero_grads();
  void update_running(const ForwardCache& cache);
  std::vector<ParamRef> parameter_refs();

  std::vector<std::vector<double>> snapshot() const;
  void restore(const std::vector<std::vector<double>>& snap);

  friend void save_model(const CnnModel&, const std::filesystem::path&);
  friend CnnModel load_model(const std::filesystem::path&);

 private:
  std::vector<const std::vector<double>*> state_arrays() const;
  std::vector<std::vector<double>*> state_arrays();

  ModelSpec spec_;
  Conv1d stem_;
  BatchNorm1d stem_bn_;
  ResidualBlock block1_;
  ResidualBlock block2_;
  Dense head_;
};

/// Production model shape; enforces the parameter budget (<= 250000)
/// and the 6-layer count at construction.
CnnModel make_default_model(std::uint64_t seed);

class AdamOptimizer {
 public:
  AdamOptimizer(double lr, double beta1, double beta2, double epsilon)
      : lr_(lr), b1_(beta1), b2_(beta2), eps_(epsilon) {}

  void step(const std::vector<ParamRef>& params);

 private:
  double lr_, b1_, b2_, eps_;
  long t_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

struct TrainConfig {
  int epochs = 30;
  int batch_size = 32;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double l2 = 1e-4;
  std::uint64_t seed = 7;
};

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainResult {
  std::vector<EpochMetrics> metrics;
  double best_val_accuracy = 0.0;
};

struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mini-batch Adam over the train split; returns the model with the
/// best validation accuracy seen (the initial weights count as the
/// baseline). Deterministic given the config seed.
TrainResult train_model(CnnModel& model, const LabeledDataset& data,
                        const TrainConfig& config);

double evaluate_accuracy(const CnnModel& model,
                         std::span<const DatasetEntry> split);

/// Confusion matrix [true][predicted], classes x classes.
std::vector<std::vector<int>> confusion_matrix(
    const CnnModel& model, std::span<const DatasetEntry> split);

void save_model(const CnnModel& model, const std::filesystem::path& path);
CnnModel load_model(const std::filesystem::path& path);

}  // namespace anc::cnn
