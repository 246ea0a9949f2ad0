#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ferl/errors.hpp"

namespace ferl {

enum class Activation { leaky_relu, relu, softplus, linear };

double softplus(double x);
double sigmoid(double x);

/// Dense feedforward net. Columns of the data matrices are samples.
struct Mlp {
  std::vector<int> dims;  // e.g. {27, 64, 64, 1}
  Activation hidden_act = Activation::leaky_relu;
  Activation output_act = Activation::softplus;
  double leaky_slope = 0.01;
  std::vector<Eigen::MatrixXd> weights;  // weights[l]: dims[l+1] x dims[l]
  std::vector<Eigen::VectorXd> biases;   // biases[l]: dims[l+1]

  int input_dim() const { return dims.front(); }
  int output_dim() const { return dims.back(); }
  int layer_count() const { return static_cast<int>(weights.size()); }
  Eigen::Index param_count() const;
  Eigen::VectorXd params_flat() const;
  void set_params_flat(const Eigen::VectorXd& p);
};

/// He-style scaled uniform initialization, biases zero.
Mlp init_net(const std::vector<int>& dims, Activation hidden_act,
             Activation output_act, std::uint64_t seed,
             double leaky_slope = 0.01);

struct ForwardCache {
  Eigen::MatrixXd input;
  std::vector<Eigen::MatrixXd> pre;   // pre-activations per layer
  std::vector<Eigen::MatrixXd> post;  // post-activations per layer
};

/// Evaluates the net on a batch (columns = samples). Fills cache if given.
Eigen::MatrixXd nn_forward(const Mlp& net, const Eigen::MatrixXd& x,
                           ForwardCache* cache = nullptr);

struct Gradients {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;

  void set_zero(const Mlp& net);
  Eigen::VectorXd flat() const;
};

/// Reverse-mode pass. upstream is d(loss)/d(output), output_dim x batch.
/// Returns d(loss)/d(input); accumulates parameter gradients when grads is
/// non-null.
Eigen::MatrixXd nn_backward(const Mlp& net, const ForwardCache& cache,
                            const Eigen::MatrixXd& upstream,
                            Gradients* grads = nullptr);

struct AdamState {
  double lr = 1e-3;
  double weight_decay = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step = 0;
  Eigen::VectorXd m, v;

  explicit AdamState(Eigen::Index n, double lr_ = 1e-3, double wd = 1e-3)
      : lr(lr_), weight_decay(wd), m(Eigen::VectorXd::Zero(n)),
        v(Eigen::VectorXd::Zero(n)) {}
};

/// One Adam step with decoupled weight decay.
void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad,
               AdamState& state);

}  // namespace ferl
