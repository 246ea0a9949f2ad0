#include "ferl/nn.hpp"

#include <cmath>

#include "ferl/rng.hpp"

namespace ferl {

double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

void apply_activation(Activation act, double slope, Eigen::MatrixXd& m) {
  switch (act) {
    case Activation::leaky_relu:
      m = m.unaryExpr([slope](double x) { return x > 0.0 ? x : slope * x; });
      return;
    case Activation::relu:
      m = m.cwiseMax(0.0);
      return;
    case Activation::softplus:
      m = m.unaryExpr([](double x) { return softplus(x); });
      return;
    case Activation::linear:
      return;
  }
}

Eigen::MatrixXd activation_derivative(Activation act, double slope,
                                      const Eigen::MatrixXd& pre) {
  switch (act) {
    case Activation::leaky_relu:
      return pre.unaryExpr(
          [slope](double x) { return x > 0.0 ? 1.0 : slope; });
    case Activation::relu:
      return pre.unaryExpr([](double x) { return x > 0.0 ? 1.0 : 0.0; });
    case Activation::softplus:
      return pre.unaryExpr([](double x) { return sigmoid(x); });
    case Activation::linear:
      return Eigen::MatrixXd::Ones(pre.rows(), pre.cols());
  }
  return {};
}

}  // namespace

Eigen::Index Mlp::param_count() const {
  Eigen::Index n = 0;
  for (int l = 0; l < layer_count(); ++l)
    n += weights[l].size() + biases[l].size();
  return n;
}

Eigen::VectorXd Mlp::params_flat() const {
  Eigen::VectorXd p(param_count());
  Eigen::Index k = 0;
  for (int l = 0; l < layer_count(); ++l) {
    p.segment(k, weights[l].size()) =
        Eigen::Map<const Eigen::VectorXd>(weights[l].data(), weights[l].size());
    k += weights[l].size();
    p.segment(k, biases[l].size()) = biases[l];
    k += biases[l].size();
  }
  return p;
}

void Mlp::set_params_flat(const Eigen::VectorXd& p) {
  if (p.size() != param_count()) throw ConfigError("parameter size mismatch");
  Eigen::Index k = 0;
  for (int l = 0; l < layer_count(); ++l) {
    Eigen::Map<Eigen::VectorXd>(weights[l].data(), weights[l].size()) =
        p.segment(k, weights[l].size());
    k += weights[l].size();
    biases[l] = p.segment(k, biases[l].size());
    k += biases[l].size();
  }
}

Mlp init_net(const std::vector<int>& dims, Activation hidden_act,
             Activation output_act, std::uint64_t seed, double leaky_slope) {
  if (dims.size() < 2) throw ConfigError("net needs >= 2 layer dims");
  Mlp net;
  net.dims = dims;
  net.hidden_act = hidden_act;
  net.output_act = output_act;
  net.leaky_slope = leaky_slope;
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int fan_in = dims[l];
    const int fan_out = dims[l + 1];
    const double bound = std::sqrt(6.0 / fan_in);
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i)
      for (int j = 0; j < fan_in; ++j) w(i, j) = rng.uniform(-bound, bound);
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return net;
}

Eigen::MatrixXd nn_forward(const Mlp& net, const Eigen::MatrixXd& x,
                           ForwardCache* cache) {
  if (x.rows() != net.input_dim())
    throw ConfigError("nn_forward input dimension mismatch");
  if (cache) {
    cache->input = x;
    cache->pre.clear();
    cache->post.clear();
  }
  Eigen::MatrixXd h = x;
  for (int l = 0; l < net.layer_count(); ++l) {
    Eigen::MatrixXd z = net.weights[l] * h;
    z.colwise() += net.biases[l];
    if (cache) cache->pre.push_back(z);
    const bool last = (l + 1 == net.layer_count());
    apply_activation(last ? net.output_act : net.hidden_act, net.leaky_slope,
                     z);
    if (cache) cache->post.push_back(z);
    h = std::move(z);
  }
  return h;
}

void Gradients::set_zero(const Mlp& net) {
  w.clear();
  b.clear();
  for (int l = 0; l < net.layer_count(); ++l) {
    w.push_back(Eigen::MatrixXd::Zero(net.weights[l].rows(),
                                      net.weights[l].cols()));
    b.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
  }
}

Eigen::VectorXd Gradients::flat() const {
  Eigen::Index n = 0;
  for (std::size_t l = 0; l < w.size(); ++l) n += w[l].size() + b[l].size();
  Eigen::VectorXd p(n);
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < w.size(); ++l) {
    p.segment(k, w[l].size()) =
        Eigen::Map<const Eigen::VectorXd>(w[l].data(), w[l].size());
    k += w[l].size();
    p.segment(k, b[l].size()) = b[l];
    k += b[l].size();
  }
  return p;
}

Eigen::MatrixXd nn_backward(const Mlp& net, const ForwardCache& cache,
                            const Eigen::MatrixXd& upstream, Gradients* grads) {
  if (cache.pre.size() != static_cast<std::size_t>(net.layer_count()))
    throw ConfigError("nn_backward: cache does not match net");
  if (upstream.rows() != net.output_dim() ||
      upstream.cols() != cache.input.cols())
    throw ConfigError("nn_backward: upstream gradient shape mismatch");
  Eigen::MatrixXd delta = upstream;
  for (int l = net.layer_count() - 1; l >= 0; --l) {
    const bool last = (l + 1 == net.layer_count());
    const Activation act = last ? net.output_act : net.hidden_act;
    delta = delta.cwiseProduct(
        activation_derivative(act, net.leaky_slope, cache.pre[l]));
    const Eigen::MatrixXd& below =
        (l == 0) ? cache.input : cache.post[l - 1];
    if (grads) {
      grads->w[l].noalias() += delta * below.transpose();
      grads->b[l] += delta.rowwise().sum();
    }
    delta = (net.weights[l].transpose() * delta).eval();
  }
  return delta;  // d loss / d input
}

void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad,
               AdamState& state) {
  if (params.size() != grad.size() || params.size() != state.m.size())
    throw ConfigError("adam_step shape mismatch");
  state.step += 1;
  state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad;
  state.v = state.beta2 * state.v +
            (1.0 - state.beta2) * grad.cwiseProduct(grad);
  const double bc1 = 1.0 - std::pow(state.beta1, state.step);
  const double bc2 = 1.0 - std::pow(state.beta2, state.step);
  const Eigen::VectorXd m_hat = state.m / bc1;
  const Eigen::VectorXd v_hat = state.v / bc2;
  params -=
      state.lr * (m_hat.array() / (v_hat.array().sqrt() + state.eps)).matrix();
  if (state.weight_decay != 0.0)
    params -= state.lr * state.weight_decay * params;
}

}  // namespace ferl
