#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ferl/nn.hpp"
#include "ferl/traces.hpp"

namespace ferl {

/// Input block the feature net reads: Euclidean positions (raw entries
/// 0..27), EE orientation (27..36), or the full 36-vector.
enum class Subspace { positions, orientation, full };

int subspace_dim(Subspace ss);
Subspace subspace_from_string(const std::string& name);
std::string to_string(Subspace ss);
Eigen::VectorXd slice_subspace(const RawState& s, Subspace ss);

/// Trained normalized feature: net output min-max scaled by the recorded
/// training extrema and clamped to [0, 1].
struct FeatureFunction {
  Mlp net;
  Subspace subspace = Subspace::positions;
  double norm_min = 0.0;
  double norm_max = 1.0;

  double raw_output(const RawState& s) const;
  double value(const RawState& s) const;
  Eigen::VectorXd values(const std::vector<RawState>& states) const;
  /// Gradient of the normalized output w.r.t. the full raw state (zeros
  /// outside the subspace). The clamp is ignored so optimizers keep a
  /// descent direction in saturated regions.
  Eigen::VectorXd value_grad(const RawState& s) const;
  /// Batched value_grad: column j is the gradient for states[j].
  Eigen::MatrixXd value_grads(const std::vector<RawState>& states) const;
};

struct FeatureTrainConfig {
  double lambda = 10.0;      // weight on the equivalence loss
  int epochs = 100;
  double lr = 1e-3;
  double weight_decay = 1e-3;
  int batch = 32;
  int equiv_augment = 5;
  int hidden = 64;
  double leaky_slope = 0.01;

  void validate() const;
};

/// P(s > s') from the two unnormalized outputs, stabilized.
double pref_prob(double phi_s, double phi_s_prime);

/// Negative log-likelihood of strict ordering over (phi(s), phi(s')) pairs.
double loss_ord_pairs(const std::vector<std::pair<double, double>>& pairs);

/// Negative log-likelihood of indistinguishability; per-pair minimum ln 4.
double loss_equiv_pairs(const std::vector<std::pair<double, double>>& pairs);

/// Shifts the two outputs of an equivalence tuple by the traces' relative
/// values: start pairs by +(1-v)*range, end pairs by -v*range.
std::pair<double, double> adjust_for_relative_values(double phi_a,
                                                     double phi_b,
                                                     EquivTag tag, double va,
                                                     double vb, double range);

/// Combined loss (ordering + lambda * equivalence) of a net over a dataset,
/// using `range` for the relative-value shifts.
struct DatasetLoss {
  double ord = 0.0;
  double equiv = 0.0;
  double total(double lambda) const { return ord + lambda * equiv; }
};
DatasetLoss dataset_loss(const Mlp& net, Subspace ss,
                         const std::vector<FeatureTrace>& traces,
                         const TupleDataset& ds, double range);

struct EpochStats {
  int epoch;
  double loss_ord;
  double loss_equiv;
  double loss_total;
};

/// Algorithm: build tuple datasets, augment equivalence tuples, run `epochs`
/// of Adam over a shuffled mixed stream of size-`batch` tuple batches,
/// tracking output extrema over all training states each epoch.
FeatureFunction train_feature(const std::vector<FeatureTrace>& traces,
                              Subspace ss, const FeatureTrainConfig& cfg,
                              std::uint64_t seed,
                              std::vector<EpochStats>* log = nullptr);

/// Cross-validated choice between the position and orientation blocks:
/// 10-epoch candidates trained on half the traces, scored by combined loss
/// on the other half; ties go to positions.
Subspace select_subspace(const std::vector<FeatureTrace>& traces,
                         const FeatureTrainConfig& cfg, std::uint64_t seed);

/// Fraction of ordered tuples ranked correctly by the feature.
double ordered_accuracy(const FeatureFunction& f,
                        const std::vector<FeatureTrace>& traces,
                        const std::vector<OrderedTuple>& tuples);

/// MSE to the min-max normalized ground truth over the test states, divided
/// by the mean MSE of 10 untrained random nets (1.0 = random performance).
double mse_norm(const FeatureFunction& f, const GroundTruthFeature& gt,
                const Scene& scene, const std::vector<RawState>& test_states,
                std::uint64_t seed);

}  // namespace ferl
