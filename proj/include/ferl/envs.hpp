#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "ferl/kinematics.hpp"

namespace ferl {

struct Scene {
  double table_z = 0.0;
  Vec3 laptop_xyz{0.3, 0.1, 0.0};
  Vec3 human_xyz{-0.2, -0.5, 0.0};
  std::optional<Vec3> alt_object_xyz;    // second object for between_objects
  std::optional<Vec3> test_laptop_xyz;   // held-out laptop position

  static Scene default_scene() { return Scene{}; }

  /// Throws InvariantError if any object lies outside the chain's reach.
  void validate(const KinematicChain& chain) const;
};

enum class FeatureKind {
  table,
  coffee,
  laptop,
  test_laptop,
  proxemics,
  between_objects,
};

FeatureKind feature_kind_from_string(const std::string& name);
std::string to_string(FeatureKind kind);

struct GroundTruthFeature {
  FeatureKind kind;
  double laptop_radius = 0.3;
  double proxemics_radius = 0.3;
  double proxemics_front_scale = 3.0;
  double between_radius = 0.2;
  double between_line_scale = 0.8;
};

double gt_feature_value(const GroundTruthFeature& f, const FrameSet& frames,
                        const Scene& scene);
double gt_feature_value(const GroundTruthFeature& f, const RawState& s,
                        const Scene& scene);

/// Largest value the feature can attain on the chain's reachable set; used
/// by the simulated teacher to place trace starts and relative values.
double gt_feature_domain_max(const GroundTruthFeature& f,
                             const KinematicChain& chain, const Scene& scene);

struct GroundTruthReward {
  std::vector<GroundTruthFeature> features;
  Eigen::VectorXd weights;  // theta*, nonnegative
};

/// theta*' Phi, interpreted as a cost to be minimized.
double gt_reward(const GroundTruthReward& reward, const Eigen::VectorXd& phi);

}  // namespace ferl
