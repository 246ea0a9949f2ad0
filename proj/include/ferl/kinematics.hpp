#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ferl/errors.hpp"

namespace ferl {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Raw state layout: [7 joint xyz (21) | laptop xyz (3) | human xyz (3) |
/// EE rotation row-major (9)] = 36 entries.
using RawState = Eigen::Matrix<double, 36, 1>;

namespace raw_layout {
inline constexpr int kDim = 36;
inline constexpr int kJointBlock = 21;
inline constexpr int kLaptopOffset = 21;
inline constexpr int kHumanOffset = 24;
inline constexpr int kPositionDim = 27;   // joints + both objects
inline constexpr int kRotationOffset = 27;
inline constexpr int kRotationDim = 9;
}  // namespace raw_layout

inline Vec3 ee_position(const RawState& s) {
  return s.segment<3>(raw_layout::kJointBlock - 3);
}

/// EE rotation, stored row-major in entries 27..36.
inline Mat3 ee_rotation_of(const RawState& s) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = s(raw_layout::kRotationOffset + 3 * i + j);
  return r;
}

struct Link {
  Vec3 axis;    // unit rotation axis in the link's parent frame
  Vec3 offset;  // rigid offset to the next joint, meters
};

class KinematicChain {
 public:
  explicit KinematicChain(std::vector<Link> links);

  /// 7 links of 0.15 m with alternating z/y rotation axes.
  static KinematicChain stylized_arm();

  int dof() const { return static_cast<int>(links_.size()); }
  const std::vector<Link>& links() const { return links_; }
  double reach() const { return reach_; }

 private:
  std::vector<Link> links_;
  double reach_ = 0.0;
};

struct JointConfig {
  Eigen::VectorXd angles;  // radians, one per joint
};

struct FrameSet {
  std::vector<Vec3> joint_positions;  // world frame, one per link
  Mat3 ee_rotation;                   // world frame
};

struct Scene;  // envs module

FrameSet forward_kinematics(const KinematicChain& chain, const JointConfig& q);

RawState raw_state(const KinematicChain& chain, const JointConfig& q,
                   const Scene& scene);
RawState raw_state(const FrameSet& frames, const Scene& scene);

/// Joint angles drawn uniformly per joint over [-pi, pi].
JointConfig sample_joint_config(const KinematicChain& chain, class Rng& rng);

std::vector<RawState> sample_reachable_states(const KinematicChain& chain,
                                              const Scene& scene, int count,
                                              std::uint64_t seed);

namespace serial {
std::vector<RawState> sample_reachable_states(const KinematicChain& chain,
                                              const Scene& scene, int count,
                                              std::uint64_t seed);
}

}  // namespace ferl
