#include "ferl/kinematics.hpp"

#include <cmath>
#include <numbers>

#include "ferl/envs.hpp"
#include "ferl/parallel.hpp"
#include "ferl/rng.hpp"

namespace ferl {

KinematicChain::KinematicChain(std::vector<Link> links)
    : links_(std::move(links)) {
  if (links_.empty()) throw ConfigError("kinematic chain needs >= 1 link");
  for (const Link& l : links_) {
    if (std::abs(l.axis.norm() - 1.0) > 1e-9)
      throw ConfigError("rotation axes must be unit-norm");
    reach_ += l.offset.norm();
  }
}

KinematicChain KinematicChain::stylized_arm() {
  std::vector<Link> links;
  for (int i = 0; i < 7; ++i) {
    Link l;
    l.axis = (i % 2 == 0) ? Vec3{0, 0, 1} : Vec3{0, 1, 0};
    l.offset = Vec3{0, 0, 0.15};
    links.push_back(l);
  }
  return KinematicChain(std::move(links));
}

FrameSet forward_kinematics(const KinematicChain& chain, const JointConfig& q) {
  if (q.angles.size() != chain.dof())
    throw ConfigError("joint config dof mismatch");
  FrameSet fs;
  fs.joint_positions.reserve(chain.dof());
  Mat3 rot = Mat3::Identity();
  Vec3 pos = Vec3::Zero();
  for (int i = 0; i < chain.dof(); ++i) {
    const Link& link = chain.links()[i];
    rot = rot * Eigen::AngleAxisd(q.angles(i), link.axis).toRotationMatrix();
    pos = pos + rot * link.offset;
    fs.joint_positions.push_back(pos);
  }
  fs.ee_rotation = rot;
  return fs;
}

RawState raw_state(const FrameSet& frames, const Scene& scene) {
  RawState s;
  const int dof = static_cast<int>(frames.joint_positions.size());
  if (3 * dof != raw_layout::kJointBlock)
    throw ConfigError("raw state requires a 7-joint chain");
  for (int i = 0; i < dof; ++i)
    s.segment<3>(3 * i) = frames.joint_positions[i];
  s.segment<3>(raw_layout::kLaptopOffset) = scene.laptop_xyz;
  s.segment<3>(raw_layout::kHumanOffset) = scene.human_xyz;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s(raw_layout::kRotationOffset + 3 * i + j) = frames.ee_rotation(i, j);
  return s;
}

RawState raw_state(const KinematicChain& chain, const JointConfig& q,
                   const Scene& scene) {
  return raw_state(forward_kinematics(chain, q), scene);
}

JointConfig sample_joint_config(const KinematicChain& chain, Rng& rng) {
  JointConfig q;
  q.angles.resize(chain.dof());
  for (int i = 0; i < chain.dof(); ++i)
    q.angles(i) = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return q;
}

namespace {

template <class Loop>
std::vector<RawState> sample_states_impl(const KinematicChain& chain,
                                         const Scene& scene, int count,
                                         std::uint64_t seed, Loop&& loop) {
  if (count < 0) throw ConfigError("state count must be >= 0");
  // One RNG stream per state so the parallel fill matches the serial one.
  std::vector<RawState> out(static_cast<std::size_t>(count));
  const Rng base(seed);
  loop(static_cast<std::size_t>(count), [&](std::size_t i) {
    Rng rng = base.fork(i);
    out[i] = raw_state(chain, sample_joint_config(chain, rng), scene);
  });
  return out;
}

}  // namespace

std::vector<RawState> sample_reachable_states(const KinematicChain& chain,
                                              const Scene& scene, int count,
                                              std::uint64_t seed) {
  return sample_states_impl(chain, scene, count, seed,
                            [](std::size_t n, auto&& fn) {
                              parallel_for(n, fn);
                            });
}

namespace serial {
std::vector<RawState> sample_reachable_states(const KinematicChain& chain,
                                              const Scene& scene, int count,
                                              std::uint64_t seed) {
  return sample_states_impl(chain, scene, count, seed,
                            [](std::size_t n, auto&& fn) {
                              ferl::serial::parallel_for(n, fn);
                            });
}
}  // namespace serial

}  // namespace ferl
