#include "ferl/envs.hpp"

#include <algorithm>
#include <cmath>

namespace ferl {

void Scene::validate(const KinematicChain& chain) const {
  const double r = chain.reach();
  auto check = [&](const Vec3& p, const char* name) {
    if (p.norm() > r)
      throw InvariantError(std::string(name) + " outside chain reach");
  };
  check(laptop_xyz, "scene.laptop_xyz");
  check(human_xyz, "scene.human_xyz");
  if (alt_object_xyz) check(*alt_object_xyz, "scene.alt_object_xyz");
  if (test_laptop_xyz) check(*test_laptop_xyz, "scene.test_laptop_xyz");
}

FeatureKind feature_kind_from_string(const std::string& name) {
  if (name == "table") return FeatureKind::table;
  if (name == "coffee") return FeatureKind::coffee;
  if (name == "laptop") return FeatureKind::laptop;
  if (name == "test_laptop") return FeatureKind::test_laptop;
  if (name == "proxemics") return FeatureKind::proxemics;
  if (name == "between_objects") return FeatureKind::between_objects;
  throw ConfigError("unknown feature kind: " + name);
}

std::string to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::table: return "table";
    case FeatureKind::coffee: return "coffee";
    case FeatureKind::laptop: return "laptop";
    case FeatureKind::test_laptop: return "test_laptop";
    case FeatureKind::proxemics: return "proxemics";
    case FeatureKind::between_objects: return "between_objects";
  }
  throw ConfigError("bad feature kind");
}

namespace {

double xy_distance(const Vec3& a, const Vec3& b) {
  return (a.head<2>() - b.head<2>()).norm();
}

/// Distance from p to the segment [a, b], all in the xy plane.
double xy_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Eigen::Vector2d ap = p.head<2>() - a.head<2>();
  const Eigen::Vector2d ab = b.head<2>() - a.head<2>();
  const double len_sq = ab.squaredNorm();
  if (len_sq == 0.0) return ap.norm();
  const double t = std::clamp(ap.dot(ab) / len_sq, 0.0, 1.0);
  return (ap - t * ab).norm();
}

double feature_value(const GroundTruthFeature& f, const Vec3& ee,
                     const Mat3& ee_rot, const Scene& scene) {
  switch (f.kind) {
    case FeatureKind::table:
      // Clamped at zero: the stylized chain can dip below the table plane,
      // and features must stay nonnegative.
      return std::max(ee.z() - scene.table_z, 0.0);
    case FeatureKind::coffee:
      // 1 minus the world-z component of the EE frame's z-axis.
      return 1.0 - ee_rot(2, 2);
    case FeatureKind::laptop:
      return std::max(f.laptop_radius - xy_distance(ee, scene.laptop_xyz), 0.0);
    case FeatureKind::test_laptop: {
      if (!scene.test_laptop_xyz)
        throw ConfigError("test_laptop feature needs scene.test_laptop_xyz");
      return std::max(f.laptop_radius - xy_distance(ee, *scene.test_laptop_xyz),
                      0.0);
    }
    case FeatureKind::proxemics: {
      const double dx = ee.x() - scene.human_xyz.x();
      const double dy = (ee.y() - scene.human_xyz.y()) / f.proxemics_front_scale;
      return std::max(f.proxemics_radius - std::sqrt(dx * dx + dy * dy), 0.0);
    }
    case FeatureKind::between_objects: {
      if (!scene.alt_object_xyz)
        throw ConfigError("between_objects feature needs scene.alt_object_xyz");
      const Vec3& o1 = scene.laptop_xyz;
      const Vec3& o2 = *scene.alt_object_xyz;
      const double d = std::min({f.between_line_scale *
                                     xy_segment_distance(ee, o1, o2),
                                 xy_distance(ee, o1), xy_distance(ee, o2)});
      return std::max(f.between_radius - d, 0.0);
    }
  }
  throw ConfigError("bad feature kind");
}

}  // namespace

double gt_feature_value(const GroundTruthFeature& f, const FrameSet& frames,
                        const Scene& scene) {
  return feature_value(f, frames.joint_positions.back(), frames.ee_rotation,
                       scene);
}

double gt_feature_value(const GroundTruthFeature& f, const RawState& s,
                        const Scene& scene) {
  return feature_value(f, ee_position(s), ee_rotation_of(s), scene);
}

double gt_feature_domain_max(const GroundTruthFeature& f,
                             const KinematicChain& chain, const Scene& scene) {
  switch (f.kind) {
    case FeatureKind::table: return chain.reach() - scene.table_z;
    case FeatureKind::coffee: return 2.0;
    case FeatureKind::laptop:
    case FeatureKind::test_laptop: return f.laptop_radius;
    case FeatureKind::proxemics: return f.proxemics_radius;
    case FeatureKind::between_objects: return f.between_radius;
  }
  throw ConfigError("bad feature kind");
}

double gt_reward(const GroundTruthReward& reward, const Eigen::VectorXd& phi) {
  if (reward.weights.size() != static_cast<Eigen::Index>(reward.features.size()))
    throw ConfigError("ground-truth reward weight/feature count mismatch");
  if (phi.size() != reward.weights.size())
    throw ConfigError("feature vector dimension mismatch");
  return reward.weights.dot(phi);
}

}  // namespace ferl
