#include "ferl/traces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ferl/rng.hpp"

namespace ferl {

void FeatureTrace::validate() const {
  if (!degenerate && states.size() < 2)
    throw InvariantError("feature trace needs >= 2 states");
  if (v0 < vn) throw InvariantError("feature trace requires v0 >= vn");
  for (const RawState& s : states)
    if (!s.allFinite()) throw InvariantError("non-finite state in trace");
}

TupleDataset build_datasets(const std::vector<FeatureTrace>& traces) {
  std::vector<int> usable;
  for (int k = 0; k < static_cast<int>(traces.size()); ++k) {
    traces[k].validate();
    if (!traces[k].degenerate) usable.push_back(k);
  }
  if (usable.empty()) throw ConfigError("no usable feature traces");

  TupleDataset ds;
  for (int k : usable) {
    const int n = static_cast<int>(traces[k].states.size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        ds.ordered.push_back({{k, i}, {k, j}});
  }
  for (std::size_t a = 1; a < usable.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      const int i = usable[a];
      const int j = usable[b];
      const int ni = static_cast<int>(traces[i].states.size()) - 1;
      const int nj = static_cast<int>(traces[j].states.size()) - 1;
      ds.equiv.push_back(
          {{i, 0}, {j, 0}, EquivTag::start_pair, traces[i].v0, traces[j].v0});
      ds.equiv.push_back(
          {{i, ni}, {j, nj}, EquivTag::end_pair, traces[i].vn, traces[j].vn});
    }
  }
  return ds;
}

TupleDataset augment_equiv(TupleDataset ds, int factor) {
  if (factor < 1) throw ConfigError("augment factor must be >= 1");
  const std::size_t original = ds.equiv.size();
  ds.equiv.reserve(original * factor);
  for (int rep = 1; rep < factor; ++rep)
    for (std::size_t i = 0; i < original; ++i) ds.equiv.push_back(ds.equiv[i]);
  return ds;
}

namespace {

double value_at(const GroundTruthFeature& f, const KinematicChain& chain,
                const Scene& scene, const Eigen::VectorXd& angles) {
  return gt_feature_value(f, forward_kinematics(chain, {angles}), scene);
}

/// Central finite differences of a joint-space objective.
template <class Fn>
Eigen::VectorXd fd_gradient(const Fn& fn, const Eigen::VectorXd& q, double h) {
  Eigen::VectorXd g(q.size());
  Eigen::VectorXd p = q;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    p(i) = q(i) + h;
    const double hi = fn(p);
    p(i) = q(i) - h;
    const double lo = fn(p);
    p(i) = q(i);
    g(i) = (hi - lo) / (2.0 * h);
  }
  return g;
}

/// Backtracking ascent of `fn` from q until no progress or iters exhausted.
Eigen::VectorXd ascend(const std::function<double(const Eigen::VectorXd&)>& fn,
                       Eigen::VectorXd q, int iters, double step, double h) {
  double best = fn(q);
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXd g = fd_gradient(fn, q, h);
    const double norm = g.norm();
    if (norm < 1e-12) break;
    double s = step;
    bool improved = false;
    for (int bt = 0; bt < 10; ++bt) {
      Eigen::VectorXd cand = q + (s / norm) * g;
      const double v = fn(cand);
      if (v > best) {
        q = std::move(cand);
        best = v;
        improved = true;
        break;
      }
      s *= 0.5;
    }
    if (!improved) break;
  }
  return q;
}

}  // namespace

FeatureTrace simulate_trace(const GroundTruthFeature& f,
                            const KinematicChain& chain, const Scene& scene,
                            const JointConfig& start, const TeacherConfig& cfg,
                            std::uint64_t seed) {
  if (cfg.steps < 1) throw ConfigError("teacher steps must be >= 1");
  Rng rng(seed);
  FeatureTrace trace;
  Eigen::VectorXd q = start.angles;
  const double start_value = value_at(f, chain, scene, q);
  trace.states.push_back(raw_state(chain, {q}, scene));
  if (start_value < 1e-9) {
    trace.degenerate = true;
    return trace;
  }
  const double floor = cfg.stop_fraction * start_value;
  auto fn = [&](const Eigen::VectorXd& angles) {
    return value_at(f, chain, scene, angles);
  };
  double value = start_value;
  for (int step = 0; step < cfg.steps; ++step) {
    Eigen::VectorXd g = fd_gradient(fn, q, cfg.fd_step);
    const double norm = g.norm();
    if (norm < 1e-12) break;
    Eigen::VectorXd dq = -(cfg.step_size / norm) * g;
    if (cfg.noise_scale > 0.0) {
      for (Eigen::Index i = 0; i < dq.size(); ++i)
        dq(i) += cfg.noise_scale * rng.normal();
      q += dq;
      value = fn(q);
    } else {
      // Noiseless descent halves the step until the value strictly drops.
      double scale = 1.0;
      bool improved = false;
      for (int bt = 0; bt < 12; ++bt) {
        Eigen::VectorXd cand = q + scale * dq;
        const double v = fn(cand);
        if (v < value) {
          q = std::move(cand);
          value = v;
          improved = true;
          break;
        }
        scale *= 0.5;
      }
      if (!improved) break;
    }
    trace.states.push_back(raw_state(chain, {q}, scene));
    if (value <= floor) break;
  }
  if (trace.states.size() < 2) trace.degenerate = true;
  return trace;
}

JointConfig sample_trace_start(const GroundTruthFeature& f,
                               const KinematicChain& chain, const Scene& scene,
                               const TeacherConfig& cfg, Rng& rng) {
  const JointConfig q0 = sample_joint_config(chain, rng);
  auto ee_of = [&](const Eigen::VectorXd& angles) {
    return forward_kinematics(chain, {angles}).joint_positions.back();
  };
  std::function<double(const Eigen::VectorXd&)> surrogate;
  switch (f.kind) {
    case FeatureKind::table:
      surrogate = [&](const Eigen::VectorXd& a) { return ee_of(a).z(); };
      break;
    case FeatureKind::coffee:
      surrogate = [&](const Eigen::VectorXd& a) {
        return value_at(f, chain, scene, a);
      };
      break;
    case FeatureKind::laptop:
    case FeatureKind::test_laptop:
    case FeatureKind::proxemics: {
      const Vec3 target = (f.kind == FeatureKind::proxemics)
                              ? scene.human_xyz
                              : (f.kind == FeatureKind::test_laptop
                                     ? scene.test_laptop_xyz.value()
                                     : scene.laptop_xyz);
      surrogate = [&, target](const Eigen::VectorXd& a) {
        return -(ee_of(a).head<2>() - target.head<2>()).norm();
      };
      break;
    }
    case FeatureKind::between_objects: {
      if (!scene.alt_object_xyz)
        throw ConfigError("between_objects needs scene.alt_object_xyz");
      // Mix of protocols: start above either object or on the segment.
      const double pick = rng.uniform();
      Vec3 anchor;
      if (pick < 0.35) {
        anchor = scene.laptop_xyz;
      } else if (pick < 0.7) {
        anchor = *scene.alt_object_xyz;
      } else {
        const double t = rng.uniform(0.2, 0.8);
        anchor = scene.laptop_xyz + t * (*scene.alt_object_xyz -
                                         scene.laptop_xyz);
      }
      surrogate = [&, anchor](const Eigen::VectorXd& a) {
        return -(ee_of(a).head<2>() - anchor.head<2>()).norm();
      };
      break;
    }
  }
  Eigen::VectorXd q = ascend(surrogate, q0.angles, cfg.start_ascent_iters,
                             2.0 * cfg.step_size, cfg.fd_step);
  return JointConfig{q};
}

std::vector<FeatureTrace> teacher_traces(const GroundTruthFeature& f,
                                         const KinematicChain& chain,
                                         const Scene& scene, int n,
                                         const TeacherConfig& cfg,
                                         std::uint64_t seed) {
  if (n < 1) throw ConfigError("trace count must be >= 1");
  const double domain_max = gt_feature_domain_max(f, chain, scene);
  std::vector<FeatureTrace> traces;
  traces.reserve(n);
  const Rng base(seed);
  for (int i = 0; i < n; ++i) {
    Rng rng = base.fork(i);
    const JointConfig start = sample_trace_start(f, chain, scene, cfg, rng);
    FeatureTrace trace =
        simulate_trace(f, chain, scene, start, cfg, rng.raw());
    if (f.kind == FeatureKind::between_objects && !trace.degenerate) {
      const double first =
          gt_feature_value(f, trace.states.front(), scene);
      const double last = gt_feature_value(f, trace.states.back(), scene);
      trace.v0 = std::clamp(first / domain_max, 0.0, 1.0);
      trace.vn = std::clamp(last / domain_max, 0.0, std::min(trace.v0, 1.0));
    }
    traces.push_back(std::move(trace));
  }
  return traces;
}

}  // namespace ferl
