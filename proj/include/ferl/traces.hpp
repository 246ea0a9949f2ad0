#pragma once

#include <cstdint>
#include <vector>

#include "ferl/envs.hpp"
#include "ferl/kinematics.hpp"

namespace ferl {

class Rng;

/// A state sequence monotonically decreasing in one feature's value, with
/// optional relative start/end values (defaults: starts at the domain
/// maximum, ends at the minimum).
struct FeatureTrace {
  std::vector<RawState> states;
  double v0 = 1.0;
  double vn = 0.0;
  bool degenerate = false;  // start was already at the minimum

  void validate() const;
};

struct StateRef {
  int trace;
  int index;
};

enum class EquivTag { start_pair, end_pair };

struct OrderedTuple {
  StateRef earlier;  // appears earlier in the trace, higher feature value
  StateRef later;
};

struct EquivTuple {
  StateRef a, b;
  EquivTag tag;
  double va, vb;  // the two traces' v0 (start_pair) or vn (end_pair)
};

struct TupleDataset {
  std::vector<OrderedTuple> ordered;
  std::vector<EquivTuple> equiv;
};

/// All within-trace ordered pairs plus all cross-trace start/end pairs.
/// |ordered| = sum_i C(n_i+1, 2), |equiv| = 2 C(N, 2). Degenerate traces
/// are skipped.
TupleDataset build_datasets(const std::vector<FeatureTrace>& traces);

/// Replicates every equivalence tuple `factor` times; ordered tuples are
/// untouched.
TupleDataset augment_equiv(TupleDataset ds, int factor = 5);

struct TeacherConfig {
  int steps = 30;             // max descent steps per trace
  double step_size = 0.05;    // joint-space step, radians
  double noise_scale = 0.02;  // gaussian joint noise on each step
  double stop_fraction = 1e-3;  // stop when value <= fraction * start value
  double fd_step = 1e-4;      // finite-difference step for gradients
  int start_ascent_iters = 200;
};

/// Greedy descent on the ground-truth feature from `start`, recording raw
/// states. A start already at the minimum yields a single-state trace
/// flagged degenerate.
FeatureTrace simulate_trace(const GroundTruthFeature& f,
                            const KinematicChain& chain, const Scene& scene,
                            const JointConfig& start, const TeacherConfig& cfg,
                            std::uint64_t seed);

/// Draws a start configuration where the feature is highly expressed,
/// mirroring the per-feature trace protocols (laptop traces start above the
/// laptop at varied heights, table traces at high z, ...).
JointConfig sample_trace_start(const GroundTruthFeature& f,
                               const KinematicChain& chain, const Scene& scene,
                               const TeacherConfig& cfg, Rng& rng);

/// n traces with protocol-matched starts. between_objects traces carry
/// explicit relative values (the ground-truth fraction of the feature range
/// at the endpoints); every other feature uses the defaults (1, 0).
std::vector<FeatureTrace> teacher_traces(const GroundTruthFeature& f,
                                         const KinematicChain& chain,
                                         const Scene& scene, int n,
                                         const TeacherConfig& cfg,
                                         std::uint64_t seed);

}  // namespace ferl
