#pragma once

#include "playpen/geometry.hpp"
#include "playpen/grid.hpp"
#include "playpen/rng.hpp"

namespace playpen {

enum class ObjectKind { Chair, Bag, Dustpan };

/// Noisy object estimate as produced by the detection stack stand-in.
struct EstimatedObjectState {
  Vec2 position{};
  double z = 0.0;
  double yaw = 0.0;
  bool valid = false;
};

struct NoiseConfig {
  double position_sigma = 0.05;  // m, also applied to z
  double yaw_sigma = 0.1;        // rad
  double dropout_prob = 0.05;    // missed detection
  double outlier_prob = 0.01;    // false positive anywhere in the padded arena
  double outlier_margin = 2.0;   // m beyond the playpen bounds for outliers
};

/// Ground truth of one object as seen by the detector: position, height of the
/// tracked point, and yaw (zero for objects without a meaningful heading).
struct ObjectTruth {
  Vec2 position{};
  double z = 0.0;
  double yaw = 0.0;
};

/// One noisy detection. Draw order is fixed (dropout, outlier, then noise) so
/// seeded runs reproduce exactly.
EstimatedObjectState estimate_object_state(const ObjectTruth& truth, const NoiseConfig& cfg,
                                           const Rect& playpen_bounds, Rng& rng);

/// Rejects estimates that land outside the map's free space, mirroring the
/// of-course-it-is-not-on-the-railing filter. Invalid stays invalid.
EstimatedObjectState filter_detection(const EstimatedObjectState& est, const OccupancyGrid& map);

}  // namespace playpen
