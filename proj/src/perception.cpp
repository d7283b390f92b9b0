#include "playpen/perception.hpp"

namespace playpen {

EstimatedObjectState estimate_object_state(const ObjectTruth& truth, const NoiseConfig& cfg,
                                           const Rect& playpen_bounds, Rng& rng) {
  EstimatedObjectState est;
  if (rng.uniform() < cfg.dropout_prob) {
    est.valid = false;
    return est;
  }
  if (rng.uniform() < cfg.outlier_prob) {
    const double m = cfg.outlier_margin;
    est.position.x = rng.uniform(playpen_bounds.xmin - m, playpen_bounds.xmax + m);
    est.position.y = rng.uniform(playpen_bounds.ymin - m, playpen_bounds.ymax + m);
    est.z = 0.0;
    est.yaw = wrap_angle(rng.uniform(-kPi, kPi));
    est.valid = true;
    return est;
  }
  est.position.x = truth.position.x + cfg.position_sigma * rng.normal();
  est.position.y = truth.position.y + cfg.position_sigma * rng.normal();
  est.z = truth.z + cfg.position_sigma * rng.normal();
  est.yaw = wrap_angle(truth.yaw + cfg.yaw_sigma * rng.normal());
  est.valid = true;
  return est;
}

EstimatedObjectState filter_detection(const EstimatedObjectState& est, const OccupancyGrid& map) {
  if (!est.valid) return est;
  EstimatedObjectState out = est;
  const int ix = map.cell_x(est.position.x);
  const int iy = map.cell_y(est.position.y);
  if (map.occupied(ix, iy)) out.valid = false;
  return out;
}

}  // namespace playpen
