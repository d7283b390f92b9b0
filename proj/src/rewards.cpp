#include "playpen/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace playpen {

double chair_reward_from_diffs(double x_diff, double w_diff) {
  return -x_diff + std::exp(-x_diff) + std::exp(-10.0 * x_diff) + std::exp(-w_diff) +
         std::exp(-10.0 * w_diff);
}

double chair_reward(const EstimatedObjectState& est, const ChairGoal& goal) {
  const double x_diff = (est.position - goal.position).norm();
  const double w_diff = std::abs(wrap_angle(est.yaw - goal.yaw));
  return chair_reward_from_diffs(x_diff, w_diff);
}

double dustpan_reward(long /*step*/, bool terminal, double handle_height, double threshold) {
  if (!terminal) return -0.1;
  return handle_height >= threshold ? 10.0 : 0.0;
}

double distance_to_region(const Vec2& point, const GoalRegion& region) {
  return distance_to_rect(point, region.rect);
}

double sweep_reward_from_distances(double d_prev, double d_cur) {
  double r = -0.2 * d_cur + std::exp(-10.0 * d_cur);
  r += 10.0 * std::max(0.0, d_prev - d_cur);
  if (d_cur == 0.0) r += 10.0;
  return r;
}

double sweep_reward(const EstimatedObjectState& est_prev, const EstimatedObjectState& est_cur,
                    const GoalRegion& region) {
  const double d_prev = distance_to_region(est_prev.position, region);
  const double d_cur = distance_to_region(est_cur.position, region);
  return sweep_reward_from_distances(d_prev, d_cur);
}

bool is_success(RewardKind kind, const std::vector<double>& trace) {
  if (trace.empty()) return false;
  switch (kind) {
    case RewardKind::ChairGoalDistance:
      return *std::max_element(trace.begin(), trace.end()) > 1.0;
    case RewardKind::HandleHeight:
      return trace.back() == 10.0;
    case RewardKind::BagGoalDistance:
      return trace.back() >= 10.0;
  }
  return false;
}

RewardTracker::RewardTracker(RewardKind kind, double playpen_diagonal)
    : kind_(kind), worst_x_diff_(playpen_diagonal) {}

double RewardTracker::chair_step(const EstimatedObjectState& est, const ChairGoal& goal) {
  if (kind_ != RewardKind::ChairGoalDistance) throw std::logic_error("tracker kind mismatch");
  if (!est.valid) {
    if (last_reward_) return *last_reward_;
    return chair_reward_from_diffs(worst_x_diff_, kPi);
  }
  last_est_ = est;
  const double r = chair_reward(est, goal);
  last_reward_ = r;
  return r;
}

double RewardTracker::sweep_step(const EstimatedObjectState& est, const GoalRegion& region) {
  if (kind_ != RewardKind::BagGoalDistance) throw std::logic_error("tracker kind mismatch");
  // Resolve the current estimate with hold-last before computing distances so
  // a dropped detection never produces phantom progress.
  std::optional<EstimatedObjectState> cur;
  if (est.valid) {
    cur = est;
  } else if (last_est_) {
    cur = last_est_;
  }
  double d_cur = cur ? distance_to_region(cur->position, region) : worst_x_diff_;
  double d_prev = prev_region_distance_ ? *prev_region_distance_ : d_cur;
  if (cur) last_est_ = cur;
  prev_region_distance_ = d_cur;
  const double r = sweep_reward_from_distances(d_prev, d_cur);
  last_reward_ = r;
  return r;
}

double RewardTracker::dustpan_step(long step, bool terminal,
                                   std::optional<double> handle_height_estimate,
                                   double threshold) {
  if (kind_ != RewardKind::HandleHeight) throw std::logic_error("tracker kind mismatch");
  if (handle_height_estimate) last_height_ = handle_height_estimate;
  const double h = last_height_ ? *last_height_ : 0.0;
  return dustpan_reward(step, terminal, h, threshold);
}

}  // namespace playpen
