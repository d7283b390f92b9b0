#pragma once

#include <optional>
#include <vector>

#include "playpen/geometry.hpp"
#include "playpen/perception.hpp"

namespace playpen {

/// Axis-aligned target rectangle for the sweeping task.
struct GoalRegion {
  Rect rect;
};

struct ChairGoal {
  Vec2 position;
  double yaw = 0.0;
};

enum class RewardKind { ChairGoalDistance, HandleHeight, BagGoalDistance };

/// Shaped chair reward from position and yaw differences:
///   r = -x_diff + e^(-x_diff) + e^(-10 x_diff) + e^(-w_diff) + e^(-10 w_diff)
double chair_reward_from_diffs(double x_diff, double w_diff);

double chair_reward(const EstimatedObjectState& est, const ChairGoal& goal);

/// Alive penalty of -0.1 before termination; on termination a bonus of 10 if
/// the handle height clears the threshold, otherwise 0.
double dustpan_reward(long step, bool terminal, double handle_height, double threshold);

/// Euclidean distance to the closed rectangle; 0 inside.
double distance_to_region(const Vec2& point, const GoalRegion& region);

double sweep_reward_from_distances(double d_prev, double d_cur);

double sweep_reward(const EstimatedObjectState& est_prev, const EstimatedObjectState& est_cur,
                    const GoalRegion& region);

/// Episode success from the per-step reward trace.
bool is_success(RewardKind kind, const std::vector<double>& reward_trace);

/// Per-episode reward evaluator handling invalid estimates. Chair holds the
/// last valid reward value; sweeping holds the last valid estimate. With no
/// valid estimate yet, falls back to worst-case differences (playpen diagonal
/// and a yaw error of pi).
class RewardTracker {
 public:
  RewardTracker(RewardKind kind, double playpen_diagonal);

  /// Chair task step.
  double chair_step(const EstimatedObjectState& est, const ChairGoal& goal);

  /// Sweeping task step.
  double sweep_step(const EstimatedObjectState& est, const GoalRegion& region);

  /// Dustpan task step; `handle_height_estimate` is consulted only on the
  /// terminal step.
  double dustpan_step(long step, bool terminal, std::optional<double> handle_height_estimate,
                      double threshold);

  const std::optional<EstimatedObjectState>& last_valid_estimate() const { return last_est_; }

 private:
  RewardKind kind_;
  double worst_x_diff_;
  std::optional<double> last_reward_;
  std::optional<EstimatedObjectState> last_est_;
  std::optional<double> prev_region_distance_;
  std::optional<double> last_height_;
};

}  // namespace playpen
