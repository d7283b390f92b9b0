#pragma once

#include <vector>

#include "playpen/geometry.hpp"
#include "playpen/rng.hpp"
#include "playpen/world.hpp"

namespace playpen {

/// How a behavior prior and the learned policy share control of an episode.
enum class CompositionKind {
  Separate,    // whole episodes are either prior or policy
  Sequential,  // prior for steps t <= switch_step, then policy
  Residual,    // action = clamp(prior + policy)
};

struct CompositionMode {
  CompositionKind kind = CompositionKind::Separate;
  int switch_step = 0;  // Sequential only
};

/// Sequential: `prior_episode` is ignored; Separate: it selects the source for
/// the whole episode. Residual ignores both extra arguments.
Action compose_actions(const Action& prior, const Action& policy, const CompositionMode& mode,
                       int t, bool prior_episode);

/// Follows a planned waypoint list with a proportional controller, advancing
/// to the next waypoint within `advance_radius`. Emits zero actions once the
/// plan is exhausted.
class WaypointFollower {
 public:
  WaypointFollower() = default;
  WaypointFollower(std::vector<Pose2> plan, double max_step_translation, double max_step_rotation,
                   double advance_radius = 0.15);

  Action act(const Pose2& robot);
  bool exhausted() const { return index_ >= plan_.size(); }
  const std::vector<Pose2>& plan() const { return plan_; }

 private:
  std::vector<Pose2> plan_;
  double tr_ = 0.3;
  double rot_ = 0.3;
  double advance_radius_ = 0.15;
  size_t index_ = 0;
};

/// Distance-constraint prior for sweeping: zero action while the robot is
/// within `max_dist` of the latest bag estimate, otherwise move toward it.
Action sweep_prior_action(const Pose2& robot, const Vec2& bag_position, double max_dist,
                          double max_step_translation, double max_step_rotation);

/// Scripted dustpan pick-up attempts: a fixed wrist-yaw direction per episode,
/// a coin-flipped up/down wrist motion per step, plus uniform exploration
/// noise whose gripper channel eventually opens the hand. Produces
/// episode_len + 1 actions (the last one pulls down while the hand may open).
std::vector<Action> generate_dustpan_prior_episode(Rng& rng, int episode_len,
                                                   double noise_scale = 1.0);

}  // namespace playpen
