#include "playpen/priors.hpp"

#include <algorithm>
#include <cmath>

namespace playpen {

Action compose_actions(const Action& prior, const Action& policy, const CompositionMode& mode,
                       int t, bool prior_episode) {
  switch (mode.kind) {
    case CompositionKind::Separate:
      return prior_episode ? prior : policy;
    case CompositionKind::Sequential:
      return t <= mode.switch_step ? prior : policy;
    case CompositionKind::Residual: {
      Action out = prior;
      for (int i = 0; i < out.dim(); ++i) {
        out[i] = std::clamp(out[i] + policy[i], -1.0, 1.0);
      }
      return out;
    }
  }
  return policy;
}

WaypointFollower::WaypointFollower(std::vector<Pose2> plan, double max_step_translation,
                                   double max_step_rotation, double advance_radius)
    : plan_(std::move(plan)),
      tr_(max_step_translation),
      rot_(max_step_rotation),
      advance_radius_(advance_radius) {}

Action WaypointFollower::act(const Pose2& robot) {
  while (index_ < plan_.size() &&
         distance(robot.position(), plan_[index_].position()) <= advance_radius_) {
    ++index_;
  }
  if (index_ >= plan_.size()) return Action::zeros(5);

  // Full error, capped: a proportional controller with gain 1/step.
  const Pose2 err = to_body_frame(plan_[index_], robot);
  Action a = Action::zeros(5);
  a[0] = std::clamp(err.x / tr_, -1.0, 1.0);
  a[1] = std::clamp(err.y / tr_, -1.0, 1.0);
  a[2] = std::clamp(err.theta / rot_, -1.0, 1.0);
  return a;
}

Action sweep_prior_action(const Pose2& robot, const Vec2& bag_position, double max_dist,
                          double max_step_translation, double max_step_rotation) {
  Action a = Action::zeros(5);
  const Vec2 d = bag_position - robot.position();
  if (d.norm() <= max_dist) return a;
  const Pose2 err = to_body_frame({bag_position.x, bag_position.y, robot.theta}, robot);
  a[0] = std::clamp(err.x / max_step_translation, -1.0, 1.0);
  a[1] = std::clamp(err.y / max_step_translation, -1.0, 1.0);
  const double face = wrap_angle(std::atan2(d.y, d.x) - robot.theta);
  a[2] = std::clamp(face / max_step_rotation, -1.0, 1.0);
  return a;
}

std::vector<Action> generate_dustpan_prior_episode(Rng& rng, int episode_len, double noise_scale) {
  const double omega = rng.bernoulli(0.5) ? 0.5 : -0.5;
  std::vector<Action> actions;
  actions.reserve(static_cast<size_t>(episode_len) + 1);
  auto noisy = [&](double z, double w) {
    Action a = Action::zeros(3);
    a[0] = z + noise_scale * rng.uniform(-0.1, 0.1);
    a[1] = w + noise_scale * rng.uniform(-0.1, 0.1);
    a[2] = noise_scale * rng.uniform(-1.0, 1.0);
    for (double& v : a.v) v = std::clamp(v, -1.0, 1.0);
    return a;
  };
  for (int t = 0; t < episode_len; ++t) {
    const double z = rng.bernoulli(0.5) ? 0.2 : -0.2;
    actions.push_back(noisy(z, omega));
  }
  // Final pull-down so unfinished attempts end with the wrist low.
  actions.push_back(noisy(-0.2, omega));
  return actions;
}

}  // namespace playpen
