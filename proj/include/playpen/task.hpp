#pragma once

#include <optional>
#include <string>
#include <vector>

#include "playpen/perception.hpp"
#include "playpen/priors.hpp"
#include "playpen/world.hpp"

namespace playpen {

enum class TaskKind { ChairCorner, ChairMiddle, DustpanStandup, Sweeping };

const char* task_name(TaskKind k);
TaskKind task_from_name(const std::string& name);

/// Everything that defines one task instance: goals, horizon, control
/// composition, and the scene geometry the world is assembled from.
struct TaskSpec {
  TaskKind task = TaskKind::ChairCorner;
  std::vector<Pose2> goal_cycle;       // >= 1 entries; chair tasks use 2
  int goals_per_switch = 1;            // trajectories at a goal before switching
  int horizon = 16;                    // max control steps per episode
  double early_break_epsilon = 0.2;    // m; <= 0 disables the early break
  CompositionMode composition{CompositionKind::Sequential, 8};
  int action_dim = 5;

  Pose2 robot_home{1.0, 2.5, 0.0};
  double object_jitter = 0.1;          // m, object placement jitter

  std::optional<Rect> table_base;      // chair-corner obstacle footprint
  Rect sweep_goal_region{};
  Vec2 sweep_drop_center{};            // reset agent drops the bag here
  double sweep_drop_jitter = 0.3;
  double sweep_prior_max_dist = 0.45;  // distance constraint of the sweep prior
  Vec2 dustpan_base{};
  double dustpan_success_height = 0.192;

  bool is_chair() const { return task == TaskKind::ChairCorner || task == TaskKind::ChairMiddle; }
};

/// Defaults for each task, mirroring the playpen layout: chair goals far
/// apart (corner variant tucks goal A beside the table), sweeping pushes the
/// bag across the room into the goal region, dustpan works in place.
TaskSpec default_task_spec(TaskKind k);

/// Playpen grid plus task obstacles and a WorldConfig wired for the task.
World make_task_world(const TaskSpec& spec);

/// Fresh training state: robot at home, objects at their task start poses
/// (chair at goal B) with jitter drawn from `seed`.
WorldState initial_state(const World& world, const TaskSpec& spec, std::uint64_t seed);

/// Evaluation state for a goal: the movable object starts near the opposite
/// goal of the cycle (chair tasks) or at its standard start, jittered from
/// `rng`.
WorldState eval_initial_state(const World& world, const TaskSpec& spec, int goal_idx, Rng& rng);

/// Observation layout: body pose (4) + hand (6) + object estimate (6) + goal
/// (4 for 5-dim tasks, 1 for dustpan), all roughly in [-1, 1].
int observation_dim(const TaskSpec& spec);
std::vector<float> build_observation(const World& world, const TaskSpec& spec, const WorldState& s,
                                     const EstimatedObjectState& est, int goal_idx);

/// Ground truth of the task's movable object (index 0 by construction).
ObjectTruth task_object_truth(const World& world, const WorldState& s);

/// Distance from the movable object to the active goal: chair tasks measure
/// to the goal pose, sweeping to the goal region, dustpan reports the height
/// still missing to the success threshold.
double goal_distance(const World& world, const TaskSpec& spec, const WorldState& s, int goal_idx);

}  // namespace playpen
