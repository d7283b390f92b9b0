#pragma once

#include <stdexcept>
#include <vector>

#include "playpen/geometry.hpp"
#include "playpen/grid.hpp"
#include "playpen/rng.hpp"

namespace playpen {

struct PlanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PlannerParams {
  int max_iters = 5000;
  double step_size = 0.25;       // m
  double goal_bias = 0.1;
  double rewire_radius = 0.75;   // m
  double goal_tolerance = 0.25;  // connect when a node gets this close
  // 0 keeps sampling for the full iteration budget; otherwise stop this many
  // iterations after a first connection to the goal (training wants speed,
  // benchmarks want the polished path).
  int post_goal_iters = 0;
};

/// RRT* over (x, y) with a disc robot: a configuration is free when the
/// distance field clearance is at least `clearance_radius`. Edges are checked
/// at half-resolution sampling. Waypoint headings face the next waypoint; the
/// final waypoint takes the goal heading. Throws PlanError when start or goal
/// is blocked or no path is found within the budget.
std::vector<Pose2> plan_rrt_star(const OccupancyGrid& map, const DistanceField& field, Pose2 start,
                                 Pose2 goal, double clearance_radius, const PlannerParams& params,
                                 Rng& rng);

/// Total polyline length of a plan.
double path_length(const std::vector<Pose2>& path);

/// True when every edge of the path keeps `clearance_radius` at
/// half-resolution sampling.
bool path_collision_free(const DistanceField& field, const std::vector<Pose2>& path,
                         double clearance_radius, double resolution);

/// 8-connected grid shortest path distance between two points over cells with
/// sufficient clearance. Returns infinity when disconnected. Used as the
/// near-optimal cost reference for planner benchmarks.
double grid_shortest_path(const OccupancyGrid& map, const DistanceField& field, const Vec2& start,
                          const Vec2& goal, double clearance_radius);

}  // namespace playpen
