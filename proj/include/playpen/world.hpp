#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "playpen/geometry.hpp"
#include "playpen/grid.hpp"
#include "playpen/perception.hpp"
#include "playpen/rng.hpp"

namespace playpen {

struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Action in [-1, 1]^dim. dim 5 (chair/sweeping): base dx, dy (body frame),
/// dtheta, hand dx, dy (body frame). dim 3 (dustpan): hand dz, dyaw, gripper;
/// gripper > 0.5 opens.
struct Action {
  std::vector<double> v;

  Action() = default;
  explicit Action(std::vector<double> vals) : v(std::move(vals)) {}
  Action(std::initializer_list<double> vals) : v(vals) {}
  static Action zeros(int dim) { return Action(std::vector<double>(dim, 0.0)); }
  int dim() const { return static_cast<int>(v.size()); }
  double operator[](int i) const { return v[static_cast<size_t>(i)]; }
  double& operator[](int i) { return v[static_cast<size_t>(i)]; }
};

struct ObjectState {
  ObjectKind kind = ObjectKind::Chair;
  Pose2 pose{};                // chair: full planar pose; bag/dustpan: x, y used
  double handle_pitch = 0.0;   // dustpan only, rad in [0, pi/2]
};

struct WorldConfig {
  double max_step_translation = 0.3;  // m per unit action component
  double max_step_rotation = 0.3;     // rad per unit action component
  double robot_radius = 0.3;
  double safety_margin = 0.2;         // extra clearance enforced by clip_safe
  double grasp_range = 0.6;
  double grasp_success_prob = 0.8;
  double hand_reach = 0.8;            // box bound on |hand offset| per axis, m
  double hand_z_max = 0.6;
  double chair_radius = 0.25;         // chair footprint for table collisions
  double broom_radius = 0.35;         // sweeping contact disc around the hand
  double bag_radius = 0.08;
  double handle_length = 0.24;        // dustpan handle, m
  double stand_pitch_threshold = 1.35;  // rad
  double stand_height_window = 0.05;  // |hand_z - handle_length| <= window at release
  std::optional<Rect> table_base;     // chair-blocking footprint under the tabletop
  int action_dim = 5;
};

struct StepEvents {
  bool base_collision = false;
  bool object_collision = false;  // attached chair would hit the table base
  bool released = false;
  bool terminated = false;
};

/// Full simulation state. Everything that evolves lives here; the World class
/// only holds the map and constants, so stepping is a pure function and states
/// can be copied freely (eval rollouts, lookahead, tests).
struct WorldState {
  Pose2 robot{};
  Vec2 hand_offset{0.4, 0.0};  // body frame
  double hand_z = 0.0;
  double hand_yaw = 0.0;
  bool gripper_closed = false;
  std::optional<int> attached;  // index into objects
  Pose2 grasp_transform{};      // attached object pose in the hand frame
  std::vector<ObjectState> objects;
  long step_count = 0;
  Rng rng{0};
};

class World {
 public:
  World(OccupancyGrid grid, WorldConfig cfg);

  const OccupancyGrid& grid() const { return grid_; }
  const DistanceField& distance_field() const { return field_; }
  const WorldConfig& config() const { return cfg_; }
  Rect bounds() const { return grid_.bounds(); }
  double playpen_diagonal() const;

  bool base_pose_free(const Vec2& p) const { return field_.clearance(p) >= cfg_.robot_radius; }

  /// Hand pose in the world frame (z and yaw carried separately).
  Pose2 hand_pose(const WorldState& s) const;

  /// Applies one action. Pure: identical inputs give identical outputs.
  /// Throws ContractError on dimension mismatch or non-finite components;
  /// components outside [-1, 1] are clamped.
  std::pair<WorldState, StepEvents> step(const WorldState& s, const Action& a) const;

  /// Scales base translation so the predicted pose keeps
  /// robot_radius + safety_margin clearance. Idempotent; non-base components
  /// pass through untouched.
  Action clip_safe(const WorldState& s, const Action& a) const;

  /// Base-only motion for scripted prologues, valid regardless of action_dim.
  /// Unit-scaled like an action; translation is safety-clipped and obeys the
  /// same collision/jam/push rules as step(). Does not count as a control
  /// step.
  WorldState step_base(const WorldState& s, double dx, double dy, double dtheta) const;

  /// Within grasp_range of the object, closes the gripper with probability
  /// grasp_success_prob. Out of range fails without consuming randomness.
  std::pair<WorldState, bool> attempt_grasp(const WorldState& s, int object_id) const;

  /// Places objects at `placements` plus uniform xy jitter, clearing any
  /// attachment. Throws ContractError if a placement is inside an occupied
  /// cell.
  WorldState reset_objects(const WorldState& s, const std::vector<ObjectState>& placements,
                           double jitter) const;

  /// Detector ground truth for an object (dustpan reports handle height).
  ObjectTruth object_truth(const WorldState& s, int object_id) const;

  double handle_height(const ObjectState& o) const;

 private:
  bool chair_hits_table(const Pose2& chair_pose) const;
  void push_bag(WorldState& s, const Vec2& hand_from, const Vec2& hand_to) const;
  double clip_translation_scale(const WorldState& s, double ux, double uy) const;

  OccupancyGrid grid_;
  DistanceField field_;
  WorldConfig cfg_;
};

}  // namespace playpen
