#include "playpen/world.hpp"

#include <algorithm>
#include <cmath>

namespace playpen {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

void validate_action(const Action& a, int expect_dim) {
  if (a.dim() != expect_dim) {
    throw ContractError("action dim " + std::to_string(a.dim()) + ", expected " +
                        std::to_string(expect_dim));
  }
  for (double v : a.v) {
    if (!std::isfinite(v)) throw ContractError("non-finite action component");
  }
}

}  // namespace

World::World(OccupancyGrid grid, WorldConfig cfg)
    : grid_(std::move(grid)), field_(grid_), cfg_(cfg) {}

double World::playpen_diagonal() const {
  const Rect b = grid_.bounds();
  return std::hypot(b.xmax - b.xmin, b.ymax - b.ymin);
}

Pose2 World::hand_pose(const WorldState& s) const {
  const Vec2 h = transform_point(s.robot, s.hand_offset);
  return {h.x, h.y, s.robot.theta};
}

bool World::chair_hits_table(const Pose2& chair_pose) const {
  if (!cfg_.table_base) return false;
  return distance_to_rect(chair_pose.position(), *cfg_.table_base) < cfg_.chair_radius;
}

void World::push_bag(WorldState& s, const Vec2& hand_from, const Vec2& hand_to) const {
  int bag = -1;
  for (size_t i = 0; i < s.objects.size(); ++i) {
    if (s.objects[i].kind == ObjectKind::Bag && (!s.attached || *s.attached != (int)i)) {
      bag = static_cast<int>(i);
      break;
    }
  }
  if (bag < 0) return;

  const double contact = cfg_.broom_radius + cfg_.bag_radius;
  const Vec2 motion = hand_to - hand_from;
  const int n = std::max(1, static_cast<int>(std::ceil(motion.norm() / 0.05)));
  Vec2 bp{s.objects[bag].pose.x, s.objects[bag].pose.y};
  for (int k = 1; k <= n; ++k) {
    const Vec2 h = hand_from + motion * (static_cast<double>(k) / n);
    const Vec2 d = bp - h;
    const double dist = d.norm();
    if (dist >= contact) continue;
    Vec2 dir = dist > 1e-12 ? d.normalized() : motion.normalized();
    if (dir.norm() == 0.0) dir = {1.0, 0.0};
    const Vec2 cand = h + dir * contact;
    // The bag stops dead at railings and other occupied cells.
    if (!grid_.occupied(cand) && field_.clearance(cand) >= cfg_.bag_radius) bp = cand;
  }
  s.objects[bag].pose.x = bp.x;
  s.objects[bag].pose.y = bp.y;
}

std::pair<WorldState, StepEvents> World::step(const WorldState& s, const Action& a_in) const {
  validate_action(a_in, cfg_.action_dim);
  Action a = a_in;
  for (double& v : a.v) v = clamp_unit(v);

  WorldState out = s;
  StepEvents ev;
  out.step_count = s.step_count + 1;

  if (cfg_.action_dim == 3) {
    // Dustpan hand control: dz, dyaw, gripper.
    out.hand_z = std::clamp(s.hand_z + a[0] * cfg_.max_step_translation, 0.0, cfg_.hand_z_max);
    out.hand_yaw = wrap_angle(s.hand_yaw + a[1] * cfg_.max_step_rotation);
    if (out.attached && out.objects[*out.attached].kind == ObjectKind::Dustpan) {
      const double ratio = std::clamp(out.hand_z / cfg_.handle_length, 0.0, 1.0);
      out.objects[*out.attached].handle_pitch = std::asin(ratio);
    }
    if (a[2] > 0.5 && s.gripper_closed) {
      ev.released = true;
      ev.terminated = true;
      if (out.attached && out.objects[*out.attached].kind == ObjectKind::Dustpan) {
        ObjectState& d = out.objects[*out.attached];
        const bool stands = d.handle_pitch >= cfg_.stand_pitch_threshold &&
                            std::abs(out.hand_z - cfg_.handle_length) <= cfg_.stand_height_window;
        d.handle_pitch = stands ? kPi / 2.0 : 0.0;
      }
      out.attached.reset();
      out.gripper_closed = false;
    }
    return {out, ev};
  }

  // Base dx, dy, dtheta plus hand dx, dy; translations in the body frame at
  // the pre-step heading.
  const double tr = cfg_.max_step_translation;
  const Vec2 base_body{a[0] * tr, a[1] * tr};
  const Vec2 base_world = transform_point({0.0, 0.0, s.robot.theta}, base_body);
  const double dtheta = a[2] * cfg_.max_step_rotation;

  Vec2 hand = s.hand_offset + Vec2{a[3] * tr, a[4] * tr};
  hand.x = std::clamp(hand.x, -cfg_.hand_reach, cfg_.hand_reach);
  hand.y = std::clamp(hand.y, -cfg_.hand_reach, cfg_.hand_reach);

  Pose2 cand{s.robot.x + base_world.x, s.robot.y + base_world.y, wrap_angle(s.robot.theta + dtheta)};
  if (!base_pose_free(cand.position())) {
    cand.x = s.robot.x;
    cand.y = s.robot.y;
    ev.base_collision = true;
  }

  bool jam = false;
  if (s.attached && s.objects[*s.attached].kind == ObjectKind::Chair) {
    WorldState probe = s;
    probe.robot = cand;
    probe.hand_offset = hand;
    const Pose2 chair_cand = compose(hand_pose(probe), s.grasp_transform);
    // The chair disc must stay clear of the table and of occupied cells
    // (railings included); otherwise the whole motion is rejected.
    if (chair_hits_table(chair_cand) ||
        field_.clearance(chair_cand.position()) < cfg_.chair_radius) {
      jam = true;
      ev.object_collision = true;
    }
  }
  if (!jam) {
    out.robot = cand;
    out.hand_offset = hand;
  }

  if (out.attached) {
    ObjectState& obj = out.objects[*out.attached];
    if (obj.kind == ObjectKind::Chair) {
      obj.pose = compose(hand_pose(out), out.grasp_transform);
    } else if (obj.kind == ObjectKind::Bag) {
      const Pose2 hp = hand_pose(out);
      obj.pose.x = hp.x;
      obj.pose.y = hp.y;
    }
  }

  const Pose2 h0 = hand_pose(s);
  const Pose2 h1 = hand_pose(out);
  push_bag(out, h0.position(), h1.position());

  return {out, ev};
}

double World::clip_translation_scale(const WorldState& s, double ux, double uy) const {
  if (ux == 0.0 && uy == 0.0) return 1.0;
  const double need = cfg_.robot_radius + cfg_.safety_margin;
  const double tr = cfg_.max_step_translation;
  auto predicted = [&](double scale) {
    const Vec2 body{scale * ux * tr, scale * uy * tr};
    const Vec2 w = transform_point({0.0, 0.0, s.robot.theta}, body);
    return Vec2{s.robot.x + w.x, s.robot.y + w.y};
  };

  if (field_.clearance(predicted(1.0)) >= need) return 1.0;
  double lo = 0.0;
  if (field_.clearance(predicted(0.0)) >= need) {
    double hi = 1.0;
    for (int i = 0; i < 40; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (field_.clearance(predicted(mid)) >= need) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  return lo;
}

Action World::clip_safe(const WorldState& s, const Action& a_in) const {
  if (a_in.dim() != 5) return a_in;
  Action a = a_in;
  for (double& v : a.v) {
    if (!std::isfinite(v)) throw ContractError("non-finite action component");
    v = clamp_unit(v);
  }
  const double scale = clip_translation_scale(s, a[0], a[1]);
  if (scale == 1.0) return a;
  a[0] *= scale;
  a[1] *= scale;
  return a;
}

WorldState World::step_base(const WorldState& s, double dx, double dy, double dtheta) const {
  double ux = clamp_unit(dx), uy = clamp_unit(dy);
  const double scale = clip_translation_scale(s, ux, uy);
  ux *= scale;
  uy *= scale;

  const double tr = cfg_.max_step_translation;
  const Vec2 base_world = transform_point({0.0, 0.0, s.robot.theta}, {ux * tr, uy * tr});
  const double dth = clamp_unit(dtheta) * cfg_.max_step_rotation;

  WorldState out = s;
  Pose2 cand{s.robot.x + base_world.x, s.robot.y + base_world.y, wrap_angle(s.robot.theta + dth)};
  if (!base_pose_free(cand.position())) {
    cand.x = s.robot.x;
    cand.y = s.robot.y;
  }
  bool jam = false;
  if (s.attached && s.objects[*s.attached].kind == ObjectKind::Chair) {
    WorldState probe = s;
    probe.robot = cand;
    const Pose2 chair_cand = compose(hand_pose(probe), s.grasp_transform);
    if (chair_hits_table(chair_cand) ||
        field_.clearance(chair_cand.position()) < cfg_.chair_radius) {
      jam = true;
    }
  }
  if (!jam) out.robot = cand;

  if (out.attached) {
    ObjectState& obj = out.objects[*out.attached];
    if (obj.kind == ObjectKind::Chair) {
      obj.pose = compose(hand_pose(out), out.grasp_transform);
    } else if (obj.kind == ObjectKind::Bag) {
      const Pose2 hp = hand_pose(out);
      obj.pose.x = hp.x;
      obj.pose.y = hp.y;
    }
  }
  push_bag(out, hand_pose(s).position(), hand_pose(out).position());
  return out;
}

std::pair<WorldState, bool> World::attempt_grasp(const WorldState& s, int object_id) const {
  if (object_id < 0 || object_id >= static_cast<int>(s.objects.size())) {
    throw ContractError("attempt_grasp: bad object id");
  }
  const ObjectState& obj = s.objects[object_id];
  const Vec2 target{obj.pose.x, obj.pose.y};
  if (distance(s.robot.position(), target) > cfg_.grasp_range) return {s, false};

  WorldState out = s;
  const bool ok = out.rng.bernoulli(cfg_.grasp_success_prob);
  if (!ok) return {out, false};

  // The gripper lands wherever the grasp scorer picked on the chair, not at
  // its center, so the hand-to-chair offset varies from grasp to grasp.
  Vec2 grasp_point = target;
  if (obj.kind == ObjectKind::Chair) {
    const double ang = out.rng.uniform(0.0, 2.0 * kPi);
    const double rad = cfg_.chair_radius * std::sqrt(out.rng.uniform(0.0, 1.0));
    grasp_point = {target.x + rad * std::cos(ang), target.y + rad * std::sin(ang)};
  }
  Vec2 offset = to_body_frame({grasp_point.x, grasp_point.y, 0.0}, s.robot).position();
  offset.x = std::clamp(offset.x, -cfg_.hand_reach, cfg_.hand_reach);
  offset.y = std::clamp(offset.y, -cfg_.hand_reach, cfg_.hand_reach);
  out.hand_offset = offset;
  out.gripper_closed = true;
  out.attached = object_id;

  ObjectState& held = out.objects[object_id];
  switch (held.kind) {
    case ObjectKind::Chair:
      out.grasp_transform = compose(inverse(hand_pose(out)), held.pose);
      break;
    case ObjectKind::Dustpan:
      // Grabbing a standing dustpan knocks it flat first.
      held.handle_pitch = 0.0;
      out.hand_z = 0.0;
      out.grasp_transform = {};
      break;
    case ObjectKind::Bag:
      out.grasp_transform = {};
      break;
  }
  return {out, true};
}

WorldState World::reset_objects(const WorldState& s, const std::vector<ObjectState>& placements,
                                double jitter) const {
  WorldState out = s;
  out.objects.clear();
  out.attached.reset();
  out.gripper_closed = false;
  out.grasp_transform = {};
  for (const ObjectState& p : placements) {
    if (grid_.occupied({p.pose.x, p.pose.y})) {
      throw ContractError("reset_objects: placement inside an occupied cell");
    }
    ObjectState obj = p;
    for (int tries = 0; tries < 100; ++tries) {
      const double dx = out.rng.uniform(-jitter, jitter);
      const double dy = out.rng.uniform(-jitter, jitter);
      if (!grid_.occupied({p.pose.x + dx, p.pose.y + dy})) {
        obj.pose.x = p.pose.x + dx;
        obj.pose.y = p.pose.y + dy;
        break;
      }
    }
    out.objects.push_back(obj);
  }
  return out;
}

ObjectTruth World::object_truth(const WorldState& s, int object_id) const {
  if (object_id < 0 || object_id >= static_cast<int>(s.objects.size())) {
    throw ContractError("object_truth: bad object id");
  }
  const ObjectState& obj = s.objects[object_id];
  ObjectTruth t;
  t.position = {obj.pose.x, obj.pose.y};
  switch (obj.kind) {
    case ObjectKind::Chair:
      t.yaw = obj.pose.theta;
      break;
    case ObjectKind::Dustpan:
      t.z = handle_height(obj);
      break;
    case ObjectKind::Bag:
      break;
  }
  return t;
}

double World::handle_height(const ObjectState& o) const {
  return cfg_.handle_length * std::sin(std::clamp(o.handle_pitch, 0.0, kPi / 2.0));
}

}  // namespace playpen
