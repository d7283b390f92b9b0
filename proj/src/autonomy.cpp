#include "playpen/autonomy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace playpen {

const char* method_name(Method m) {
  switch (m) {
    case Method::Ours: return "ours";
    case Method::RlOnly: return "rl-only";
    case Method::PriorOnly: return "prior-only";
    case Method::Offline: return "offline";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "ours") return Method::Ours;
  if (name == "rl-only") return Method::RlOnly;
  if (name == "prior-only") return Method::PriorOnly;
  if (name == "offline") return Method::Offline;
  throw ContractError("unknown method: " + name);
}

namespace {

RewardKind reward_kind(TaskKind t) {
  switch (t) {
    case TaskKind::ChairCorner:
    case TaskKind::ChairMiddle: return RewardKind::ChairGoalDistance;
    case TaskKind::DustpanStandup: return RewardKind::HandleHeight;
    case TaskKind::Sweeping: return RewardKind::BagGoalDistance;
  }
  return RewardKind::ChairGoalDistance;
}

LearnerConfig resolved_learner_config(LearnerConfig lcfg, const TaskSpec& spec) {
  if (lcfg.obs_dim == 0) lcfg.obs_dim = observation_dim(spec);
  if (lcfg.act_dim == 0) lcfg.act_dim = spec.action_dim;
  return lcfg;
}

// Same derivation as Rng::child, for APIs that take a raw seed.
std::uint64_t child_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag + 0x51ed2700f7b3a1b5ULL));
}

}  // namespace

Runner::Runner(const TaskSpec& spec, const LearnerConfig& lcfg, const NoiseConfig& noise,
               const PlannerParams& planner, const RunnerOptions& opt, std::uint64_t seed)
    : spec_(spec),
      noise_(noise),
      planner_params_(planner),
      opt_(opt),
      world_(make_task_world(spec)),
      learner_(resolved_learner_config(lcfg, spec), child_seed(seed, 1)),
      online_(opt.online_capacity),
      prior_(opt.prior_capacity),
      state_(initial_state(world_, spec, child_seed(seed, 2))),
      perception_rng_(Rng(seed).child(3)),
      plan_rng_(Rng(seed).child(4)),
      action_rng_(Rng(seed).child(5)),
      eval_rng_(Rng(seed).child(6)),
      prior_rng_(Rng(seed).child(7)) {
  if (spec_.goal_cycle.empty()) throw ContractError("task needs at least one goal");
  next_eval_at_ = opt_.eval_every > 0 ? opt_.eval_every : std::numeric_limits<long>::max();
}

EstimatedObjectState Runner::sense(const WorldState& s, Rng& rng) const {
  const ObjectTruth truth = task_object_truth(world_, s);
  const EstimatedObjectState raw = estimate_object_state(truth, noise_, world_.bounds(), rng);
  return filter_detection(raw, world_.grid());
}

void Runner::log_walk_step(const WorldState& next, const Action& act, StepLog& log) {
  if (spec_.task == TaskKind::DustpanStandup) return;  // not in its action space
  const EstimatedObjectState est = sense(next, *log.perception);
  double r = 0.0;
  switch (spec_.task) {
    case TaskKind::ChairCorner:
    case TaskKind::ChairMiddle: {
      const Pose2& g = spec_.goal_cycle[static_cast<size_t>(log.goal_idx)];
      r = log.tracker.chair_step(est, ChairGoal{g.position(), g.theta});
      break;
    }
    case TaskKind::Sweeping:
      r = log.tracker.sweep_step(est, GoalRegion{spec_.sweep_goal_region});
      break;
    case TaskKind::DustpanStandup:
      break;
  }
  std::vector<float> next_obs = build_observation(world_, spec_, next, est, log.goal_idx);
  Transition tr;
  tr.obs = log.obs;
  tr.act.resize(static_cast<size_t>(act.dim()));
  for (int i = 0; i < act.dim(); ++i) tr.act[static_cast<size_t>(i)] = static_cast<float>(act[i]);
  tr.next_obs = next_obs;
  tr.reward = static_cast<float>(r);
  tr.done = 0.0f;
  prior_.insert(std::move(tr));
  log.obs = std::move(next_obs);
}

bool Runner::walk_to(WorldState& s, const Pose2& target, Rng& plan_rng, long& steps_used,
                     long step_budget, StepLog* log) {
  const double clearance = world_.config().robot_radius + world_.config().safety_margin;
  std::vector<Pose2> plan;
  try {
    plan = plan_rrt_star(world_.grid(), world_.distance_field(), s.robot, target, clearance,
                         planner_params_, plan_rng);
  } catch (const PlanError&) {
    return false;
  }
  WaypointFollower follower(plan, world_.config().max_step_translation,
                            world_.config().max_step_rotation, /*advance_radius=*/0.1);
  while (!follower.exhausted() && steps_used < step_budget) {
    const Action a = follower.act(s.robot);
    if (follower.exhausted()) break;
    const Action ac = world_.clip_safe(s, a);
    s = world_.step_base(s, ac[0], ac[1], ac[2]);
    ++steps_used;
    if (log) log_walk_step(s, ac, *log);
  }
  if (!follower.exhausted()) return false;
  // Waypoints pop on position alone; finish the turn so the hand ends up
  // facing where the plan intended.
  for (int k = 0; k < 40 && steps_used < step_budget; ++k) {
    const double err = wrap_angle(target.theta - s.robot.theta);
    if (std::abs(err) <= 0.1) break;
    Action ac = Action::zeros(5);
    ac[2] = std::clamp(err / world_.config().max_step_rotation, -1.0, 1.0);
    s = world_.step_base(s, 0.0, 0.0, ac[2]);
    ++steps_used;
    if (log) log_walk_step(s, ac, *log);
  }
  return true;
}

Runner::PrologueResult Runner::prologue(WorldState& s, Rng& perception_rng, Rng& plan_rng,
                                        EpisodeSetup& setup, int goal_idx, bool record) {
  PrologueResult res;
  const long budget = opt_.max_prologue_steps;
  const double standoff = 0.45;

  StepLog log{RewardTracker(reward_kind(spec_.task), world_.playpen_diagonal()), &perception_rng,
              goal_idx, {}};
  StepLog* lp = nullptr;
  if (record && opt_.prologue_to_prior && spec_.action_dim == 5) {
    log.obs = build_observation(world_, spec_, s, sense(s, perception_rng), goal_idx);
    lp = &log;
  }

  auto estimate_valid = [&]() -> std::optional<EstimatedObjectState> {
    for (int k = 0; k < 20; ++k) {
      const EstimatedObjectState est = sense(s, perception_rng);
      if (est.valid) return est;
    }
    return std::nullopt;
  };

  // Approach + grasp loop shared by the chair and dustpan tasks.
  auto approach_and_grasp = [&]() -> bool {
    int grasp_attempts = 0;
    for (int attempt = 0; attempt < opt_.approach_retries; ++attempt) {
      const auto est = estimate_valid();
      if (!est) return false;
      const Vec2 obj = est->position;
      // Candidate standoff poses around the object, nearest side first.
      const double base_angle = std::atan2(s.robot.y - obj.y, s.robot.x - obj.x);
      bool walked = false;
      for (int k = 0; k < 8 && !walked; ++k) {
        const double ang =
            base_angle + (attempt * 3 + k) * (kPi / 4.0);
        const Vec2 cand{obj.x + standoff * std::cos(ang), obj.y + standoff * std::sin(ang)};
        const double need = world_.config().robot_radius + world_.config().safety_margin;
        if (world_.distance_field().clearance(cand) < need) continue;
        const Pose2 target{cand.x, cand.y, wrap_angle(ang + kPi)};  // face the object
        walked = walk_to(s, target, plan_rng, res.steps, budget, lp);
      }
      if (!walked) continue;
      while (grasp_attempts < 50) {
        auto [next, ok] = world_.attempt_grasp(s, 0);
        s = next;
        if (ok) return true;
        ++grasp_attempts;
        ++res.grasp_retries;
        const double d = distance(s.robot.position(), s.objects[0].pose.position());
        if (d > world_.config().grasp_range) break;  // drifted object: re-approach
      }
    }
    return false;
  };

  switch (spec_.task) {
    case TaskKind::ChairCorner:
    case TaskKind::ChairMiddle: {
      // Let go of last episode's grip and take a fresh one, so the grasp
      // offset re-randomizes with the approach side every episode.
      if (s.attached) {
        s.attached.reset();
        s.gripper_closed = false;
        s.grasp_transform = {};
      }
      if (!approach_and_grasp()) return res;
      if (setup.need_prior) {
        // Carry plan: the base drives to the chair's goal pose as if it were
        // its own, knowing nothing about the attached chair. Every waypoint
        // holds the goal heading, so the chair rides at a fixed body offset
        // and ends up wherever the grasp left it relative to the gripper —
        // typically half a metre off the goal at a grasp-determined yaw.
        // Closing that gap is what the learned policy is for.
        const Pose2 goal = spec_.goal_cycle[static_cast<size_t>(goal_idx)];
        const double need = world_.config().robot_radius + world_.config().safety_margin;
        setup.need_prior = false;
        if (world_.distance_field().clearance(goal.position()) >= need) {
          for (int attempt = 0; attempt < 2 && !setup.need_prior; ++attempt) {
            try {
              std::vector<Pose2> plan =
                  plan_rrt_star(world_.grid(), world_.distance_field(), s.robot, goal, need,
                                planner_params_, plan_rng);
              for (Pose2& wp : plan) wp.theta = goal.theta;
              setup.follower = WaypointFollower(plan, world_.config().max_step_translation,
                                                world_.config().max_step_rotation);
              setup.need_prior = true;
            } catch (const PlanError&) {
              // No base path this time; the policy flies solo if the retry
              // also fails.
            }
          }
        }
      }
      res.ok = true;
      return res;
    }
    case TaskKind::DustpanStandup: {
      if (s.attached) {
        res.ok = true;
        return res;
      }
      if (!approach_and_grasp()) return res;
      res.ok = true;
      return res;
    }
    case TaskKind::Sweeping: {
      s = sweep_reset_agent(world_, spec_, s, opt_.sweepable_radius);
      const auto est = estimate_valid();
      if (!est) return res;
      const Vec2 bag = est->position;
      if (distance(s.robot.position(), bag) > 1.2) {
        const double ang = std::atan2(s.robot.y - bag.y, s.robot.x - bag.x);
        const Pose2 target{bag.x + 0.9 * std::cos(ang), bag.y + 0.9 * std::sin(ang),
                           wrap_angle(ang + kPi)};
        walk_to(s, target, plan_rng, res.steps, budget, lp);
      }
      res.ok = true;
      return res;
    }
  }
  return res;
}

Action Runner::prior_action(const WorldState& s, EpisodeSetup& setup, int t,
                            const EstimatedObjectState& last_est) const {
  switch (spec_.task) {
    case TaskKind::ChairCorner:
    case TaskKind::ChairMiddle:
      return setup.follower.act(s.robot);
    case TaskKind::DustpanStandup:
      if (t < static_cast<int>(setup.dustpan_script.size())) return setup.dustpan_script[t];
      return Action::zeros(3);
    case TaskKind::Sweeping: {
      const Vec2 bag = last_est.valid ? last_est.position : spec_.sweep_drop_center;
      return sweep_prior_action(s.robot, bag, spec_.sweep_prior_max_dist,
                                world_.config().max_step_translation,
                                world_.config().max_step_rotation);
    }
  }
  return Action::zeros(spec_.action_dim);
}

bool Runner::updates_allowed() const {
  if (env_steps_ < learner_.config().learning_starts) return false;
  return !online_.empty() || !prior_.empty();
}

EpisodeRecord Runner::roll_episode(WorldState& s, const RollOptions& ro, Rng& perception_rng,
                                   Rng& action_rng, Rng& plan_rng, Rng& prior_rng) {
  EpisodeRecord rec;
  rec.goal_idx = ro.goal_idx;
  const Pose2 goal = spec_.goal_cycle[static_cast<size_t>(ro.goal_idx)];
  const bool uses_prior = ro.control != Control::PolicyOnly;

  EpisodeSetup setup;
  setup.need_prior = uses_prior;
  const bool record = ro.insert && opt_.prologue_to_prior && spec_.action_dim == 5;
  const PrologueResult pro = prologue(s, perception_rng, plan_rng, setup, ro.goal_idx, record);
  rec.grasp_retries = pro.grasp_retries;
  rec.prologue_steps = pro.steps;
  if (!pro.ok) {
    rec.skipped = true;
    rec.env_steps = env_steps_;
    return rec;
  }
  const bool prior_drives =
      ro.control == Control::PriorOnly ||
      (ro.control == Control::Composed &&
       (spec_.composition.kind != CompositionKind::Separate || ro.prior_episode));
  if (spec_.task == TaskKind::DustpanStandup && prior_drives) {
    setup.dustpan_script = generate_dustpan_prior_episode(prior_rng, spec_.horizon - 1);
  }

  RewardTracker tracker(reward_kind(spec_.task), world_.playpen_diagonal());
  std::vector<double> trace;
  EstimatedObjectState est = sense(s, perception_rng);
  EstimatedObjectState last_valid = est;  // .valid false until first hit
  std::vector<float> obs = build_observation(world_, spec_, s, est, ro.goal_idx);

  // Sequential hands control to the policy once the carry plan runs out of
  // waypoints, no later than the configured switch step.
  bool handed_over = false;

  for (int t = 0; t < spec_.horizon; ++t) {
    Action prior = Action::zeros(spec_.action_dim);
    if (uses_prior) prior = prior_action(s, setup, t, last_valid);
    Action policy = Action::zeros(spec_.action_dim);
    if (ro.control != Control::PriorOnly) {
      const std::vector<double> a = learner_.act(obs, ro.stochastic, action_rng);
      policy = Action(a);
    }
    Action act;
    switch (ro.control) {
      case Control::PriorOnly: act = prior; break;
      case Control::PolicyOnly: act = policy; break;
      case Control::Composed:
        if (spec_.composition.kind == CompositionKind::Sequential) {
          if (t > spec_.composition.switch_step ||
              (spec_.is_chair() && setup.follower.exhausted())) {
            handed_over = true;
          }
          act = handed_over ? policy : prior;
        } else {
          act = compose_actions(prior, policy, spec_.composition, t, ro.prior_episode);
        }
        break;
    }
    act = world_.clip_safe(s, act);
    auto [next, ev] = world_.step(s, act);

    est = sense(next, perception_rng);
    if (est.valid) last_valid = est;

    double r = 0.0;
    bool done = false;
    bool terminal = false;
    switch (spec_.task) {
      case TaskKind::ChairCorner:
      case TaskKind::ChairMiddle:
        r = tracker.chair_step(est, ChairGoal{goal.position(), goal.theta});
        break;
      case TaskKind::Sweeping:
        r = tracker.sweep_step(est, GoalRegion{spec_.sweep_goal_region});
        // Termination keys off the perceived bag, like the reward: the
        // in-region bonus and the episode end always agree.
        if (tracker.last_valid_estimate() &&
            distance_to_region(tracker.last_valid_estimate()->position,
                               GoalRegion{spec_.sweep_goal_region}) == 0.0) {
          done = true;
          terminal = true;
        }
        break;
      case TaskKind::DustpanStandup:
        terminal = ev.terminated;
        r = tracker.dustpan_step(t, terminal,
                                 est.valid ? std::optional<double>(est.z) : std::nullopt,
                                 spec_.dustpan_success_height);
        done = terminal;
        break;
    }
    trace.push_back(r);

    std::vector<float> next_obs = build_observation(world_, spec_, next, est, ro.goal_idx);
    if (ro.insert) {
      Transition tr;
      tr.obs = obs;
      tr.act.resize(static_cast<size_t>(spec_.action_dim));
      for (int i = 0; i < spec_.action_dim; ++i) tr.act[static_cast<size_t>(i)] =
          static_cast<float>(act[i]);
      tr.next_obs = next_obs;
      tr.reward = static_cast<float>(r);
      tr.done = done ? 1.0f : 0.0f;
      (ro.to_prior_buffer ? prior_ : online_).insert(std::move(tr));
    }

    s = std::move(next);
    obs = std::move(next_obs);
    if (ro.count_steps) ++env_steps_;
    if (ro.updates && updates_allowed()) learner_.update(online_, prior_);
    rec.ep_len = t + 1;

    if (terminal) break;
    if (spec_.is_chair() && spec_.early_break_epsilon > 0.0 && tracker.last_valid_estimate() &&
        distance(tracker.last_valid_estimate()->position, goal.position()) <=
            spec_.early_break_epsilon) {
      rec.early_break = true;
      break;
    }
  }

  // Timeout while still holding the dustpan: the gripper opens between
  // episodes, with the same stands-or-falls physics, and no reward.
  if (spec_.task == TaskKind::DustpanStandup && s.attached) {
    s = world_.step(s, Action{0.0, 0.0, 1.0}).first;
  }

  rec.success = is_success(reward_kind(spec_.task), trace);
  rec.mean_reward =
      trace.empty() ? 0.0
                    : std::accumulate(trace.begin(), trace.end(), 0.0) /
                          static_cast<double>(trace.size());
  rec.env_steps = env_steps_;
  return rec;
}

EpisodeRecord Runner::run_training_episode() {
  RollOptions ro;
  ro.goal_idx = goal_idx_;
  ro.stochastic = true;
  ro.count_steps = true;
  switch (opt_.method) {
    case Method::Ours:
    case Method::Offline:  // dataset generation path never reaches here
      ro.control = Control::Composed;
      if (spec_.composition.kind == CompositionKind::Separate) {
        ro.prior_episode = episode_idx_ < opt_.prior_warm_episodes;
      }
      ro.insert = true;
      ro.updates = true;
      ro.to_prior_buffer =
          ro.prior_episode && spec_.composition.kind == CompositionKind::Separate;
      break;
    case Method::RlOnly:
      ro.control = Control::PolicyOnly;
      ro.insert = true;
      ro.updates = true;
      break;
    case Method::PriorOnly:
      ro.control = Control::PriorOnly;
      ro.insert = false;
      ro.updates = false;
      break;
  }

  EpisodeRecord rec =
      roll_episode(state_, ro, perception_rng_, action_rng_, plan_rng_, prior_rng_);
  rec.episode = episode_idx_;
  episodes_.push_back(rec);
  ++episode_idx_;
  if (!rec.skipped) {
    ++trajectories_at_goal_;
    if (trajectories_at_goal_ >= spec_.goals_per_switch) {
      goal_idx_ = (goal_idx_ + 1) % static_cast<int>(spec_.goal_cycle.size());
      trajectories_at_goal_ = 0;
    }
  }
  return rec;
}

double Runner::evaluate(int n_episodes, double* mean_reward_out) {
  if (n_episodes <= 0) throw ContractError("evaluate: n_episodes must be positive");
  RollOptions ro;
  ro.stochastic = false;
  ro.insert = false;
  ro.updates = false;
  ro.count_steps = false;
  switch (opt_.method) {
    case Method::Ours:
    case Method::Offline:
      ro.control = Control::Composed;
      ro.prior_episode = false;  // Separate composition deploys the policy
      break;
    case Method::RlOnly: ro.control = Control::PolicyOnly; break;
    case Method::PriorOnly: ro.control = Control::PriorOnly; break;
  }

  int successes = 0;
  double reward_sum = 0.0;
  for (int e = 0; e < n_episodes; ++e) {
    const std::uint64_t tag =
        static_cast<std::uint64_t>(eval_calls_) * 1000003ULL + static_cast<std::uint64_t>(e);
    Rng ep_rng = eval_rng_.child(tag);
    Rng eper = ep_rng.child(1), eact = ep_rng.child(2), eplan = ep_rng.child(3),
        eprior = ep_rng.child(4);
    ro.goal_idx = e % static_cast<int>(spec_.goal_cycle.size());
    WorldState es = eval_initial_state(world_, spec_, ro.goal_idx, ep_rng);
    const EpisodeRecord rec = roll_episode(es, ro, eper, eact, eplan, eprior);
    if (rec.success) ++successes;
    reward_sum += rec.mean_reward;
  }
  ++eval_calls_;
  if (mean_reward_out) *mean_reward_out = reward_sum / n_episodes;
  return static_cast<double>(successes) / n_episodes;
}

void Runner::maybe_eval(bool force) {
  if (opt_.eval_every <= 0 || opt_.eval_episodes <= 0) return;
  bool due = force && (evals_.empty() || evals_.back().env_steps != env_steps_);
  while (env_steps_ >= next_eval_at_ || due) {
    EvalRecord ev;
    ev.env_steps = env_steps_;
    ev.episodes = opt_.eval_episodes;
    ev.success_rate = evaluate(opt_.eval_episodes, &ev.mean_reward);
    evals_.push_back(ev);
    if (env_steps_ >= next_eval_at_) next_eval_at_ += opt_.eval_every;
    due = false;
  }
}

int Runner::generate_prior_data(int episodes) {
  RollOptions ro;
  ro.control = Control::PriorOnly;
  ro.prior_episode = true;
  ro.insert = true;
  ro.to_prior_buffer = true;
  ro.updates = false;
  ro.count_steps = false;
  int skips = 0;
  int completed = 0;
  for (int e = 0; e < episodes; ++e) {
    ro.goal_idx = goal_idx_;
    const EpisodeRecord rec =
        roll_episode(state_, ro, perception_rng_, action_rng_, plan_rng_, prior_rng_);
    if (rec.skipped) {
      if (++skips >= opt_.max_consecutive_skips) break;
      continue;
    }
    skips = 0;
    ++completed;
    ++trajectories_at_goal_;
    if (trajectories_at_goal_ >= spec_.goals_per_switch) {
      goal_idx_ = (goal_idx_ + 1) % static_cast<int>(spec_.goal_cycle.size());
      trajectories_at_goal_ = 0;
    }
  }
  return completed;
}

void Runner::offline_train() {
  // Dataset first, then as many update calls as the online methods would
  // have made at this budget.
  generate_prior_data(opt_.offline_prior_episodes);
  if (prior_.empty()) throw ContractError("offline training produced no prior data");

  const long updates = std::max<long>(0, opt_.budget - learner_.config().learning_starts);
  for (long g = 0; g < updates; ++g) {
    learner_.update(online_, prior_);
    env_steps_ = learner_.config().learning_starts + g + 1;  // curve alignment
    maybe_eval(false);
  }
  maybe_eval(true);
}

void Runner::train() {
  if (opt_.method == Method::Offline) {
    offline_train();
    return;
  }
  int consecutive_skips = 0;
  while (env_steps_ < opt_.budget) {
    const EpisodeRecord rec = run_training_episode();
    if (rec.skipped) {
      if (++consecutive_skips >= opt_.max_consecutive_skips) break;
    } else {
      consecutive_skips = 0;
    }
    maybe_eval(false);
  }
  maybe_eval(true);
}

WorldState sweep_reset_agent(const World& world, const TaskSpec& spec, const WorldState& s,
                             double sweepable_radius) {
  if (s.objects.empty() || s.objects[0].kind != ObjectKind::Bag) return s;
  const Vec2 bag = s.objects[0].pose.position();
  if (distance(bag, spec.sweep_drop_center) <= sweepable_radius) return s;
  WorldState out = s;
  for (int tries = 0; tries < 100; ++tries) {
    const double dx = out.rng.uniform(-spec.sweep_drop_jitter, spec.sweep_drop_jitter);
    const double dy = out.rng.uniform(-spec.sweep_drop_jitter, spec.sweep_drop_jitter);
    const Vec2 p{spec.sweep_drop_center.x + dx, spec.sweep_drop_center.y + dy};
    if (!world.grid().occupied(p) &&
        world.distance_field().clearance(p) >= world.config().bag_radius) {
      out.objects[0].pose.x = p.x;
      out.objects[0].pose.y = p.y;
      break;
    }
  }
  return out;
}

namespace {

void write_csv(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw ContractError("cannot write metrics file: " + path);
  f << content;
  if (!f) throw ContractError("short write on metrics file: " + path);
}

}  // namespace

void write_episode_csv(const std::string& path, const std::vector<EpisodeRecord>& records,
                       TaskKind task, Method method, std::uint64_t seed) {
  std::string out = "episode,env_steps,task,method,seed,goal_idx,success,mean_reward,ep_len,"
                    "grasp_retries\n";
  char buf[256];
  for (const EpisodeRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%ld,%ld,%s,%s,%llu,%d,%d,%.9g,%d,%d\n", r.episode,
                  r.env_steps, task_name(task), method_name(method),
                  static_cast<unsigned long long>(seed), r.goal_idx, r.success ? 1 : 0,
                  r.mean_reward, r.ep_len, r.grasp_retries);
    out += buf;
  }
  write_csv(path, out);
}

void write_eval_csv(const std::string& path, const std::vector<EvalRecord>& records, TaskKind task,
                    Method method, std::uint64_t seed) {
  std::string out = "env_steps,task,method,seed,success_rate,mean_reward,episodes\n";
  char buf[256];
  for (const EvalRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%ld,%s,%s,%llu,%.9g,%.9g,%d\n", r.env_steps,
                  task_name(task), method_name(method), static_cast<unsigned long long>(seed),
                  r.success_rate, r.mean_reward, r.episodes);
    out += buf;
  }
  write_csv(path, out);
}

}  // namespace playpen
