#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "playpen/perception.hpp"
#include "playpen/planner.hpp"
#include "playpen/priors.hpp"
#include "playpen/replay.hpp"
#include "playpen/rewards.hpp"
#include "playpen/sac.hpp"
#include "playpen/task.hpp"
#include "playpen/world.hpp"

namespace playpen {

enum class Method { Ours, RlOnly, PriorOnly, Offline };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

struct EpisodeRecord {
  long episode = 0;
  long env_steps = 0;  // cumulative count after the episode
  int goal_idx = 0;
  bool success = false;
  double mean_reward = 0.0;
  int ep_len = 0;
  int grasp_retries = 0;
  long prologue_steps = 0;  // approach motion, not charged to the budget
  bool early_break = false;
  bool skipped = false;  // prologue never reached a workable grasp/start
};

struct EvalRecord {
  long env_steps = 0;
  double success_rate = 0.0;
  double mean_reward = 0.0;
  int episodes = 0;
};

struct RunnerOptions {
  Method method = Method::Ours;
  long budget = 50000;           // environment steps (policy-controlled only)
  long eval_every = 2000;        // 0 disables periodic evaluation
  int eval_episodes = 10;
  int prior_warm_episodes = 50;  // Separate composition: all-prior warmup
  int approach_retries = 5;      // plan attempts before skipping the episode
  long max_prologue_steps = 600;
  int max_consecutive_skips = 50;
  size_t online_capacity = 200000;
  size_t prior_capacity = 200000;
  int offline_prior_episodes = 400;
  double sweepable_radius = 1.2;
  // Log scripted approach motion as transitions into the prior buffer
  // (base-action tasks only; the dustpan action space cannot express them).
  bool prologue_to_prior = true;
};

// Drives one task end to end: scripted approach, policy/prior rollout,
// replay insertion, gradient updates, periodic deterministic evaluation.
class Runner {
 public:
  Runner(const TaskSpec& spec, const LearnerConfig& lcfg, const NoiseConfig& noise,
         const PlannerParams& planner, const RunnerOptions& opt, std::uint64_t seed);

  void train();
  EpisodeRecord run_training_episode();
  // Success rate over n deterministic episodes on freshly sampled starts.
  double evaluate(int n_episodes, double* mean_reward_out = nullptr);
  // Prior-driven rollouts into the prior buffer, no learning and no env-step
  // accounting; returns the number of completed (non-skipped) episodes.
  int generate_prior_data(int episodes);

  const std::vector<EpisodeRecord>& episodes() const { return episodes_; }
  const std::vector<EvalRecord>& evals() const { return evals_; }
  SacLearner<float>& learner() { return learner_; }
  const SacLearner<float>& learner() const { return learner_; }
  const World& world() const { return world_; }
  const TaskSpec& spec() const { return spec_; }
  const WorldState& state() const { return state_; }
  long env_steps() const { return env_steps_; }
  const ReplayBuffer& online_buffer() const { return online_; }
  const ReplayBuffer& prior_buffer() const { return prior_; }
  int goal_idx() const { return goal_idx_; }
  long updates_done() const { return learner_.total_updates(); }

 private:
  enum class Control { Composed, PriorOnly, PolicyOnly };

  struct RollOptions {
    Control control = Control::Composed;
    int goal_idx = 0;
    bool prior_episode = false;  // Separate composition: prior drives
    bool stochastic = false;
    bool insert = false;
    bool to_prior_buffer = false;
    bool updates = false;
    bool count_steps = false;
  };

  struct PrologueResult {
    bool ok = false;
    int grasp_retries = 0;
    long steps = 0;
  };

  struct EpisodeSetup {
    WaypointFollower follower;
    std::vector<Action> dustpan_script;
    bool need_prior = false;
  };

  // Carries reward/observation state across walk_to calls when approach
  // motion is recorded into the prior buffer.
  struct StepLog {
    RewardTracker tracker;
    Rng* perception = nullptr;
    int goal_idx = 0;
    std::vector<float> obs;
  };

  EstimatedObjectState sense(const WorldState& s, Rng& rng) const;
  bool walk_to(WorldState& s, const Pose2& target, Rng& plan_rng, long& steps_used,
               long step_budget, StepLog* log = nullptr);
  void log_walk_step(const WorldState& next, const Action& act, StepLog& log);
  PrologueResult prologue(WorldState& s, Rng& perception_rng, Rng& plan_rng, EpisodeSetup& setup,
                          int goal_idx, bool record);
  Action prior_action(const WorldState& s, EpisodeSetup& setup, int t,
                      const EstimatedObjectState& last_est) const;
  EpisodeRecord roll_episode(WorldState& s, const RollOptions& ro, Rng& perception_rng,
                             Rng& action_rng, Rng& plan_rng, Rng& prior_rng);
  void maybe_eval(bool force);
  void offline_train();
  bool updates_allowed() const;

  TaskSpec spec_;
  NoiseConfig noise_;
  PlannerParams planner_params_;
  RunnerOptions opt_;
  World world_;
  SacLearner<float> learner_;
  ReplayBuffer online_;
  ReplayBuffer prior_;
  WorldState state_;
  Rng perception_rng_, plan_rng_, action_rng_, eval_rng_, prior_rng_;
  long env_steps_ = 0;
  long episode_idx_ = 0;
  int goal_idx_ = 0;
  int trajectories_at_goal_ = 0;
  long next_eval_at_ = 0;
  long eval_calls_ = 0;
  std::vector<EpisodeRecord> episodes_;
  std::vector<EvalRecord> evals_;
};

// Replaces a bag that has been pushed outside the reachable sweeping zone
// back near the drop point; a no-op when it is still sweepable.
WorldState sweep_reset_agent(const World& world, const TaskSpec& spec, const WorldState& s,
                             double sweepable_radius);

void write_episode_csv(const std::string& path, const std::vector<EpisodeRecord>& records,
                       TaskKind task, Method method, std::uint64_t seed);
void write_eval_csv(const std::string& path, const std::vector<EvalRecord>& records, TaskKind task,
                    Method method, std::uint64_t seed);

}  // namespace playpen
