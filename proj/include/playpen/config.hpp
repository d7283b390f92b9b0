#pragma once

#include <cstdint>
#include <string>

#include "playpen/autonomy.hpp"
#include "playpen/perception.hpp"
#include "playpen/planner.hpp"
#include "playpen/sac.hpp"
#include "playpen/task.hpp"

namespace playpen {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Task-level knobs that may override the per-task defaults. Values are
/// resolved (never sentinel) after parsing.
struct TaskOverrides {
  int horizon = 0;
  int goals_per_switch = 0;
  double early_break_epsilon = 0.0;
  double object_jitter = 0.0;
};

/// Fully resolved run description: what to train, with which seeds and
/// budgets, and every module configuration. Serializes canonically so a
/// config hash identifies a run exactly.
struct RunConfig {
  TaskKind task = TaskKind::ChairCorner;
  Method method = Method::Ours;
  std::uint64_t seed = 0;
  long budget = 50000;
  std::string out_dir = "runs";
  NoiseConfig noise;
  PlannerParams planner;
  LearnerConfig learner;
  RunnerOptions run;  // method/budget fields inside are kept in sync
  TaskOverrides task_overrides;
};

/// Parse JSON text into a config. Unknown keys raise ConfigError naming the
/// key; type mismatches raise ConfigError naming the key. `overrides` is a
/// second JSON document applied on top (command-line flags); its values win.
RunConfig parse_config_text(const std::string& file_text, const std::string& overrides_text);
RunConfig parse_config_file(const std::string& path, const std::string& overrides_text);

/// Canonical serialization: sorted keys, fixed float formatting; parsing it
/// back yields an identical config.
std::string serialize_config(const RunConfig& cfg);

/// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const RunConfig& cfg);

/// Task spec assembled from the task's defaults plus the overrides.
TaskSpec resolved_task_spec(const RunConfig& cfg);

/// Runner wired exactly as the config describes.
Runner make_runner(const RunConfig& cfg);

}  // namespace playpen
