#include "playpen/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace playpen {

using nlohmann::json;

namespace {

enum class FieldKind { Integer, Number, Boolean, String, Object };

struct Field {
  const char* name;
  FieldKind kind;
};

const Field kNoiseFields[] = {
    {"position_sigma", FieldKind::Number}, {"yaw_sigma", FieldKind::Number},
    {"dropout_prob", FieldKind::Number},   {"outlier_prob", FieldKind::Number},
    {"outlier_margin", FieldKind::Number},
};

const Field kPlannerFields[] = {
    {"max_iters", FieldKind::Integer},      {"step_size", FieldKind::Number},
    {"goal_bias", FieldKind::Number},       {"rewire_radius", FieldKind::Number},
    {"goal_tolerance", FieldKind::Number},  {"post_goal_iters", FieldKind::Integer},
};

const Field kLearnerFields[] = {
    {"hidden", FieldKind::Integer},        {"ensemble_size", FieldKind::Integer},
    {"min_q_subset", FieldKind::Integer},  {"batch_size", FieldKind::Integer},
    {"utd", FieldKind::Integer},           {"actor_lr", FieldKind::Number},
    {"critic_lr", FieldKind::Number},      {"temp_lr", FieldKind::Number},
    {"gamma", FieldKind::Number},          {"polyak", FieldKind::Number},
    {"init_temperature", FieldKind::Number}, {"target_entropy", FieldKind::Number},
    {"prior_fraction", FieldKind::Number}, {"critic_layer_norm", FieldKind::Boolean},
    {"log_std_min", FieldKind::Number},    {"log_std_max", FieldKind::Number},
    {"learning_starts", FieldKind::Integer},
};

const Field kRunFields[] = {
    {"eval_every", FieldKind::Integer},
    {"eval_episodes", FieldKind::Integer},
    {"prior_warm_episodes", FieldKind::Integer},
    {"approach_retries", FieldKind::Integer},
    {"max_prologue_steps", FieldKind::Integer},
    {"max_consecutive_skips", FieldKind::Integer},
    {"online_capacity", FieldKind::Integer},
    {"prior_capacity", FieldKind::Integer},
    {"offline_prior_episodes", FieldKind::Integer},
    {"sweepable_radius", FieldKind::Number},
    {"prologue_to_prior", FieldKind::Boolean},
};

const Field kTaskOverrideFields[] = {
    {"horizon", FieldKind::Integer},
    {"goals_per_switch", FieldKind::Integer},
    {"early_break_epsilon", FieldKind::Number},
    {"object_jitter", FieldKind::Number},
};

const Field kTopFields[] = {
    {"task", FieldKind::String},   {"method", FieldKind::String},
    {"seed", FieldKind::Integer},  {"budget", FieldKind::Integer},
    {"out_dir", FieldKind::String}, {"noise", FieldKind::Object},
    {"planner", FieldKind::Object}, {"learner", FieldKind::Object},
    {"run", FieldKind::Object},    {"task_overrides", FieldKind::Object},
};

template <size_t N>
const Field* find_field(const Field (&table)[N], const std::string& key) {
  for (const Field& f : table) {
    if (key == f.name) return &f;
  }
  return nullptr;
}

bool kind_matches(const json& v, FieldKind kind) {
  switch (kind) {
    case FieldKind::Integer: return v.is_number_integer();
    case FieldKind::Number: return v.is_number();
    case FieldKind::Boolean: return v.is_boolean();
    case FieldKind::String: return v.is_string();
    case FieldKind::Object: return v.is_object();
  }
  return false;
}

const char* kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::Integer: return "integer";
    case FieldKind::Number: return "number";
    case FieldKind::Boolean: return "boolean";
    case FieldKind::String: return "string";
    case FieldKind::Object: return "object";
  }
  return "?";
}

template <size_t N>
void validate_object(const json& j, const std::string& prefix, const Field (&table)[N]) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Field* f = find_field(table, it.key());
    if (!f) throw ConfigError("unknown config key: " + path);
    if (!kind_matches(it.value(), f->kind)) {
      throw ConfigError("config key " + path + " must be a " + kind_name(f->kind));
    }
  }
}

void validate_document(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  validate_object(j, "", kTopFields);
  if (j.contains("noise")) validate_object(j["noise"], "noise", kNoiseFields);
  if (j.contains("planner")) validate_object(j["planner"], "planner", kPlannerFields);
  if (j.contains("learner")) validate_object(j["learner"], "learner", kLearnerFields);
  if (j.contains("run")) validate_object(j["run"], "run", kRunFields);
  if (j.contains("task_overrides")) {
    validate_object(j["task_overrides"], "task_overrides", kTaskOverrideFields);
  }
}

json merged_value(const json& file, const json& flags, const char* section) {
  json out = json::object();
  if (file.contains(section)) out.update(file[section]);
  if (flags.contains(section)) out.update(flags[section]);
  return out;
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void check(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

RunConfig parse_config_text(const std::string& file_text, const std::string& overrides_text) {
  json file, flags;
  try {
    file = file_text.empty() ? json::object() : json::parse(file_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    flags = overrides_text.empty() ? json::object() : json::parse(overrides_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("override set is not valid JSON: ") + e.what());
  }
  validate_document(file);
  validate_document(flags);

  json top = file;
  top.update(flags);  // shallow: flag sections replace whole objects, so merge
  const json noise = merged_value(file, flags, "noise");
  const json planner = merged_value(file, flags, "planner");
  const json learner = merged_value(file, flags, "learner");
  const json run = merged_value(file, flags, "run");
  const json overrides = merged_value(file, flags, "task_overrides");

  RunConfig cfg;
  try {
    if (top.contains("task")) cfg.task = task_from_name(top.at("task").get<std::string>());
    if (top.contains("method")) cfg.method = method_from_name(top.at("method").get<std::string>());
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }
  read(top, "seed", cfg.seed);
  read(top, "budget", cfg.budget);
  read(top, "out_dir", cfg.out_dir);

  read(noise, "position_sigma", cfg.noise.position_sigma);
  read(noise, "yaw_sigma", cfg.noise.yaw_sigma);
  read(noise, "dropout_prob", cfg.noise.dropout_prob);
  read(noise, "outlier_prob", cfg.noise.outlier_prob);
  read(noise, "outlier_margin", cfg.noise.outlier_margin);

  read(planner, "max_iters", cfg.planner.max_iters);
  read(planner, "step_size", cfg.planner.step_size);
  read(planner, "goal_bias", cfg.planner.goal_bias);
  read(planner, "rewire_radius", cfg.planner.rewire_radius);
  read(planner, "goal_tolerance", cfg.planner.goal_tolerance);
  read(planner, "post_goal_iters", cfg.planner.post_goal_iters);

  read(learner, "hidden", cfg.learner.hidden);
  read(learner, "ensemble_size", cfg.learner.ensemble_size);
  read(learner, "min_q_subset", cfg.learner.min_q_subset);
  read(learner, "batch_size", cfg.learner.batch_size);
  read(learner, "utd", cfg.learner.utd);
  read(learner, "actor_lr", cfg.learner.actor_lr);
  read(learner, "critic_lr", cfg.learner.critic_lr);
  read(learner, "temp_lr", cfg.learner.temp_lr);
  read(learner, "gamma", cfg.learner.gamma);
  read(learner, "polyak", cfg.learner.polyak);
  read(learner, "init_temperature", cfg.learner.init_temperature);
  read(learner, "target_entropy", cfg.learner.target_entropy);
  read(learner, "prior_fraction", cfg.learner.prior_fraction);
  read(learner, "critic_layer_norm", cfg.learner.critic_layer_norm);
  read(learner, "log_std_min", cfg.learner.log_std_min);
  read(learner, "log_std_max", cfg.learner.log_std_max);
  read(learner, "learning_starts", cfg.learner.learning_starts);

  read(run, "eval_every", cfg.run.eval_every);
  read(run, "eval_episodes", cfg.run.eval_episodes);
  read(run, "prior_warm_episodes", cfg.run.prior_warm_episodes);
  read(run, "approach_retries", cfg.run.approach_retries);
  read(run, "max_prologue_steps", cfg.run.max_prologue_steps);
  read(run, "max_consecutive_skips", cfg.run.max_consecutive_skips);
  read(run, "online_capacity", cfg.run.online_capacity);
  read(run, "prior_capacity", cfg.run.prior_capacity);
  read(run, "offline_prior_episodes", cfg.run.offline_prior_episodes);
  read(run, "sweepable_radius", cfg.run.sweepable_radius);
  read(run, "prologue_to_prior", cfg.run.prologue_to_prior);

  // Task-level values default from the chosen task unless given explicitly.
  const TaskSpec task_default = default_task_spec(cfg.task);
  cfg.task_overrides.horizon = task_default.horizon;
  cfg.task_overrides.goals_per_switch = task_default.goals_per_switch;
  cfg.task_overrides.early_break_epsilon = task_default.early_break_epsilon;
  cfg.task_overrides.object_jitter = task_default.object_jitter;
  read(overrides, "horizon", cfg.task_overrides.horizon);
  read(overrides, "goals_per_switch", cfg.task_overrides.goals_per_switch);
  read(overrides, "early_break_epsilon", cfg.task_overrides.early_break_epsilon);
  read(overrides, "object_jitter", cfg.task_overrides.object_jitter);

  check(cfg.budget > 0, "budget must be positive");
  check(cfg.task_overrides.horizon >= 1, "task_overrides.horizon must be >= 1");
  check(cfg.task_overrides.goals_per_switch >= 1, "task_overrides.goals_per_switch must be >= 1");
  check(cfg.learner.hidden >= 1, "learner.hidden must be >= 1");
  check(cfg.learner.batch_size >= 1, "learner.batch_size must be >= 1");
  check(cfg.learner.utd >= 1, "learner.utd must be >= 1");
  check(cfg.learner.ensemble_size >= 1, "learner.ensemble_size must be >= 1");
  check(cfg.learner.min_q_subset >= 1 &&
            cfg.learner.min_q_subset <= cfg.learner.ensemble_size,
        "learner.min_q_subset must be in [1, ensemble_size]");
  check(cfg.learner.prior_fraction >= 0.0 && cfg.learner.prior_fraction <= 1.0,
        "learner.prior_fraction must be in [0, 1]");
  check(cfg.learner.gamma >= 0.0 && cfg.learner.gamma < 1.0,
        "learner.gamma must be in [0, 1)");
  check(cfg.run.eval_episodes >= 1, "run.eval_episodes must be >= 1");
  check(cfg.planner.max_iters >= 1, "planner.max_iters must be >= 1");

  cfg.run.method = cfg.method;
  cfg.run.budget = cfg.budget;
  return cfg;
}

RunConfig parse_config_file(const std::string& path, const std::string& overrides_text) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), overrides_text);
}

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["task"] = task_name(cfg.task);
  j["method"] = method_name(cfg.method);
  j["seed"] = cfg.seed;
  j["budget"] = cfg.budget;
  j["out_dir"] = cfg.out_dir;
  j["noise"] = {{"position_sigma", cfg.noise.position_sigma},
                {"yaw_sigma", cfg.noise.yaw_sigma},
                {"dropout_prob", cfg.noise.dropout_prob},
                {"outlier_prob", cfg.noise.outlier_prob},
                {"outlier_margin", cfg.noise.outlier_margin}};
  j["planner"] = {{"max_iters", cfg.planner.max_iters},
                  {"step_size", cfg.planner.step_size},
                  {"goal_bias", cfg.planner.goal_bias},
                  {"rewire_radius", cfg.planner.rewire_radius},
                  {"goal_tolerance", cfg.planner.goal_tolerance},
                  {"post_goal_iters", cfg.planner.post_goal_iters}};
  j["learner"] = {{"hidden", cfg.learner.hidden},
                  {"ensemble_size", cfg.learner.ensemble_size},
                  {"min_q_subset", cfg.learner.min_q_subset},
                  {"batch_size", cfg.learner.batch_size},
                  {"utd", cfg.learner.utd},
                  {"actor_lr", cfg.learner.actor_lr},
                  {"critic_lr", cfg.learner.critic_lr},
                  {"temp_lr", cfg.learner.temp_lr},
                  {"gamma", cfg.learner.gamma},
                  {"polyak", cfg.learner.polyak},
                  {"init_temperature", cfg.learner.init_temperature},
                  {"target_entropy", cfg.learner.target_entropy},
                  {"prior_fraction", cfg.learner.prior_fraction},
                  {"critic_layer_norm", cfg.learner.critic_layer_norm},
                  {"log_std_min", cfg.learner.log_std_min},
                  {"log_std_max", cfg.learner.log_std_max},
                  {"learning_starts", cfg.learner.learning_starts}};
  j["run"] = {{"eval_every", cfg.run.eval_every},
              {"eval_episodes", cfg.run.eval_episodes},
              {"prior_warm_episodes", cfg.run.prior_warm_episodes},
              {"approach_retries", cfg.run.approach_retries},
              {"max_prologue_steps", cfg.run.max_prologue_steps},
              {"max_consecutive_skips", cfg.run.max_consecutive_skips},
              {"online_capacity", cfg.run.online_capacity},
              {"prior_capacity", cfg.run.prior_capacity},
              {"offline_prior_episodes", cfg.run.offline_prior_episodes},
              {"sweepable_radius", cfg.run.sweepable_radius},
              {"prologue_to_prior", cfg.run.prologue_to_prior}};
  j["task_overrides"] = {{"horizon", cfg.task_overrides.horizon},
                         {"goals_per_switch", cfg.task_overrides.goals_per_switch},
                         {"early_break_epsilon", cfg.task_overrides.early_break_epsilon},
                         {"object_jitter", cfg.task_overrides.object_jitter}};
  return j.dump(2) + "\n";
}

std::uint64_t config_hash(const RunConfig& cfg) {
  const std::string s = serialize_config(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

TaskSpec resolved_task_spec(const RunConfig& cfg) {
  TaskSpec spec = default_task_spec(cfg.task);
  spec.horizon = cfg.task_overrides.horizon;
  spec.goals_per_switch = cfg.task_overrides.goals_per_switch;
  spec.early_break_epsilon = cfg.task_overrides.early_break_epsilon;
  spec.object_jitter = cfg.task_overrides.object_jitter;
  return spec;
}

Runner make_runner(const RunConfig& cfg) {
  RunnerOptions run = cfg.run;
  run.method = cfg.method;
  run.budget = cfg.budget;
  return Runner(resolved_task_spec(cfg), cfg.learner, cfg.noise, cfg.planner, run, cfg.seed);
}

}  // namespace playpen
