#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "playpen/config.hpp"

using namespace playpen;

TEST_CASE("empty config text yields all defaults") {
  const RunConfig cfg = parse_config_text("", "");
  CHECK(cfg.task == TaskKind::ChairCorner);
  CHECK(cfg.method == Method::Ours);
  CHECK(cfg.seed == 0);
  CHECK(cfg.budget == 50000);
  CHECK(cfg.out_dir == "runs");
  CHECK(cfg.learner.hidden == 256);
  CHECK(cfg.learner.ensemble_size == 10);
  CHECK(cfg.noise.dropout_prob == doctest::Approx(0.05));
  CHECK(cfg.planner.max_iters == 5000);
  CHECK(cfg.run.eval_every == 2000);
  CHECK(cfg.task_overrides.horizon == 16);  // chair default
  CHECK(cfg.run.method == cfg.method);
  CHECK(cfg.run.budget == cfg.budget);
}

TEST_CASE("unknown keys are rejected by name") {
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"sead": 3})", ""),
                       doctest::Contains("sead"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"learner": {"hidden_units": 64}})", ""),
                       doctest::Contains("learner.hidden_units"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("", R"({"noise": {"sigma": 0.1}})"),
                       doctest::Contains("noise.sigma"), ConfigError);
}

TEST_CASE("type mismatches are rejected by name") {
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"seed": "zero"})", ""),
                       doctest::Contains("seed"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"learner": {"hidden": 2.5}})", ""),
                       doctest::Contains("learner.hidden"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"noise": 3})", ""), doctest::Contains("noise"),
                       ConfigError);
  CHECK_THROWS_AS(parse_config_text("{not json", ""), ConfigError);
}

TEST_CASE("flags override file values") {
  const char* file = R"({"task": "sweep", "budget": 1000, "learner": {"hidden": 64, "utd": 2}})";
  const char* flags = R"({"budget": 2000, "learner": {"hidden": 32}})";
  const RunConfig cfg = parse_config_text(file, flags);
  CHECK(cfg.task == TaskKind::Sweeping);       // file value kept
  CHECK(cfg.budget == 2000);                   // flag wins
  CHECK(cfg.learner.hidden == 32);             // flag wins inside a section
  CHECK(cfg.learner.utd == 2);                 // sibling keys survive the merge
}

TEST_CASE("serialization round trips exactly") {
  const char* file = R"({
    "task": "dustpan", "method": "offline", "seed": 17, "budget": 12345,
    "noise": {"position_sigma": 0.034},
    "learner": {"actor_lr": 0.00017, "critic_layer_norm": false},
    "task_overrides": {"horizon": 6}
  })";
  const RunConfig a = parse_config_text(file, "");
  const std::string sa = serialize_config(a);
  const RunConfig b = parse_config_text(sa, "");
  CHECK(serialize_config(b) == sa);
  CHECK(b.task == TaskKind::DustpanStandup);
  CHECK(b.method == Method::Offline);
  CHECK(b.seed == 17);
  CHECK(b.noise.position_sigma == a.noise.position_sigma);
  CHECK(b.learner.actor_lr == a.learner.actor_lr);
  CHECK(b.learner.critic_layer_norm == false);
  CHECK(b.task_overrides.horizon == 6);
  CHECK(config_hash(a) == config_hash(b));
}

TEST_CASE("hash distinguishes configs") {
  const RunConfig a = parse_config_text("", "");
  const RunConfig b = parse_config_text(R"({"seed": 1})", "");
  CHECK(config_hash(a) != config_hash(b));
  const RunConfig c = parse_config_text(R"({"noise": {"dropout_prob": 0.1}})", "");
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("task level defaults follow the chosen task") {
  CHECK(parse_config_text(R"({"task": "dustpan"})", "").task_overrides.horizon == 8);
  CHECK(parse_config_text(R"({"task": "sweep"})", "").task_overrides.early_break_epsilon == 0.0);
  CHECK(parse_config_text(R"({"task": "chair-middle"})", "").task_overrides.early_break_epsilon ==
        doctest::Approx(0.2));
  const RunConfig cfg =
      parse_config_text(R"({"task": "dustpan", "task_overrides": {"horizon": 5}})", "");
  CHECK(cfg.task_overrides.horizon == 5);
  // Flag changing the task re-resolves the defaults.
  const RunConfig flipped = parse_config_text("", R"({"task": "dustpan"})");
  CHECK(flipped.task_overrides.horizon == 8);
}

TEST_CASE("range violations are config errors") {
  CHECK_THROWS_AS(parse_config_text(R"({"budget": 0})", ""), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"task": "tango"})", ""), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"method": "magic"})", ""), ConfigError);
  CHECK_THROWS_AS(
      parse_config_text(R"({"learner": {"ensemble_size": 2, "min_q_subset": 3}})", ""),
      ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"learner": {"prior_fraction": 1.5}})", ""), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"learner": {"gamma": 1.0}})", ""), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"task_overrides": {"horizon": 0}})", ""), ConfigError);
}

TEST_CASE("resolved task spec applies overrides") {
  const char* file =
      R"({"task": "chair-middle", "task_overrides": {"horizon": 10, "goals_per_switch": 3,
          "early_break_epsilon": 0.35, "object_jitter": 0.02}})";
  const TaskSpec spec = resolved_task_spec(parse_config_text(file, ""));
  CHECK(spec.task == TaskKind::ChairMiddle);
  CHECK(spec.horizon == 10);
  CHECK(spec.goals_per_switch == 3);
  CHECK(spec.early_break_epsilon == doctest::Approx(0.35));
  CHECK(spec.object_jitter == doctest::Approx(0.02));
  CHECK(spec.goal_cycle.size() == 2);  // untouched geometry
}

TEST_CASE("missing config file is a config error") {
  CHECK_THROWS_AS(parse_config_file("/nonexistent/nope.json", ""), ConfigError);
}

TEST_CASE("make_runner wires the config through") {
  const char* file = R"({"task": "dustpan", "method": "prior-only", "budget": 64,
                         "learner": {"hidden": 8, "ensemble_size": 2, "batch_size": 8},
                         "run": {"eval_every": 0}})";
  Runner r = make_runner(parse_config_text(file, ""));
  CHECK(r.spec().task == TaskKind::DustpanStandup);
  CHECK(r.learner().config().hidden == 8);
  CHECK(r.learner().config().obs_dim == 17);  // derived from the task
  CHECK(r.learner().config().act_dim == 3);
  const EpisodeRecord rec = r.run_training_episode();
  CHECK(!rec.skipped);
}
