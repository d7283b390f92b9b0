// Command-line front end: train / eval / plot / gen-prior-data / map-check.
// Exit codes: 0 success, 1 configuration error, 2 runtime abort.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "playpen/config.hpp"
#include "playpen/plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace playpen;

namespace {

// Every leaf config key is mirrored as a flag writing into a JSON patch that
// is applied on top of the config file (flags win over the file; the
// PLAYPEN_OUT_DIR environment variable sits between them for out_dir).
struct ConfigCli {
  std::string config_path;
  json patch = json::object();

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    auto top_s = [this](const char* key) {
      return [this, key](const std::string& v) { patch[key] = v; };
    };
    cmd->add_option_function<std::string>("--task", top_s("task"),
                                          "chair-corner|chair-middle|dustpan|sweep");
    cmd->add_option_function<std::string>("--method", top_s("method"),
                                          "ours|rl-only|prior-only|offline");
    cmd->add_option_function<long long>(
        "--seed", [this](long long v) { patch["seed"] = v; }, "run seed");
    cmd->add_option_function<long long>(
        "--budget", [this](long long v) { patch["budget"] = v; }, "environment step budget");
    cmd->add_option_function<std::string>("--out", top_s("out_dir"), "output directory");

    auto num = [this, cmd](const char* sec, const char* key) {
      const std::string flag = std::string("--") + sec + "." + key;
      cmd->add_option_function<double>(flag, [this, sec, key](double v) { patch[sec][key] = v; });
    };
    auto integer = [this, cmd](const char* sec, const char* key) {
      const std::string flag = std::string("--") + sec + "." + key;
      cmd->add_option_function<long long>(flag,
                                          [this, sec, key](long long v) { patch[sec][key] = v; });
    };
    auto boolean = [this, cmd](const char* sec, const char* key) {
      const std::string flag = std::string("--") + sec + "." + key;
      cmd->add_option_function<bool>(flag, [this, sec, key](bool v) { patch[sec][key] = v; });
    };

    num("noise", "position_sigma");
    num("noise", "yaw_sigma");
    num("noise", "dropout_prob");
    num("noise", "outlier_prob");
    num("noise", "outlier_margin");

    integer("planner", "max_iters");
    num("planner", "step_size");
    num("planner", "goal_bias");
    num("planner", "rewire_radius");
    num("planner", "goal_tolerance");
    integer("planner", "post_goal_iters");

    integer("learner", "hidden");
    integer("learner", "ensemble_size");
    integer("learner", "min_q_subset");
    integer("learner", "batch_size");
    integer("learner", "utd");
    num("learner", "actor_lr");
    num("learner", "critic_lr");
    num("learner", "temp_lr");
    num("learner", "gamma");
    num("learner", "polyak");
    num("learner", "init_temperature");
    num("learner", "target_entropy");
    num("learner", "prior_fraction");
    boolean("learner", "critic_layer_norm");
    num("learner", "log_std_min");
    num("learner", "log_std_max");
    integer("learner", "learning_starts");

    integer("run", "eval_every");
    integer("run", "eval_episodes");
    integer("run", "prior_warm_episodes");
    integer("run", "approach_retries");
    integer("run", "max_prologue_steps");
    integer("run", "max_consecutive_skips");
    integer("run", "online_capacity");
    integer("run", "prior_capacity");
    integer("run", "offline_prior_episodes");
    num("run", "sweepable_radius");
    boolean("run", "prologue_to_prior");

    integer("task_overrides", "horizon");
    integer("task_overrides", "goals_per_switch");
    num("task_overrides", "early_break_epsilon");
    num("task_overrides", "object_jitter");
  }

  RunConfig resolve() const {
    json flags = patch;
    if (const char* env = std::getenv("PLAYPEN_OUT_DIR")) {
      if (!flags.contains("out_dir")) flags["out_dir"] = std::string(env);
    }
    if (config_path.empty()) return parse_config_text("", flags.dump());
    return parse_config_file(config_path, flags.dump());
  }
};

std::string run_dir(const RunConfig& cfg) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s-%s-seed%llu", task_name(cfg.task), method_name(cfg.method),
                static_cast<unsigned long long>(cfg.seed));
  return cfg.out_dir + "/" + buf;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw ContractError("cannot write " + path);
  f << content;
}

int run_train(const ConfigCli& cc, const std::vector<std::uint64_t>& seeds, bool save_checkpoint) {
  for (std::uint64_t seed : seeds) {
    RunConfig cfg = cc.resolve();
    cfg.seed = seed;
    const std::string dir = run_dir(cfg);
    fs::create_directories(dir);

    const std::uint64_t hash = config_hash(cfg);
    char hash_hex[24];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx", static_cast<unsigned long long>(hash));
    write_text(dir + "/config.json", serialize_config(cfg));
    std::printf("train task=%s method=%s seed=%llu budget=%ld config_hash=%s\n",
                task_name(cfg.task), method_name(cfg.method),
                static_cast<unsigned long long>(cfg.seed), cfg.budget, hash_hex);
    std::fflush(stdout);

    Runner runner = make_runner(cfg);
    runner.train();

    write_episode_csv(dir + "/episodes.csv", runner.episodes(), cfg.task, cfg.method, cfg.seed);
    write_eval_csv(dir + "/evals.csv", runner.evals(), cfg.task, cfg.method, cfg.seed);
    json summary;
    summary["config_hash"] = hash_hex;
    summary["env_steps"] = runner.env_steps();
    summary["episodes"] = runner.episodes().size();
    summary["updates"] = runner.updates_done();
    if (!runner.evals().empty()) {
      summary["final_success_rate"] = runner.evals().back().success_rate;
      summary["final_mean_reward"] = runner.evals().back().mean_reward;
    }
    write_text(dir + "/run.json", summary.dump(2) + "\n");
    if (save_checkpoint) runner.learner().save_file(dir + "/learner.ckpt");
    const double final_rate =
        runner.evals().empty() ? 0.0 : runner.evals().back().success_rate;
    std::printf("done  episodes=%zu env_steps=%ld final_success_rate=%.3f -> %s\n",
                runner.episodes().size(), runner.env_steps(), final_rate, dir.c_str());
  }
  return 0;
}

int run_eval(const ConfigCli& cc, const std::string& checkpoint, int episodes,
             const std::string& out_csv) {
  RunConfig cfg = cc.resolve();
  Runner runner = make_runner(cfg);
  if (!checkpoint.empty()) runner.learner().load_file(checkpoint);
  double mean_reward = 0.0;
  const double rate = runner.evaluate(episodes, &mean_reward);
  std::printf("success_rate=%.4f mean_reward=%.4f episodes=%d\n", rate, mean_reward, episodes);
  if (!out_csv.empty()) {
    EvalRecord rec;
    rec.env_steps = 0;
    rec.success_rate = rate;
    rec.mean_reward = mean_reward;
    rec.episodes = episodes;
    write_eval_csv(out_csv, {rec}, cfg.task, cfg.method, cfg.seed);
  }
  return 0;
}

int run_gen_prior(const ConfigCli& cc, int episodes, const std::string& out_file) {
  RunConfig cfg = cc.resolve();
  Runner runner = make_runner(cfg);
  const int done = runner.generate_prior_data(episodes);
  if (runner.prior_buffer().size() == 0) {
    throw ContractError("no prior data generated; check the task configuration");
  }
  runner.prior_buffer().save(out_file);
  std::printf("episodes=%d transitions=%zu -> %s\n", done, runner.prior_buffer().size(),
              out_file.c_str());
  return 0;
}

int run_map_check(const std::string& path) {
  try {
    const OccupancyGrid g = OccupancyGrid::load(path);
    std::printf("ok width=%d height=%d resolution=%.3f occupied=%zu\n", g.width(), g.height(),
                g.resolution(), g.occupied_count());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "invalid map: %s\n", e.what());
    return 1;
  }
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> out;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(std::stoull(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (out.empty()) throw ConfigError("--seeds needs at least one value");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Playpen: autonomous RL with behavior priors in a 2D playpen"};
  app.require_subcommand(1);

  ConfigCli train_cc, eval_cc, gen_cc;
  std::string seeds_csv, checkpoint, eval_csv, prior_out = "prior_data.bin", map_path;
  std::vector<std::string> plot_inputs;
  std::string plot_out = ".";
  int eval_episodes = 20, prior_episodes = 100, plot_window = 20;
  bool save_checkpoint = false;

  CLI::App* train = app.add_subcommand("train", "run training and write metrics");
  train_cc.attach(train);
  train->add_option("--seeds", seeds_csv, "comma-separated seed list; one run per seed");
  train->add_flag("--save-checkpoint", save_checkpoint, "write learner.ckpt into the run dir");

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a policy (optionally a checkpoint)");
  eval_cc.attach(eval_cmd);
  eval_cmd->add_option("--checkpoint", checkpoint, "learner checkpoint to load");
  eval_cmd->add_option("--episodes", eval_episodes, "evaluation episodes")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--out-csv", eval_csv, "write the result as an eval CSV");

  CLI::App* plot = app.add_subcommand("plot", "render SVG curves from episode metrics CSVs");
  plot->add_option("csvs", plot_inputs, "episode metrics files")->required()->expected(-1);
  plot->add_option("--out", plot_out, "output directory");
  plot->add_option("--window", plot_window, "sliding window in episodes")
      ->check(CLI::PositiveNumber);

  CLI::App* gen = app.add_subcommand("gen-prior-data", "roll the behavior prior into a buffer file");
  gen_cc.attach(gen);
  gen->add_option("--episodes", prior_episodes, "prior episodes to roll")
      ->check(CLI::PositiveNumber);
  gen->add_option("--out-file", prior_out, "output buffer file");

  CLI::App* mapc = app.add_subcommand("map-check", "validate an occupancy grid file");
  mapc->add_option("map", map_path, "grid file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*train) {
      std::vector<std::uint64_t> seeds;
      if (!seeds_csv.empty()) {
        seeds = parse_seed_list(seeds_csv);
      } else {
        seeds = {train_cc.resolve().seed};
      }
      return run_train(train_cc, seeds, save_checkpoint);
    }
    if (*eval_cmd) return run_eval(eval_cc, checkpoint, eval_episodes, eval_csv);
    if (*plot) {
      fs::create_directories(plot_out);
      plot_curves(plot_inputs, plot_out, plot_window);
      std::printf("wrote %s/success_rate.svg and %s/mean_reward.svg\n", plot_out.c_str(),
                  plot_out.c_str());
      return 0;
    }
    if (*gen) return run_gen_prior(gen_cc, prior_episodes, prior_out);
    if (*mapc) return run_map_check(map_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "aborted: %s\n", e.what());
    return 2;
  }
  return 0;
}
