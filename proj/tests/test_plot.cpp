#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "playpen/plot.hpp"

using namespace playpen;

namespace {

// Minimal well-formedness check: a single root element, every open tag
// closed in order, no stray '<'.
bool well_formed_xml(const std::string& text) {
  std::vector<std::string> stack;
  size_t i = 0;
  bool seen_root = false;
  while (i < text.size()) {
    if (text[i] != '<') {
      ++i;
      continue;
    }
    const size_t end = text.find('>', i);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(i + 1, end - i - 1);
    i = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?') continue;  // declaration
    if (tag[0] == '/') {
      if (stack.empty()) return false;
      if (stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    if (tag.back() == '/') continue;  // self-closing
    const size_t sp = tag.find_first_of(" \t\n");
    const std::string name = sp == std::string::npos ? tag : tag.substr(0, sp);
    if (stack.empty() && seen_root) return false;  // second root
    if (stack.empty()) seen_root = true;
    stack.push_back(name);
  }
  return stack.empty() && seen_root;
}

std::vector<EpisodeRow> make_run(const std::string& method, int n, long step0, bool alternate) {
  std::vector<EpisodeRow> rows;
  for (int i = 0; i < n; ++i) {
    EpisodeRow r;
    r.episode = i;
    r.env_steps = step0 + 16L * (i + 1);
    r.task = "chair-middle";
    r.method = method;
    r.success = alternate ? (i % 2 == 0) : true;
    r.mean_reward = 0.1 * i;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_CASE("sliding window means") {
  const std::vector<double> v{1, 2, 3, 4, 5};
  SUBCASE("window 1 is the identity") {
    CHECK(sliding_window_mean(v, 1) == v);
  }
  SUBCASE("window 3") {
    const std::vector<double> w = sliding_window_mean(v, 3);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == doctest::Approx(2.0));
    CHECK(w[1] == doctest::Approx(3.0));
    CHECK(w[2] == doctest::Approx(4.0));
  }
  SUBCASE("window beyond the length collapses to one aggregate point") {
    const std::vector<double> w = sliding_window_mean(v, 20);
    REQUIRE(w.size() == 1);
    CHECK(w[0] == doctest::Approx(3.0));
  }
  SUBCASE("empty input") {
    CHECK(sliding_window_mean({}, 5).empty());
  }
}

TEST_CASE("episode csv loads back") {
  std::vector<EpisodeRecord> recs(3);
  for (int i = 0; i < 3; ++i) {
    recs[static_cast<size_t>(i)].episode = i;
    recs[static_cast<size_t>(i)].env_steps = 16 * (i + 1);
    recs[static_cast<size_t>(i)].success = i == 2;
    recs[static_cast<size_t>(i)].mean_reward = 0.5 * i;
    recs[static_cast<size_t>(i)].ep_len = 16;
  }
  const std::string path = "plot_roundtrip.csv";
  write_episode_csv(path, recs, TaskKind::Sweeping, Method::Ours, 3);
  const std::vector<EpisodeRow> rows = load_episode_rows(path);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].env_steps == 32);
  CHECK(rows[1].method == "ours");
  CHECK(rows[1].task == "sweep");
  CHECK(rows[2].success);
  CHECK(rows[1].mean_reward == doctest::Approx(0.5));
  std::remove(path.c_str());
}

TEST_CASE("loader rejects bad files") {
  CHECK_THROWS_AS(load_episode_rows("missing_file.csv"), ContractError);

  const std::string badheader = "plot_badheader.csv";
  {
    std::ofstream f(badheader);
    f << "episode,steps\n1,2\n";
  }
  CHECK_THROWS_AS(load_episode_rows(badheader), ContractError);
  std::remove(badheader.c_str());

  const std::string empty = "plot_empty.csv";
  write_episode_csv(empty, {}, TaskKind::Sweeping, Method::Ours, 0);
  CHECK_THROWS_AS(load_episode_rows(empty), ContractError);
  std::remove(empty.c_str());
}

TEST_CASE("series build one entry per method with run averaging") {
  std::vector<std::vector<EpisodeRow>> runs;
  runs.push_back(make_run("ours", 30, 0, false));
  runs.push_back(make_run("ours", 30, 0, true));
  runs.push_back(make_run("rl-only", 25, 0, true));
  const std::vector<PlotSeries> s = success_rate_series(runs, 10);
  REQUIRE(s.size() == 2);
  CHECK(s[0].label == "ours");
  CHECK(s[1].label == "rl-only");
  REQUIRE(s[0].x.size() == 21);  // 30 - 10 + 1
  // First run all successes, second alternates: the average window sits
  // between the two runs' values.
  CHECK(s[0].y.front() == doctest::Approx((1.0 + 0.5) / 2.0));
  REQUIRE(s[1].x.size() == 16);

  const std::vector<PlotSeries> r = mean_reward_series(runs, 10);
  CHECK(r[0].y.front() == doctest::Approx(0.1 * 4.5));  // mean of 0.1*(0..9)
}

TEST_CASE("svg output is well formed and deterministic") {
  std::vector<std::vector<EpisodeRow>> runs;
  runs.push_back(make_run("ours", 40, 0, true));
  runs.push_back(make_run("prior-only", 40, 0, false));
  const std::vector<PlotSeries> s = success_rate_series(runs, 20);
  const std::string svg = render_line_svg(s, "Success rate", "environment steps", "rate");
  CHECK(well_formed_xml(svg));
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("ours") != std::string::npos);
  CHECK(svg.find("prior-only") != std::string::npos);
  const std::string svg2 = render_line_svg(s, "Success rate", "environment steps", "rate");
  CHECK(svg == svg2);
}

TEST_CASE("single point series renders a marker not a line") {
  PlotSeries s;
  s.label = "ours";
  s.x = {100.0};
  s.y = {0.5};
  const std::string svg = render_line_svg({s}, "t", "x", "y");
  CHECK(well_formed_xml(svg));
  CHECK(svg.find("<polyline") == std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("plot_curves writes both figures") {
  std::vector<EpisodeRecord> recs(25);
  for (int i = 0; i < 25; ++i) {
    recs[static_cast<size_t>(i)].episode = i;
    recs[static_cast<size_t>(i)].env_steps = 16 * (i + 1);
    recs[static_cast<size_t>(i)].success = i % 3 == 0;
    recs[static_cast<size_t>(i)].mean_reward = 0.1 * i;
    recs[static_cast<size_t>(i)].ep_len = 16;
  }
  const std::string csv = "plot_curves_in.csv";
  write_episode_csv(csv, recs, TaskKind::ChairCorner, Method::Ours, 1);
  plot_curves({csv}, ".", 20);
  std::ifstream a("success_rate.svg"), b("mean_reward.svg");
  CHECK(a.good());
  CHECK(b.good());
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  CHECK(well_formed_xml(sa));
  std::remove(csv.c_str());
  std::remove("success_rate.svg");
  std::remove("mean_reward.svg");

  CHECK_THROWS_AS(plot_curves({}, "."), ContractError);
}
