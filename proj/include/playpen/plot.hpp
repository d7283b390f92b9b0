#pragma once

#include <string>
#include <vector>

#include "playpen/autonomy.hpp"

namespace playpen {

/// One row of an episode metrics file, as far as plotting needs it.
struct EpisodeRow {
  long episode = 0;
  long env_steps = 0;
  std::string task;
  std::string method;
  std::uint64_t seed = 0;
  bool success = false;
  double mean_reward = 0.0;
};

/// Parses an episode metrics CSV; rejects a missing file, a wrong header, or
/// a file with no data rows.
std::vector<EpisodeRow> load_episode_rows(const std::string& path);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Sliding-window mean of `values` (window clamped to the series length, so a
/// short series yields a single aggregate point at its end).
std::vector<double> sliding_window_mean(const std::vector<double>& values, int window);

/// One series per method: runs of the same method are averaged pointwise by
/// episode index (truncated to the shortest run).
std::vector<PlotSeries> success_rate_series(const std::vector<std::vector<EpisodeRow>>& runs,
                                            int window);
std::vector<PlotSeries> mean_reward_series(const std::vector<std::vector<EpisodeRow>>& runs,
                                           int window);

/// Standalone SVG line chart; deterministic output for identical input.
std::string render_line_svg(const std::vector<PlotSeries>& series, const std::string& title,
                            const std::string& x_label, const std::string& y_label);

/// Reads the CSVs and writes success_rate.svg and mean_reward.svg into
/// `out_dir`.
void plot_curves(const std::vector<std::string>& csv_paths, const std::string& out_dir,
                 int window = 20);

}  // namespace playpen
