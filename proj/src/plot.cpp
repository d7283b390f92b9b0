#include "playpen/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace playpen {

namespace {

const char kEpisodeHeader[] =
    "episode,env_steps,task,method,seed,goal_idx,success,mean_reward,ep_len,grasp_retries";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<EpisodeRow> load_episode_rows(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ContractError("cannot read metrics file: " + path);
  std::string line;
  if (!std::getline(f, line)) throw ContractError("metrics file is empty: " + path);
  if (line == kEpisodeHeader + std::string("\r")) line.pop_back();
  if (line != kEpisodeHeader) {
    throw ContractError("metrics file has an unexpected header: " + path);
  }
  std::vector<EpisodeRow> rows;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 10) {
      throw ContractError("metrics row with wrong column count in " + path);
    }
    EpisodeRow r;
    try {
      r.episode = std::stol(cells[0]);
      r.env_steps = std::stol(cells[1]);
      r.task = cells[2];
      r.method = cells[3];
      r.seed = std::stoull(cells[4]);
      r.success = std::stoi(cells[6]) != 0;
      r.mean_reward = std::stod(cells[7]);
    } catch (const std::exception&) {
      throw ContractError("unparsable metrics row in " + path);
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw ContractError("metrics file has no data rows: " + path);
  return rows;
}

std::vector<double> sliding_window_mean(const std::vector<double>& values, int window) {
  if (values.empty()) return {};
  const int n = static_cast<int>(values.size());
  const int w = std::clamp(window, 1, n);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n - w + 1));
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += values[static_cast<size_t>(i)];
    if (i >= w) sum -= values[static_cast<size_t>(i - w)];
    if (i >= w - 1) out.push_back(sum / w);
  }
  return out;
}

namespace {

std::vector<PlotSeries> build_series(const std::vector<std::vector<EpisodeRow>>& runs, int window,
                                     bool use_success) {
  if (runs.empty()) throw ContractError("no metrics to plot");
  // Group runs by method, preserving first-seen order for stable colors.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const std::vector<EpisodeRow>*>> by_method;
  for (const auto& run : runs) {
    if (run.empty()) throw ContractError("empty metrics run");
    const std::string& m = run.front().method;
    if (!by_method.count(m)) order.push_back(m);
    by_method[m].push_back(&run);
  }

  std::vector<PlotSeries> out;
  for (const std::string& m : order) {
    const auto& group = by_method[m];
    size_t shortest = group.front()->size();
    for (const auto* run : group) shortest = std::min(shortest, run->size());

    // Per-run smoothed curves, then a pointwise mean across runs.
    std::vector<std::vector<double>> ys, xs;
    for (const auto* run : group) {
      std::vector<double> vals, steps;
      for (size_t i = 0; i < shortest; ++i) {
        const EpisodeRow& r = (*run)[i];
        vals.push_back(use_success ? (r.success ? 1.0 : 0.0) : r.mean_reward);
        steps.push_back(static_cast<double>(r.env_steps));
      }
      ys.push_back(sliding_window_mean(vals, window));
      const int w = std::clamp(window, 1, static_cast<int>(shortest));
      xs.emplace_back(steps.begin() + (w - 1), steps.end());
    }

    PlotSeries s;
    s.label = m;
    for (size_t i = 0; i < ys.front().size(); ++i) {
      double sx = 0.0, sy = 0.0;
      for (size_t r = 0; r < ys.size(); ++r) {
        sx += xs[r][i];
        sy += ys[r][i];
      }
      s.x.push_back(sx / static_cast<double>(ys.size()));
      s.y.push_back(sy / static_cast<double>(ys.size()));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

}  // namespace

std::vector<PlotSeries> success_rate_series(const std::vector<std::vector<EpisodeRow>>& runs,
                                            int window) {
  return build_series(runs, window, true);
}

std::vector<PlotSeries> mean_reward_series(const std::vector<std::vector<EpisodeRow>>& runs,
                                           int window) {
  return build_series(runs, window, false);
}

std::string render_line_svg(const std::vector<PlotSeries>& series, const std::string& title,
                            const std::string& x_label, const std::string& y_label) {
  if (series.empty()) throw ContractError("nothing to plot");
  const double width = 640, height = 420;
  const double ml = 64, mr = 16, mt = 36, mb = 44;  // margins
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const PlotSeries& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"15\">" << xml_escape(title) << "</text>\n";

  // axes
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
      << mt + ph << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << xml_escape(x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
      << mt + ph / 2 << ")\">" << xml_escape(y_label) << "</text>\n";

  // min/max tick labels
  svg << "<text x=\"" << ml << "\" y=\"" << mt + ph + 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(xmin)
      << "</text>\n";
  svg << "<text x=\"" << ml + pw << "\" y=\"" << mt + ph + 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(xmax)
      << "</text>\n";
  svg << "<text x=\"" << ml - 6 << "\" y=\"" << mt + ph + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(ymin)
      << "</text>\n";
  svg << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(ymax)
      << "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (s.x.size() >= 2) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (size_t i = 0; i < s.x.size(); ++i) {
        if (i) svg << ' ';
        svg << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
      }
      svg << "\"/>\n";
    }
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (s.x.size() < 2 || i + 1 == s.x.size()) {
        svg << "<circle cx=\"" << fmt(px(s.x[i])) << "\" cy=\"" << fmt(py(s.y[i]))
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    // legend entry
    const double ly = mt + 14 + 16 * static_cast<double>(si);
    svg << "<rect x=\"" << ml + pw - 130 << "\" y=\"" << ly - 9 << "\" width=\"12\" height=\"12\""
        << " fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << ml + pw - 112 << "\" y=\"" << ly + 1
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(s.label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void plot_curves(const std::vector<std::string>& csv_paths, const std::string& out_dir,
                 int window) {
  if (csv_paths.empty()) throw ContractError("plot needs at least one metrics file");
  std::vector<std::vector<EpisodeRow>> runs;
  for (const std::string& p : csv_paths) runs.push_back(load_episode_rows(p));

  const auto write = [&](const std::string& name, const std::string& content) {
    const std::string path = out_dir.empty() ? name : out_dir + "/" + name;
    std::ofstream f(path);
    if (!f) throw ContractError("cannot write plot file: " + path);
    f << content;
  };
  write("success_rate.svg",
        render_line_svg(success_rate_series(runs, window), "Success rate vs environment steps",
                        "environment steps", "success rate (window mean)"));
  write("mean_reward.svg",
        render_line_svg(mean_reward_series(runs, window), "Mean reward vs environment steps",
                        "environment steps", "mean episode reward (window mean)"));
}

}  // namespace playpen
