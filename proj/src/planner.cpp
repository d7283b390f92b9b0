#include "playpen/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace playpen {

namespace {

bool point_free(const DistanceField& field, const Vec2& p, double radius) {
  return field.clearance(p) >= radius;
}

bool edge_free(const DistanceField& field, const Vec2& a, const Vec2& b, double radius,
               double check_step) {
  const double len = distance(a, b);
  const int n = std::max(1, static_cast<int>(std::ceil(len / check_step)));
  for (int i = 0; i <= n; ++i) {
    const Vec2 p = a + (b - a) * (static_cast<double>(i) / n);
    if (!point_free(field, p, radius)) return false;
  }
  return true;
}

}  // namespace

std::vector<Pose2> plan_rrt_star(const OccupancyGrid& map, const DistanceField& field, Pose2 start,
                                 Pose2 goal, double clearance_radius, const PlannerParams& params,
                                 Rng& rng) {
  const double check_step = map.resolution() * 0.5;
  if (!point_free(field, start.position(), clearance_radius)) throw PlanError("start is blocked");
  if (!point_free(field, goal.position(), clearance_radius)) throw PlanError("goal is blocked");

  const Vec2 gp = goal.position();
  if (distance(start.position(), gp) < 1e-9) return {start};

  struct Node {
    Vec2 p;
    int parent;
    double cost;
  };
  std::vector<Node> nodes;
  nodes.reserve(static_cast<size_t>(params.max_iters) + 1);
  nodes.push_back({start.position(), -1, 0.0});

  const Rect b = map.bounds();
  int best_goal_node = -1;
  double best_goal_cost = std::numeric_limits<double>::infinity();
  int iters_since_goal = 0;

  for (int it = 0; it < params.max_iters; ++it) {
    if (best_goal_node >= 0 && params.post_goal_iters > 0 &&
        ++iters_since_goal > params.post_goal_iters) {
      break;
    }

    Vec2 sample;
    if (rng.uniform() < params.goal_bias) {
      sample = gp;
    } else {
      sample = {rng.uniform(b.xmin, b.xmax), rng.uniform(b.ymin, b.ymax)};
    }

    // Nearest node, then steer at most step_size toward the sample.
    int nearest = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < nodes.size(); ++i) {
      const double d2 = (nodes[i].p - sample).squared_norm();
      if (d2 < best_d2) {
        best_d2 = d2;
        nearest = static_cast<int>(i);
      }
    }
    const double d = std::sqrt(best_d2);
    if (d < 1e-9) continue;
    Vec2 new_p = sample;
    if (d > params.step_size) new_p = nodes[nearest].p + (sample - nodes[nearest].p) * (params.step_size / d);
    if (!point_free(field, new_p, clearance_radius)) continue;

    // Choose the cheapest collision-free parent within the rewire radius.
    const double r2 = params.rewire_radius * params.rewire_radius;
    int parent = nearest;
    double parent_cost = nodes[nearest].cost + distance(nodes[nearest].p, new_p);
    std::vector<int> near;
    for (size_t i = 0; i < nodes.size(); ++i) {
      if ((nodes[i].p - new_p).squared_norm() <= r2) near.push_back(static_cast<int>(i));
    }
    for (int i : near) {
      const double c = nodes[i].cost + distance(nodes[i].p, new_p);
      if (c < parent_cost && edge_free(field, nodes[i].p, new_p, clearance_radius, check_step)) {
        parent = i;
        parent_cost = c;
      }
    }
    if (!edge_free(field, nodes[parent].p, new_p, clearance_radius, check_step)) continue;

    const int new_idx = static_cast<int>(nodes.size());
    nodes.push_back({new_p, parent, parent_cost});

    // Rewire neighbors through the new node when that is cheaper.
    for (int i : near) {
      const double c = parent_cost + distance(new_p, nodes[i].p);
      if (c + 1e-12 < nodes[i].cost &&
          edge_free(field, new_p, nodes[i].p, clearance_radius, check_step)) {
        nodes[i].parent = new_idx;
        nodes[i].cost = c;
      }
    }

    if (distance(new_p, gp) <= params.goal_tolerance &&
        edge_free(field, new_p, gp, clearance_radius, check_step)) {
      const double c = parent_cost + distance(new_p, gp);
      if (c < best_goal_cost) {
        best_goal_cost = c;
        best_goal_node = new_idx;
      }
    }
  }

  if (best_goal_node < 0) throw PlanError("no path found within the iteration budget");

  // Rewiring may have lowered costs upstream of the recorded entry node, so
  // rescan goal-adjacent nodes with up-to-date costs before extracting.
  for (size_t i = 0; i < nodes.size(); ++i) {
    const double dg = distance(nodes[i].p, gp);
    if (dg > params.goal_tolerance) continue;
    const double c = nodes[i].cost + dg;
    if (c < best_goal_cost && edge_free(field, nodes[i].p, gp, clearance_radius, check_step)) {
      best_goal_cost = c;
      best_goal_node = static_cast<int>(i);
    }
  }

  std::vector<Vec2> pts;
  for (int i = best_goal_node; i >= 0; i = nodes[i].parent) pts.push_back(nodes[i].p);
  std::reverse(pts.begin(), pts.end());
  pts.push_back(gp);

  std::vector<Pose2> path;
  path.reserve(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    double heading = goal.theta;
    if (i + 1 < pts.size()) {
      const Vec2 dir = pts[i + 1] - pts[i];
      if (dir.norm() > 1e-12) heading = std::atan2(dir.y, dir.x);
    }
    path.push_back({pts[i].x, pts[i].y, wrap_angle(heading)});
  }
  return path;
}

double path_length(const std::vector<Pose2>& path) {
  double len = 0.0;
  for (size_t i = 1; i < path.size(); ++i) {
    len += distance(path[i - 1].position(), path[i].position());
  }
  return len;
}

bool path_collision_free(const DistanceField& field, const std::vector<Pose2>& path,
                         double clearance_radius, double resolution) {
  if (path.empty()) return false;
  if (!point_free(field, path[0].position(), clearance_radius)) return false;
  for (size_t i = 1; i < path.size(); ++i) {
    if (!edge_free(field, path[i - 1].position(), path[i].position(), clearance_radius,
                   resolution * 0.5)) {
      return false;
    }
  }
  return true;
}

double grid_shortest_path(const OccupancyGrid& map, const DistanceField& field, const Vec2& start,
                          const Vec2& goal, double clearance_radius) {
  const int w = map.width(), h = map.height();
  const double res = map.resolution();
  auto free_cell = [&](int ix, int iy) {
    return map.in_bounds(ix, iy) && field.clearance_cell(ix, iy) >= clearance_radius;
  };
  const int sx = map.cell_x(start.x), sy = map.cell_y(start.y);
  const int gx = map.cell_x(goal.x), gy = map.cell_y(goal.y);
  const double inf = std::numeric_limits<double>::infinity();
  if (!free_cell(sx, sy) || !free_cell(gx, gy)) return inf;

  std::vector<double> dist(static_cast<size_t>(w) * h, inf);
  using QE = std::pair<double, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<>> q;
  dist[sy * w + sx] = 0.0;
  q.push({0.0, sy * w + sx});
  const int dxs[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  const int dys[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  const double diag = res * std::sqrt(2.0);
  while (!q.empty()) {
    auto [d, idx] = q.top();
    q.pop();
    if (d > dist[idx]) continue;
    const int ix = idx % w, iy = idx / w;
    if (ix == gx && iy == gy) return d;
    for (int k = 0; k < 8; ++k) {
      const int nx = ix + dxs[k], ny = iy + dys[k];
      if (!free_cell(nx, ny)) continue;
      // No corner cutting on diagonal moves.
      if (k >= 4 && (!free_cell(ix + dxs[k], iy) || !free_cell(ix, iy + dys[k]))) continue;
      const double nd = d + (k < 4 ? res : diag);
      const int nidx = ny * w + nx;
      if (nd < dist[nidx]) {
        dist[nidx] = nd;
        q.push({nd, nidx});
      }
    }
  }
  return inf;
}

}  // namespace playpen
