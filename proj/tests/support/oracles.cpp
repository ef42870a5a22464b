#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

Image correlate(const Image& img, int radius, const std::function<double(int, int)>& w) {
  Image out{img.width, img.height, std::vector<double>(img.values.size(), 0.0)};
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int j = -radius; j <= radius; ++j) {
        for (int i = -radius; i <= radius; ++i) {
          const int sx = std::clamp(x + i, 0, img.width - 1);
          const int sy = std::clamp(y + j, 0, img.height - 1);
          acc += img.at(sx, sy) * w(i, j);
        }
      }
      out.values[static_cast<std::size_t>(y) * img.width + x] = acc;
    }
  }
  return out;
}

std::vector<std::vector<Point>> dbscan(std::vector<Point> points, double eps, int min_pts) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = points.size();
  auto close = [&](std::size_t a, std::size_t b) {
    const double dx = points[a].x - points[b].x;
    const double dy = points[a].y - points[b].y;
    return dx * dx + dy * dy <= eps * eps;
  };

  std::vector<bool> core(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    int count = 0;
    for (std::size_t b = 0; b < n; ++b) count += close(a, b) ? 1 : 0;
    core[a] = count >= min_pts;
  }

  // Components of the core graph by repeated relaxation of labels.
  std::vector<std::size_t> label(n);
  for (std::size_t a = 0; a < n; ++a) label[a] = a;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (!core[a]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (core[b] && close(a, b) && label[b] < label[a]) {
          label[a] = label[b];
          changed = true;
        }
      }
    }
  }

  // Points are sorted, so a component's label is the index of its first core point
  // and ascending labels give the creation order.
  std::vector<std::size_t> roots;
  for (std::size_t a = 0; a < n; ++a) {
    if (core[a] && label[a] == a) roots.push_back(a);
  }
  std::vector<std::vector<Point>> clusters(roots.size());
  auto cluster_of = [&](std::size_t root) {
    return static_cast<std::size_t>(std::find(roots.begin(), roots.end(), root) - roots.begin());
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (core[a]) {
      clusters[cluster_of(label[a])].push_back(points[a]);
      continue;
    }
    std::size_t best = roots.size();
    for (std::size_t b = 0; b < n; ++b) {
      if (core[b] && close(a, b)) best = std::min(best, cluster_of(label[b]));
    }
    if (best < roots.size()) clusters[best].push_back(points[a]);
  }
  for (auto& c : clusters) std::sort(c.begin(), c.end());
  return clusters;
}

std::vector<double> cascade_output(const std::vector<double>& input, int depth, int n, double gain,
                                   double decay, double transmission, double tau, double dt) {
  std::vector<double> z(static_cast<std::size_t>(depth) + 1, 0.0);  // z[0] is the input
  std::vector<double> out;
  for (double in : input) {
    std::vector<double> prev = z;
    prev[0] = in;
    for (int k = 1; k <= depth; ++k) {
      z[k] = prev[k] + (dt / tau) * (-decay * prev[k] + transmission * prev[k - 1]);
    }
    out.push_back(gain * (z[n] - z[n + 1]));
  }
  return out;
}

double circular_mean(const std::vector<double>& angles, const std::vector<double>& weights) {
  double c = 0.0, s = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    c += w * std::cos(angles[i]);
    s += w * std::sin(angles[i]);
  }
  return std::atan2(s, c);
}

double angle_diff(double a, double b) {
  double d = std::remainder(a - b, 2.0 * std::numbers::pi);
  if (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
  return d;
}

}  // namespace oracle
