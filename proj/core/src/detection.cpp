#include "loom/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace loom {

double membrane_to_output(double u, int neuron_count) {
  if (neuron_count <= 0) throw std::invalid_argument("membrane_to_output: neuron count must be positive");
  return 1.0 / (1.0 + std::exp(-std::abs(u) / static_cast<double>(neuron_count)));
}

std::int64_t output_to_spikes(double out, double spike_scale, double spike_threshold) {
  const double rate = std::floor(std::exp(spike_scale * (out - spike_threshold)));
  constexpr double kMax = static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2);
  return static_cast<std::int64_t>(std::min(rate, kMax));
}

SpikeState::SpikeState(int window, double dt, double threshold)
    : window_(window), dt_(dt), threshold_(threshold) {
  if (window < 1 || !(dt > 0.0)) throw std::invalid_argument("SpikeState: window >= 1 and dt > 0 required");
}

bool SpikeState::collision_warning(std::int64_t spike) {
  if (spike < 0) throw std::invalid_argument("spike counts are non-negative");
  std::int64_t total = spike;
  for (std::int64_t s : history_) total += s;
  last_frequency_ = static_cast<double>(total) / (window_ * dt_);
  history_.push_back(spike);
  if (static_cast<int>(history_.size()) > window_) history_.pop_front();
  return last_frequency_ >= threshold_;
}

bool scan_order_less(const Pixel& a, const Pixel& b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

namespace {

// Pixel -> index lookup; dense over the bounding box when it is small enough.
class PixelIndex {
 public:
  explicit PixelIndex(const std::vector<Pixel>& pts) {
    if (pts.empty()) return;
    min_x_ = max_x_ = pts[0].x;
    min_y_ = max_y_ = pts[0].y;
    for (const Pixel& p : pts) {
      min_x_ = std::min(min_x_, p.x);
      max_x_ = std::max(max_x_, p.x);
      min_y_ = std::min(min_y_, p.y);
      max_y_ = std::max(max_y_, p.y);
    }
    w_ = static_cast<std::int64_t>(max_x_) - min_x_ + 1;
    const std::int64_t h = static_cast<std::int64_t>(max_y_) - min_y_ + 1;
    dense_ = w_ * h <= (std::int64_t{1} << 24);
    if (dense_) {
      grid_.assign(static_cast<std::size_t>(w_ * h), -1);
      for (std::size_t i = 0; i < pts.size(); ++i) grid_[offset(pts[i].x, pts[i].y)] = static_cast<int>(i);
    } else {
      for (std::size_t i = 0; i < pts.size(); ++i) sparse_[key(pts[i].x, pts[i].y)] = static_cast<int>(i);
    }
  }

  int find(int x, int y) const {
    if (x < min_x_ || x > max_x_ || y < min_y_ || y > max_y_) return -1;
    if (dense_) return grid_[offset(x, y)];
    const auto it = sparse_.find(key(x, y));
    return it == sparse_.end() ? -1 : it->second;
  }

 private:
  std::size_t offset(int x, int y) const {
    return static_cast<std::size_t>((static_cast<std::int64_t>(y) - min_y_) * w_ + (x - min_x_));
  }
  static std::int64_t key(int x, int y) {
    return (static_cast<std::int64_t>(y) << 32) ^ static_cast<std::uint32_t>(x);
  }

  int min_x_ = 0, max_x_ = -1, min_y_ = 0, max_y_ = -1;
  std::int64_t w_ = 0;
  bool dense_ = true;
  std::vector<int> grid_;
  std::unordered_map<std::int64_t, int> sparse_;
};

}  // namespace

std::vector<Cluster> cluster_targets(std::span<const Pixel> pixels, double eps, int min_pts) {
  if (!(eps > 0.0) || min_pts < 1) throw std::invalid_argument("cluster_targets: eps > 0 and min_pts >= 1 required");

  std::vector<Pixel> pts(pixels.begin(), pixels.end());
  std::sort(pts.begin(), pts.end(), scan_order_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return {};

  // Integer offsets inside the eps disk, in row-major order.
  const int r = static_cast<int>(std::floor(eps));
  const double eps2 = eps * eps;
  std::vector<Pixel> offsets;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (static_cast<double>(dx * dx + dy * dy) <= eps2) offsets.push_back({dx, dy});
    }
  }

  const PixelIndex index(pts);
  auto neighbors = [&](std::size_t i, std::vector<int>& out) {
    out.clear();
    for (const Pixel& o : offsets) {
      const int j = index.find(pts[i].x + o.x, pts[i].y + o.y);
      if (j >= 0) out.push_back(j);
    }
  };

  constexpr int kUnvisited = -2;
  constexpr int kNoise = -1;
  std::vector<int> label(pts.size(), kUnvisited);
  std::vector<int> nbrs;
  std::vector<int> inner;
  std::vector<int> frontier;
  int cluster_count = 0;

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (label[i] != kUnvisited) continue;
    neighbors(i, nbrs);
    if (static_cast<int>(nbrs.size()) < min_pts) {
      label[i] = kNoise;
      continue;
    }
    const int c = cluster_count++;
    label[i] = c;
    frontier.assign(nbrs.begin(), nbrs.end());
    for (std::size_t f = 0; f < frontier.size(); ++f) {
      const int q = frontier[f];
      if (label[q] == kNoise) label[q] = c;  // border point
      if (label[q] != kUnvisited) continue;
      label[q] = c;
      neighbors(static_cast<std::size_t>(q), inner);
      if (static_cast<int>(inner.size()) >= min_pts) frontier.insert(frontier.end(), inner.begin(), inner.end());
    }
  }

  std::vector<Cluster> clusters(static_cast<std::size_t>(cluster_count));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (label[i] >= 0) clusters[static_cast<std::size_t>(label[i])].members.push_back(pts[i]);
  }
  return clusters;
}

std::vector<Pixel> mask_pixels(const Field& mask) {
  std::vector<Pixel> out;
  for (int y = 0; y < mask.height(); ++y) {
    const double* row = mask.row(y);
    for (int x = 0; x < mask.width(); ++x) {
      if (row[x] != 0.0) out.push_back({x, y});
    }
  }
  return out;
}

std::vector<Pixel> mask_pixels(const Field& mask_a, const Field& mask_b) {
  return mask_pixels(multiply(mask_a, mask_b));
}

TargetEstimate population_code(const Cluster& cluster, const Field& v, const Field& phi_hat) {
  if (cluster.members.empty()) throw std::invalid_argument("population_code: empty cluster");
  require_same_shape(v, phi_hat, "population_code");

  TargetEstimate t;
  t.member_count = static_cast<int>(cluster.members.size());
  t.members = cluster.members;
  t.min_x = t.max_x = cluster.members.front().x;
  t.min_y = t.max_y = cluster.members.front().y;

  double sx = 0.0, sy = 0.0, vx = 0.0, vy = 0.0, vsum = 0.0;
  for (const Pixel& p : cluster.members) {
    const double e = v(p.x, p.y);
    const double a = phi_hat(p.x, p.y);
    sx += p.x;
    sy += p.y;
    vx += e * std::cos(a);
    vy += e * std::sin(a);
    vsum += e;
    t.min_x = std::min(t.min_x, p.x);
    t.max_x = std::max(t.max_x, p.x);
    t.min_y = std::min(t.min_y, p.y);
    t.max_y = std::max(t.max_y, p.y);
  }
  const double n = static_cast<double>(t.member_count);
  t.x = sx / n;
  t.y = sy / n;
  const double mean_x = vx / n;
  const double mean_y = vy / n;
  t.phi = std::atan2(mean_y, mean_x);
  t.energy = std::hypot(mean_x, mean_y);
  t.mean_member_energy = vsum / n;
  return t;
}

}  // namespace loom
