#include "loom/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace loom {
namespace {

constexpr double kPi = std::numbers::pi;

template <typename Fn>
Kernel tabulate(int size, Fn&& weight) {
  Kernel k(size);
  const int r = k.radius();
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) k.at(dx, dy) = weight(static_cast<double>(dx), static_cast<double>(dy));
  }
  return k;
}

inline int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

void require_finite(const Field& f) {
  if (!f.all_finite()) throw std::invalid_argument("correlate: input field contains non-finite values");
}

// 1-D pass along rows (horizontal == true) or columns.
Field correlate_1d(const Field& in, const std::vector<double>& taps, bool horizontal) {
  const int w = in.width();
  const int h = in.height();
  const int r = static_cast<int>(taps.size() / 2);
  Field out(w, h);
  if (horizontal) {
    std::vector<double> padded(static_cast<std::size_t>(w + 2 * r));
    for (int y = 0; y < h; ++y) {
      const double* src = in.row(y);
      for (int i = 0; i < w + 2 * r; ++i) padded[i] = src[clamp_index(i - r, w)];
      double* dst = out.row(y);
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int t = 0; t <= 2 * r; ++t) acc += padded[x + t] * taps[t];
        dst[x] = acc;
      }
    }
  } else {
    for (int y = 0; y < h; ++y) {
      double* dst = out.row(y);
      std::fill(dst, dst + w, 0.0);
      for (int t = 0; t <= 2 * r; ++t) {
        const double* src = in.row(clamp_index(y + t - r, h));
        const double c = taps[t];
        for (int x = 0; x < w; ++x) dst[x] += src[x] * c;
      }
    }
  }
  return out;
}

}  // namespace

Kernel::Kernel(int size) : size_(size) {
  if (size <= 0 || size % 2 == 0) {
    throw std::invalid_argument("kernel size must be odd and positive, got " + std::to_string(size));
  }
  weights_.assign(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0);
}

double Kernel::sum() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

Kernel Kernel::negated() const {
  Kernel k = *this;
  for (double& w : k.weights_) w = -w;
  if (k.separable_) {
    for (double& w : k.separable_->row) w = -w;
  }
  return k;
}

void Kernel::set_separable(Separable factors) {
  if (factors.row.size() != static_cast<std::size_t>(size_) ||
      factors.column.size() != static_cast<std::size_t>(size_)) {
    throw std::invalid_argument("separable factors must match kernel size");
  }
  separable_ = std::move(factors);
}

Kernel make_dog_unchecked(double gain, double sigma1, double sigma2, int size) {
  const double c1 = gain / (std::sqrt(2.0 * kPi) * sigma1);
  const double c2 = gain / (std::sqrt(2.0 * kPi) * sigma2);
  return tabulate(size, [&](double x, double y) {
    const double r2 = x * x + y * y;
    return c1 * std::exp(-r2 / (2.0 * sigma1 * sigma1)) - c2 * std::exp(-r2 / (2.0 * sigma2 * sigma2));
  });
}

Kernel make_dog(double gain, double sigma1, double sigma2, int size) {
  if (!(sigma1 < sigma2)) throw std::invalid_argument("make_dog: sigma1 < sigma2 required");
  return make_dog_unchecked(gain, sigma1, sigma2, size);
}

Kernel make_gabor(double theta, double psi, double lambda, double sigma, int size) {
  if (!(lambda > 0.0) || !(sigma > 0.0)) throw std::invalid_argument("make_gabor: lambda and sigma must be positive");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return tabulate(size, [&](double x, double y) {
    const double xr = x * c + y * s;
    const double yr = -x * s + y * c;
    return std::exp(-(xr * xr + yr * yr) / (2.0 * sigma * sigma)) * std::cos(2.0 * kPi * xr / lambda + psi);
  });
}

Kernel make_center_surround(double lambda, double sigma, double psi, int size) {
  if (!(lambda > 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("make_center_surround: lambda and sigma must be positive");
  }
  return tabulate(size, [&](double x, double y) {
    const double r2 = x * x + y * y;
    return 1.0 - std::exp(-r2 / (2.0 * sigma * sigma)) * std::cos(2.0 * kPi * r2 / lambda + psi);
  });
}

Kernel make_gaussian(double sigma, int size) {
  if (!(sigma > 0.0)) throw std::invalid_argument("make_gaussian: sigma must be positive");
  const double norm = 1.0 / (2.0 * kPi * sigma * sigma);
  Kernel k = tabulate(size, [&](double x, double y) {
    return norm * std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
  });
  Kernel::Separable f;
  f.row.resize(static_cast<std::size_t>(size));
  f.column.resize(static_cast<std::size_t>(size));
  const int r = k.radius();
  for (int i = -r; i <= r; ++i) {
    const double g = std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
    f.row[i + r] = norm * g;
    f.column[i + r] = g;
  }
  k.set_separable(std::move(f));
  return k;
}

Field correlate_direct(const Field& field, const Kernel& kernel, BorderPolicy) {
  require_finite(field);
  const int w = field.width();
  const int h = field.height();
  const int r = kernel.radius();
  const int n = kernel.size();
  Field out(w, h);

  // Padded copy turns the replicate border into plain indexing.
  const int pw = w + 2 * r;
  std::vector<double> padded(static_cast<std::size_t>(pw) * static_cast<std::size_t>(h + 2 * r));
  for (int y = 0; y < h + 2 * r; ++y) {
    const double* src = field.row(clamp_index(y - r, h));
    double* dst = padded.data() + static_cast<std::size_t>(y) * pw;
    for (int x = 0; x < pw; ++x) dst[x] = src[clamp_index(x - r, w)];
  }

  const std::vector<double>& wts = kernel.weights();
  for (int y = 0; y < h; ++y) {
    double* dst = out.row(y);
    for (int ky = 0; ky < n; ++ky) {
      const double* src = padded.data() + static_cast<std::size_t>(y + ky) * pw;
      const double* krow = wts.data() + static_cast<std::size_t>(ky) * n;
      for (int kx = 0; kx < n; ++kx) {
        const double c = krow[kx];
        if (c == 0.0) continue;
        const double* s = src + kx;
        for (int x = 0; x < w; ++x) dst[x] += s[x] * c;
      }
    }
  }
  return out;
}

Field correlate(const Field& field, const Kernel& kernel, BorderPolicy border) {
  if (!kernel.separable()) return correlate_direct(field, kernel, border);
  require_finite(field);
  const auto& f = *kernel.separable();
  return correlate_1d(correlate_1d(field, f.row, true), f.column, false);
}

}  // namespace loom
