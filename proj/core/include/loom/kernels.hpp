#pragma once

#include <optional>
#include <vector>

#include "loom/field.hpp"
#include "loom/params.hpp"

namespace loom {

/// Square, odd-sized filter kernel addressed by signed offsets from its center.
class Kernel {
 public:
  Kernel() = default;
  /// Zero-filled kernel; throws std::invalid_argument unless size is odd and positive.
  explicit Kernel(int size);

  int size() const { return size_; }
  int radius() const { return (size_ - 1) / 2; }

  double& at(int dx, int dy) { return weights_[index(dx, dy)]; }
  double at(int dx, int dy) const { return weights_[index(dx, dy)]; }
  const std::vector<double>& weights() const { return weights_; }

  double sum() const;
  Kernel negated() const;

  /// Optional factorization weight(dx,dy) ~= column[dy] * row[dx]; when set,
  /// correlate() uses two 1-D passes instead of the full 2-D sum.
  struct Separable {
    std::vector<double> row;
    std::vector<double> column;
  };
  const std::optional<Separable>& separable() const { return separable_; }
  void set_separable(Separable factors);
  void clear_separable() { separable_.reset(); }

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.size_ == b.size_ && a.weights_ == b.weights_;
  }

 private:
  std::size_t index(int dx, int dy) const {
    return static_cast<std::size_t>(dy + radius()) * static_cast<std::size_t>(size_) +
           static_cast<std::size_t>(dx + radius());
  }

  int size_ = 0;
  std::vector<double> weights_;
  std::optional<Separable> separable_;
};

/// Difference of Gaussians with the 1-D normalization F / (sqrt(2 pi) sigma)
/// applied to each 2-D lobe. Throws std::invalid_argument unless sigma1 < sigma2.
Kernel make_dog(double gain, double sigma1, double sigma2, int size);

/// Same as make_dog without the ordering check (sigma1 == sigma2 yields zeros).
Kernel make_dog_unchecked(double gain, double sigma1, double sigma2, int size);

/// Oriented Gabor: exp(-(x'^2 + y'^2) / 2 sigma^2) cos(2 pi x' / lambda + psi),
/// x' = x cos(theta) + y sin(theta), y' = -x sin(theta) + y cos(theta).
Kernel make_gabor(double theta, double psi, double lambda, double sigma, int size);

/// Radial kernel 1 - exp(-r^2 / 2 sigma^2) cos(2 pi r^2 / lambda + psi); zero-ish
/// center, unit surround.
Kernel make_center_surround(double lambda, double sigma, double psi, int size);

/// Normalized 2-D Gaussian (1 / 2 pi sigma^2) exp(-r^2 / 2 sigma^2), not renormalized
/// after truncation. Carries a separable factorization.
Kernel make_gaussian(double sigma, int size);

/// Centered cross-correlation: out(x,y) = sum_{i,j} field(x+i, y+j) * kernel(i,j),
/// samples outside the frame clamped to the nearest edge pixel.
/// Throws std::invalid_argument on non-finite input.
Field correlate(const Field& field, const Kernel& kernel,
                BorderPolicy border = BorderPolicy::kReplicate);

/// Reference path that ignores any separable factorization.
Field correlate_direct(const Field& field, const Kernel& kernel,
                       BorderPolicy border = BorderPolicy::kReplicate);

}  // namespace loom
