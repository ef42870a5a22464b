#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace loom {

/// Dense 2-D grid of doubles, row-major. x indexes columns (rightward),
/// y indexes rows (downward).
class Field {
 public:
  Field() = default;
  Field(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator()(int x, int y) { return values_[index(x, y)]; }
  double operator()(int x, int y) const { return values_[index(x, y)]; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() & { return values_; }
  std::span<const double> values() const& { return values_; }
  // Temporaries hand over their storage so range-for over a returned Field is safe.
  std::vector<double> values() && { return std::move(values_); }

  double* row(int y) { return values_.data() + static_cast<std::size_t>(y) * width_; }
  const double* row(int y) const { return values_.data() + static_cast<std::size_t>(y) * width_; }

  bool same_shape(const Field& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  double sum() const;
  bool all_finite() const;
  void fill(double v);

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require_same_shape(const Field& a, const Field& b, const char* what);

// Elementwise helpers used throughout the layers.
double relu(double v);
Field relu(const Field& f);
Field add_scaled(const Field& a, double alpha, const Field& b, double beta);
Field multiply(const Field& a, const Field& b);

}  // namespace loom
