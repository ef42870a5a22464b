#include "loom/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace loom {

Field::Field(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw DimensionError("field dimensions must be positive, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

double Field::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void Field::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

void require_same_shape(const Field& a, const Field& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.width()) +
                         "x" + std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                         "x" + std::to_string(b.height()));
  }
}

double relu(double v) { return v > 0.0 ? v : 0.0; }

Field relu(const Field& f) {
  Field out = f;
  for (double& v : out.values()) v = relu(v);
  return out;
}

Field add_scaled(const Field& a, double alpha, const Field& b, double beta) {
  require_same_shape(a, b, "add_scaled");
  Field out(a.width(), a.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = alpha * a[i] + beta * b[i];
  return out;
}

Field multiply(const Field& a, const Field& b) {
  require_same_shape(a, b, "multiply");
  Field out(a.width(), a.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

}  // namespace loom
