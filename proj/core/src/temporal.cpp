#include "loom/temporal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace loom {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

CascadeState::CascadeState(int width, int height, int depth, CascadeCoefficients coeffs)
    : coeffs_(coeffs) {
  if (depth < 2) throw std::invalid_argument("cascade depth must be >= 2");
  levels_.assign(static_cast<std::size_t>(depth), Field(width, height));
}

void CascadeState::step(const Field& input) {
  require_same_shape(input, levels_.front(), "CascadeState::step");
  if (!input.all_finite()) throw std::invalid_argument("CascadeState::step: non-finite input");

  const double rate = coeffs_.dt / coeffs_.tau;
  const double keep = 1.0 - rate * coeffs_.decay;
  const double gain = rate * coeffs_.transmission;
  // Deepest level first so each update sees the previous frame's predecessor.
  for (std::size_t n = levels_.size(); n-- > 0;) {
    Field& z = levels_[n];
    const Field& prev = n == 0 ? input : levels_[n - 1];
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = keep * z[i] + gain * prev[i];
  }
}

Field CascadeState::read_output(int n, double gain) const {
  if (n < 1 || n + 1 > depth()) {
    throw std::out_of_range("read_output: level " + std::to_string(n) + " needs depth >= " +
                            std::to_string(n + 1) + ", have " + std::to_string(depth()));
  }
  return add_scaled(level(n), gain, level(n + 1), -gain);
}

const Field& CascadeState::level(int n) const {
  if (n < 1 || n > depth()) throw std::out_of_range("cascade level out of range");
  return levels_[static_cast<std::size_t>(n - 1)];
}

double analytic_impulse(int n, int m, double gain, double decay, double transmission, double tau,
                        double t) {
  const double a = decay / tau;
  const double b = transmission / tau;
  const double first = std::pow(b, n) * std::pow(t, n - 1) / factorial(n - 1);
  const double second = std::pow(b, n + m) * std::pow(t, n + m - 1) / factorial(n + m - 1);
  return gain * std::exp(-a * t) * (first - second);
}

std::pair<double, double> analytic_extrema(int n, double decay, double transmission, double tau) {
  if (n < 2) throw std::invalid_argument("analytic_extrema requires n >= 2");
  const double a = decay / tau;
  const double b = transmission / tau;
  const double qa = a * b * factorial(n - 1);
  const double qb = (a + b) * factorial(n);
  const double qc = (n - 1) * factorial(n);
  const double disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  return {(qb - disc) / (2.0 * qa), (qb + disc) / (2.0 * qa)};
}

double classical_kernel(double k, int n, double t) {
  const double kt = k * t;
  return std::exp(-kt) * (std::pow(kt, n) / factorial(n) - std::pow(kt, n + 2) / factorial(n + 2));
}

}  // namespace loom
