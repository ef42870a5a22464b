#pragma once

#include <utility>
#include <vector>

#include "loom/field.hpp"

namespace loom {

struct CascadeCoefficients {
  double decay = 60.0;         // A
  double transmission = 60.0;  // C
  double tau = 5.0;
  double dt = 0.05;
};

/// Per-pixel chain of leaky integrators tau dz_n/dt = -A z_n + C z_{n-1},
/// integrated with explicit Euler. Every level reads its predecessor's
/// pre-step value, so one step() is a single synchronous update.
class CascadeState {
 public:
  CascadeState(int width, int height, int depth, CascadeCoefficients coeffs);

  /// Advances one frame with z_0 = input. Throws on shape mismatch or non-finite input.
  void step(const Field& input);

  /// K (z_n - z_{n+1}); requires 1 <= n and n + 1 <= depth.
  Field read_output(int n, double gain) const;

  /// Level n in 1..depth.
  const Field& level(int n) const;
  int depth() const { return static_cast<int>(levels_.size()); }
  const CascadeCoefficients& coefficients() const { return coeffs_; }

 private:
  CascadeCoefficients coeffs_;
  std::vector<Field> levels_;
};

/// Closed-form continuous response of K (z_n - z_{n+m}) to a unit impulse at t = 0.
double analytic_impulse(int n, int m, double gain, double decay, double transmission, double tau,
                        double t);

/// Roots t1 < t2 of a b (n-1)! t^2 - (a+b) n! t + (n-1) n! = 0 with a = A/tau,
/// b = C/tau: the stationary points of the m = 1 impulse response (t1 the peak).
/// Requires n >= 2.
std::pair<double, double> analytic_extrema(int n, double decay, double transmission, double tau);

/// Classical biphasic temporal kernel (kt)^n e^{-kt}/n! - (kt)^{n+2} e^{-kt}/(n+2)!.
/// Reference only; the runtime path uses CascadeState.
double classical_kernel(double k, int n, double t);

}  // namespace loom
