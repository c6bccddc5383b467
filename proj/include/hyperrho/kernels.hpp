#pragma once

#include <functional>
#include <string>

namespace hyperrho {

// Nonincreasing nonnegative kernel profiles phi(t), t > 0.
struct KernelProfile {
  enum class Kind { PowerCutoff, Tail, Exponential, Indicator, RawPower };

  Kind kind = Kind::Indicator;
  double alpha = 0.0;   // power-cutoff exponent: t^-alpha on (0,1)
  double beta = 0.0;    // tail exponent: 1 on (0,1), t^-beta on [1,inf)
  double radius = 1.0;  // indicator support (0, radius)
  double gamma = 0.0;   // raw power t^-gamma

  double operator()(double t) const;
  bool singular_at_zero() const;
  std::string describe() const;

  static KernelProfile power_cutoff(double alpha);
  static KernelProfile tail(double beta);
  static KernelProfile exponential();
  static KernelProfile indicator(double radius);
  static KernelProfile raw_power(double gamma);
};

// Analytic value of the moment integral of phi(t) t^(2 eta - 1) over (0, inf).
// Divergence is signalled as +infinity, not an exception.
double phi_moment(const KernelProfile& phi, double eta);

// Same moment restricted to [lo, hi] (valid-scale truncation on finite spaces).
double phi_moment_window(const KernelProfile& phi, double eta, double lo, double hi);

// Adaptive midpoint-refinement quadrature of phi(t) t^(2 eta - 1) over
// [lo, hi] to the requested relative tolerance; oracle for the closed forms.
double phi_moment_quadrature(const std::function<double(double)>& phi, double eta,
                             double lo, double hi, double rel_tol = 1e-10);

}  // namespace hyperrho
