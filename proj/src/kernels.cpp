#include "hyperrho/kernels.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hyperrho {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double KernelProfile::operator()(double t) const {
  if (!(t > 0.0)) throw std::domain_error("kernel profiles are defined for t > 0");
  switch (kind) {
    case Kind::PowerCutoff: return t < 1.0 ? std::pow(t, -alpha) : 0.0;
    case Kind::Tail: return t < 1.0 ? 1.0 : std::pow(t, -beta);
    case Kind::Exponential: return std::exp(-t);
    case Kind::Indicator: return t < radius ? 1.0 : 0.0;
    case Kind::RawPower: return std::pow(t, -gamma);
  }
  return 0.0;
}

bool KernelProfile::singular_at_zero() const {
  switch (kind) {
    case Kind::PowerCutoff: return alpha > 0.0;
    case Kind::RawPower: return gamma > 0.0;
    default: return false;
  }
}

std::string KernelProfile::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::PowerCutoff: os << "power-cutoff(alpha=" << alpha << ")"; break;
    case Kind::Tail: os << "tail(beta=" << beta << ")"; break;
    case Kind::Exponential: os << "exponential"; break;
    case Kind::Indicator: os << "indicator(R=" << radius << ")"; break;
    case Kind::RawPower: os << "raw-power(gamma=" << gamma << ")"; break;
  }
  return os.str();
}

KernelProfile KernelProfile::power_cutoff(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("power-cutoff needs alpha > 0");
  KernelProfile k;
  k.kind = Kind::PowerCutoff;
  k.alpha = alpha;
  return k;
}

KernelProfile KernelProfile::tail(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("tail needs beta > 0");
  KernelProfile k;
  k.kind = Kind::Tail;
  k.beta = beta;
  return k;
}

KernelProfile KernelProfile::exponential() {
  KernelProfile k;
  k.kind = Kind::Exponential;
  return k;
}

KernelProfile KernelProfile::indicator(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("indicator needs R > 0");
  KernelProfile k;
  k.kind = Kind::Indicator;
  k.radius = radius;
  return k;
}

KernelProfile KernelProfile::raw_power(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("raw-power needs gamma > 0");
  KernelProfile k;
  k.kind = Kind::RawPower;
  k.gamma = gamma;
  return k;
}

namespace {

// Antiderivative of t^(q-1) on a power piece: t^q / q, or log t at q = 0.
double power_piece(double q, double lo, double hi) {
  if (q == 0.0) return std::log(hi / lo);
  return (std::pow(hi, q) - std::pow(lo, q)) / q;
}

}  // namespace

double phi_moment(const KernelProfile& phi, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  const double two_eta = 2.0 * eta;
  switch (phi.kind) {
    case KernelProfile::Kind::PowerCutoff:
      return phi.alpha < two_eta ? 1.0 / (two_eta - phi.alpha) : kInf;
    case KernelProfile::Kind::Tail:
      return phi.beta > two_eta ? 1.0 / two_eta + 1.0 / (phi.beta - two_eta) : kInf;
    case KernelProfile::Kind::Indicator:
      return std::pow(phi.radius, two_eta) / two_eta;
    case KernelProfile::Kind::Exponential:
      return std::tgamma(two_eta);
    case KernelProfile::Kind::RawPower:
      return kInf;  // diverges at 0 or at infinity for every gamma
  }
  return kInf;
}

double phi_moment_window(const KernelProfile& phi, double eta, double lo, double hi) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("bad moment window");
  const double two_eta = 2.0 * eta;
  switch (phi.kind) {
    case KernelProfile::Kind::PowerCutoff: {
      const double a = lo, b = std::min(hi, 1.0);
      if (b <= a) return 0.0;
      return power_piece(two_eta - phi.alpha, a, b);
    }
    case KernelProfile::Kind::Tail: {
      double s = 0.0;
      if (lo < 1.0) s += power_piece(two_eta, lo, std::min(hi, 1.0));
      if (hi > 1.0) s += power_piece(two_eta - phi.beta, std::max(lo, 1.0), hi);
      return s;
    }
    case KernelProfile::Kind::Indicator: {
      const double a = lo, b = std::min(hi, phi.radius);
      if (b <= a) return 0.0;
      return power_piece(two_eta, a, b);
    }
    case KernelProfile::Kind::RawPower:
      return power_piece(two_eta - phi.gamma, lo, hi);
    case KernelProfile::Kind::Exponential:
      return phi_moment_quadrature([](double t) { return std::exp(-t); }, eta, lo, hi);
  }
  return 0.0;
}

double phi_moment_quadrature(const std::function<double(double)>& phi, double eta,
                             double lo, double hi, double rel_tol) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("bad quadrature window");
  // Midpoint rule on a geometric partition (the integrand lives on log scale),
  // refined until two consecutive levels agree to rel_tol.
  auto level = [&](int n) {
    const double q = std::pow(hi / lo, 1.0 / n);
    double s = 0.0;
    double a = lo;
    for (int i = 0; i < n; ++i) {
      const double b = a * q;
      const double m = std::sqrt(a * b);
      s += phi(m) * std::pow(m, 2.0 * eta - 1.0) * (b - a);
      a = b;
    }
    return s;
  };
  // Discontinuous profiles converge only linearly and can fool a single
  // level-to-level comparison, so demand two consecutive agreements.
  double prev = level(64);
  int agreements = 0;
  double cur = prev;
  for (int n = 128; n <= (1 << 22); n *= 2) {
    cur = level(n);
    if (std::fabs(cur - prev) <= rel_tol * std::max(std::fabs(cur), 1e-300)) {
      if (++agreements >= 2) return cur;
    } else {
      agreements = 0;
    }
    prev = cur;
  }
  return cur;
}

}  // namespace hyperrho
