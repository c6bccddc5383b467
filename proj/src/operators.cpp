#include "hyperrho/operators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyperrho/hypermetric.hpp"
#include "hyperrho/parallel.hpp"

namespace hyperrho {

namespace {

void require_same_space(const MetricMeasureSpace& space, const GridFunction& f) {
  if (f.space != &space || static_cast<int>(f.values.size()) != space.size())
    throw std::invalid_argument("function does not live on this space");
}

bool excluded(PairExclusion excl, int x, int y, int z) {
  switch (excl) {
    case PairExclusion::CenterPair: return y == x && z == x;
    case PairExclusion::RieszProduct: return y == x || z == x;
    case PairExclusion::RieszOfFIg: return y == x || z == y;
    case PairExclusion::RieszOfGIf: return z == x || y == z;
  }
  return false;
}

}  // namespace

GridFunction riesz_apply(const MetricMeasureSpace& space, double alpha,
                         const GridFunction& f) {
  require_same_space(space, f);
  if (!(alpha > 0.0) || !(alpha < space.eta()))
    throw std::invalid_argument("riesz order must lie in (0, eta)");
  const int n = space.size();
  const double p = alpha - space.eta();  // kernel d^(alpha - eta)
  std::vector<double> out(n, 0.0);
  for (int x = 0; x < n; ++x) {
    double s = 0.0;
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;  // diagonal excluded
      s += f.values[y] * std::pow(space.distance(x, y), p) * space.weight(y);
    }
    out[x] = s;
  }
  return GridFunction{&space, std::move(out), f.nonneg};
}

double bilinear_phi_apply(const MetricMeasureSpace& space, const KernelProfile& phi,
                          const GridFunction& f, const GridFunction& g, int x) {
  require_same_space(space, f);
  require_same_space(space, g);
  if (x < 0 || x >= space.size()) throw std::invalid_argument("bad point id");
  const int n = space.size();
  const bool skip_center = phi.singular_at_zero();
  double s = 0.0;
  for (int y = 0; y < n; ++y) {
    for (int z = 0; z < n; ++z) {
      if (skip_center && y == x && z == x) continue;
      const double r = rho_value(space, x, y, z);
      const double k = r > 0.0 ? phi(r) : phi.singular_at_zero() ? 0.0 : 1.0;
      if (!std::isfinite(k))
        throw std::domain_error("non-finite kernel value off the excluded pair");
      s += k * f.values[y] * g.values[z] * space.weight(y) * space.weight(z);
    }
  }
  return s;
}

double j_integral(const MetricMeasureSpace& space, const KernelProfile& phi, int x) {
  return bilinear_phi_apply(space, phi, constant_function(space, 1.0),
                            constant_function(space, 1.0), x);
}

GridFunction t_gamma_apply(const MetricMeasureSpace& space, double gamma,
                           const GridFunction& f, const GridFunction& g,
                           PairExclusion excl) {
  require_same_space(space, f);
  require_same_space(space, g);
  if (!(gamma > 0.0) || !(gamma < 2.0 * space.eta()))
    throw std::invalid_argument("gamma must lie in (0, 2 eta)");
  const int n = space.size();
  std::vector<double> out(n, 0.0);
  for (int x = 0; x < n; ++x) {
    double s = 0.0;
    for (int y = 0; y < n; ++y) {
      const double fy = f.values[y] * space.weight(y);
      for (int z = 0; z < n; ++z) {
        if (excluded(excl, x, y, z)) continue;
        s += fy * g.values[z] * space.weight(z) *
             std::pow(rho_value(space, x, y, z), -gamma);
      }
    }
    out[x] = s;
  }
  return GridFunction{&space, std::move(out), f.nonneg && g.nonneg};
}

GridFunction t_gamma_apply_fast(const MetricMeasureSpace& space, double gamma,
                                const GridFunction& f, const GridFunction& g,
                                int workers) {
  require_same_space(space, f);
  require_same_space(space, g);
  if (!(gamma > 0.0) || !(gamma < 2.0 * space.eta()))
    throw std::invalid_argument("gamma must lie in (0, 2 eta)");
  if (workers <= 0) workers = default_workers();
  const int n = space.size();
  constexpr int kTile = 64;
  std::vector<double> out(n, 0.0);
  const double* fv = f.values.data();
  const double* gv = g.values.data();

  parallel_for(n, workers, [&](int x) {
    double total = 0.0;
    // Upper-triangle tiles in fixed order; rho(x,y,z) = rho(x,z,y).
    for (int yt = 0; yt < n; yt += kTile) {
      const int ye = std::min(n, yt + kTile);
      for (int zt = yt; zt < n; zt += kTile) {
        const int ze = std::min(n, zt + kTile);
        double tile = 0.0;
        for (int y = yt; y < ye; ++y) {
          const double wy = space.weight(y);
          const int z0 = std::max(zt, y);
          for (int z = z0; z < ze; ++z) {
            if (y == x && z == x) continue;
            const double k = std::pow(rho_value(space, x, y, z), -gamma);
            const double cross =
                y == z ? fv[y] * gv[y]
                       : fv[y] * gv[z] + fv[z] * gv[y];
            tile += k * cross * wy * space.weight(z);
          }
        }
        total += tile;
      }
    }
    out[x] = total;
  });
  return GridFunction{&space, std::move(out), f.nonneg && g.nonneg};
}

Lemma11Constants lemma11_constants(const MetricMeasureSpace& space,
                                   double lambda_upper) {
  const double eta = space.eta();
  const double kappa = space.kappa();
  const double a = space.ahlfors_lower();
  const double A = space.ahlfors_upper();
  const double tk2eta = std::pow(2.0 * kappa, 2.0 * eta);

  Lemma11Constants c;
  auto upper_of = [&](double lam) {
    return std::pow(lam, 4.0 * eta) / std::log(lam) * A * A * tk2eta;
  };
  if (lambda_upper == 0.0) {
    // lambda^(4 eta)/log lambda is unimodal on (1, inf); ternary search over
    // the admissible range.
    double lo = std::max(2.0 * kappa, std::exp(1.0 / (4.0 * eta))) * (1.0 + 1e-9);
    double hi = std::max(lo * 2.0, 16.0);
    for (int i = 0; i < 200; ++i) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (upper_of(m1) <= upper_of(m2))
        hi = m2;
      else
        lo = m1;
    }
    lambda_upper = 0.5 * (lo + hi);
  }
  if (!(lambda_upper > 1.0)) throw std::invalid_argument("lambda must exceed 1");
  c.lambda_upper = lambda_upper;
  c.C2 = upper_of(lambda_upper);

  c.lambda_lower = std::pow(1.0 + A * A * tk2eta, 1.0 / (2.0 * eta)) /
                   std::pow(a, 1.0 / eta);
  c.C1 = 1.0 / (std::pow(c.lambda_lower, 4.0 * eta) * std::log(c.lambda_lower));
  if (!(c.C1 <= c.C2)) throw std::logic_error("lemma constants out of order");
  return c;
}

}  // namespace hyperrho
