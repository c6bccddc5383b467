#pragma once

#include "hyperrho/grid_function.hpp"
#include "hyperrho/kernels.hpp"
#include "hyperrho/space.hpp"

namespace hyperrho {

// Linear fractional integral I_alpha f(x) = sum_{y != x} f(y) d(x,y)^(alpha-eta) w_y.
// Requires 0 < alpha < eta.
GridFunction riesz_apply(const MetricMeasureSpace& space, double alpha,
                         const GridFunction& f);

// sum over pairs (y,z) of phi(rho(x,y,z)) f(y) g(z) w_y w_z. Singular kernels
// exclude the single zero-rho pair (y,z) = (x,x); bounded kernels include it.
double bilinear_phi_apply(const MetricMeasureSpace& space, const KernelProfile& phi,
                          const GridFunction& f, const GridFunction& g, int x);

// J(x): bilinear_phi_apply with f = g = 1.
double j_integral(const MetricMeasureSpace& space, const KernelProfile& phi, int x);

// Pair-exclusion conventions for the T^gamma sums. CenterPair is the default
// (only (y,z) = (x,x), the sole zero-rho configuration, is dropped). The
// Match* conventions drop exactly the pairs absent from the corresponding
// Riesz composition bound so the comparison is term-by-term.
enum class PairExclusion {
  CenterPair,     // y == x && z == x
  RieszProduct,   // y == x || z == x   (matches (I f)(I g))
  RieszOfFIg,     // y == x || z == y   (matches I(f . I g))
  RieszOfGIf,     // z == x || y == z   (matches I(g . I f))
};

// Reference evaluator: plain triple loop, fixed summation order.
// Requires 0 < gamma < 2 eta.
GridFunction t_gamma_apply(const MetricMeasureSpace& space, double gamma,
                           const GridFunction& f, const GridFunction& g,
                           PairExclusion excl = PairExclusion::CenterPair);

// Tiled evaluator: exploits the (y,z)-symmetry of rho to halve the kernel
// evaluations and parallelizes across output points. Per-point summation
// order is fixed (tile-major), so results are identical for any worker count.
GridFunction t_gamma_apply_fast(const MetricMeasureSpace& space, double gamma,
                                const GridFunction& f, const GridFunction& g,
                                int workers = 0);

struct Lemma11Constants {
  double C1 = 0.0;
  double C2 = 0.0;
  double lambda_lower = 0.0;  // lambda used for C1
  double lambda_upper = 0.0;  // lambda used for C2
};

// C2 = (lambda^(4 eta)/log lambda) A^2 (2 kappa)^(2 eta) for the caller's
// lambda (0 selects the minimizer over lambda > max(2 kappa, e^(1/(4 eta)))),
// and C1 = 1/(lambda^(4 eta) log lambda) at the specific lower-bound lambda
// lambda = (1 + A^2 (2 kappa)^(2 eta))^(1/(2 eta)) / a^(1/eta).
Lemma11Constants lemma11_constants(const MetricMeasureSpace& space,
                                   double lambda_upper = 0.0);

}  // namespace hyperrho
