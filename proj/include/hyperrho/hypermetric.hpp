#pragma once

#include <array>
#include <vector>

#include "hyperrho/space.hpp"

namespace hyperrho {

enum class RhoMethod { ExactEuclidean, DiscreteSearch };

// Value of the third-order hypermetric rho(x,y,z) together with the
// minimizing (or first-minimizing) center.
struct RhoResult {
  double value = 0.0;
  int witness = -1;  // stored-point id for the discrete search, -1 otherwise
  std::array<double, 3> witness_point{0.0, 0.0, 0.0};
  RhoMethod method = RhoMethod::DiscreteSearch;
  double max_pairwise = 0.0;  // L = max of the three pairwise distances
};

// Sup-product metric on triples: max of the componentwise distances.
double d3(const MetricMeasureSpace& space, const std::array<int, 3>& a,
          const std::array<int, 3>& b);

// Minimum enclosing ball radius of three Euclidean points: half the longest
// side when the opposite vertex lies in its diameter ball, else the
// circumradius. Collinear and degenerate triples fall into the first branch.
RhoResult rho_exact_euclidean(const std::array<double, 3>& x,
                              const std::array<double, 3>& y,
                              const std::array<double, 3>& z, int dim);

// Infimum over the stored point set (candidates always include x, y, z).
// Ties resolve to the first minimizer in stored point order.
RhoResult rho_discrete(const MetricMeasureSpace& space, int x, int y, int z);

// Per-space dispatch: exact geometric path on Euclidean grids, monotone
// transform of the 1-D enclosing interval on the snowflake, discrete search
// on Cantor dust.
RhoResult rho(const MetricMeasureSpace& space, int x, int y, int z);

// Value-only fast path used by the operator evaluators.
double rho_value(const MetricMeasureSpace& space, int x, int y, int z);

// Order-2 analogue: inf over centers of max{d(x,u), d(y,u)}.
double rho_pair(const MetricMeasureSpace& space, int x, int y);

// mu^2 of the section E(x,r) = {(y,z): rho(x,y,z) < r}.
double section_measure(const MetricMeasureSpace& space, int x, double r);

struct InclusionReport {
  int inner_count = 0;    // pairs in B(x,r) x B(x,r)
  int section_count = 0;  // pairs in E(x,r)
  int outer_count = 0;    // pairs in B(x,2kr) x B(x,2kr)
  bool left_ok = true;
  bool right_ok = true;
  int bad_y = -1, bad_z = -1;
};

// Explicit membership enumeration of B x B subset E subset B(2kr) x B(2kr).
InclusionReport check_inclusions(const MetricMeasureSpace& space, int x, double r);

// Precomputes the rho(x, ., .) values once so that sections at several radii
// share the work (the Cantor discrete search is O(N) per pair).
class SectionView {
public:
  SectionView(const MetricMeasureSpace& space, int x);
  double measure(double r) const;
  InclusionReport inclusions(double r) const;
  double rho_at(int y, int z) const;

private:
  const MetricMeasureSpace& space_;
  int x_;
  bool materialized_ = false;
  std::vector<double> row_;  // size N*N when materialized
};

}  // namespace hyperrho
