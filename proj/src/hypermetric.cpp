#include "hyperrho/hypermetric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyperrho {

double d3(const MetricMeasureSpace& space, const std::array<int, 3>& a,
          const std::array<int, 3>& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i) m = std::max(m, space.distance(a[i], b[i]));
  return m;
}

namespace {

double sqdist(const std::array<double, 3>& p, const std::array<double, 3>& q, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double t = p[d] - q[d];
    s += t * t;
  }
  return s;
}

}  // namespace

RhoResult rho_exact_euclidean(const std::array<double, 3>& x,
                              const std::array<double, 3>& y,
                              const std::array<double, 3>& z, int dim) {
  RhoResult res;
  res.method = RhoMethod::ExactEuclidean;

  const std::array<const std::array<double, 3>*, 3> v{&x, &y, &z};
  // Squared side lengths, side i opposite vertex i.
  std::array<double, 3> sq{sqdist(y, z, dim), sqdist(x, z, dim), sqdist(x, y, dim)};
  int longest = 0;
  for (int i = 1; i < 3; ++i)
    if (sq[i] > sq[longest]) longest = i;
  const double L = std::sqrt(sq[longest]);
  res.max_pairwise = L;

  if (L == 0.0) {  // all points equal
    res.value = 0.0;
    res.witness_point = x;
    return res;
  }

  const int p = (longest + 1) % 3, q = (longest + 2) % 3;
  // Vertex `longest` is opposite the longest side (endpoints p, q). The
  // opposite vertex lies in the diameter ball iff its angle is >= 90 deg,
  // i.e. the other two squared sides sum to at most the longest.
  if (sq[p] + sq[q] <= sq[longest]) {
    res.value = L / 2.0;
    for (int d = 0; d < dim; ++d)
      res.witness_point[d] = 0.5 * ((*v[p])[d] + (*v[q])[d]);
    return res;
  }

  // Acute triangle: circumradius abc / (4 Area), circumcenter via barycentric
  // weights a^2(b^2+c^2-a^2). The value is evaluated on the sorted squared
  // sides so that it is bitwise invariant under argument permutations.
  std::array<double, 3> s = sq;
  std::sort(s.begin(), s.end());
  const double area2_16 = std::max(
      2.0 * (s[0] * s[1] + s[1] * s[2] + s[2] * s[0]) -
          s[0] * s[0] - s[1] * s[1] - s[2] * s[2],
      0.0);
  const double area = 0.25 * std::sqrt(area2_16);
  res.value = (std::sqrt(s[0]) * std::sqrt(s[1]) * std::sqrt(s[2])) / (4.0 * area);
  const double a2 = sq[0], b2 = sq[1], c2 = sq[2];
  const std::array<double, 3> w{a2 * (b2 + c2 - a2), b2 * (c2 + a2 - b2),
                                c2 * (a2 + b2 - c2)};
  const double ws = w[0] + w[1] + w[2];
  for (int d = 0; d < dim; ++d)
    res.witness_point[d] =
        (w[0] * (*v[0])[d] + w[1] * (*v[1])[d] + w[2] * (*v[2])[d]) / ws;
  return res;
}

RhoResult rho_discrete(const MetricMeasureSpace& space, int x, int y, int z) {
  RhoResult res;
  res.method = RhoMethod::DiscreteSearch;
  const double dxy = space.distance(x, y);
  const double dxz = space.distance(x, z);
  const double dyz = space.distance(y, z);
  res.max_pairwise = std::max({dxy, dxz, dyz});

  double best = std::numeric_limits<double>::infinity();
  int arg = -1;
  for (int u = 0; u < space.size(); ++u) {
    const double m = std::max(
        {space.distance(x, u), space.distance(y, u), space.distance(z, u)});
    if (m < best) {
      best = m;
      arg = u;
    }
  }
  res.value = best;
  res.witness = arg;
  res.witness_point = space.point(arg);
  return res;
}

RhoResult rho(const MetricMeasureSpace& space, int x, int y, int z) {
  switch (space.kind()) {
    case SpaceKind::EuclideanGrid:
      return rho_exact_euclidean(space.point(x), space.point(y), space.point(z),
                                 space.dim());
    case SpaceKind::SnowflakeLine: {
      // Monotone transform of the 1-D enclosing interval: the center of the
      // Euclidean span minimizes the max of the powered distances too.
      RhoResult res;
      res.method = RhoMethod::ExactEuclidean;
      const double a = space.point(x)[0], b = space.point(y)[0], c = space.point(z)[0];
      const double lo = std::min({a, b, c}), hi = std::max({a, b, c});
      const double beta = space.snowflake_beta();
      res.value = std::pow((hi - lo) / 2.0, beta);
      res.witness_point = {(lo + hi) / 2.0, 0.0, 0.0};
      res.max_pairwise = std::pow(hi - lo, beta);
      return res;
    }
    case SpaceKind::CantorDust:
    default:
      return rho_discrete(space, x, y, z);
  }
}

double rho_value(const MetricMeasureSpace& space, int x, int y, int z) {
  switch (space.kind()) {
    case SpaceKind::EuclideanGrid:
      if (space.dim() == 1) {
        const double a = space.point(x)[0], b = space.point(y)[0], c = space.point(z)[0];
        return (std::max({a, b, c}) - std::min({a, b, c})) / 2.0;
      }
      return rho_exact_euclidean(space.point(x), space.point(y), space.point(z),
                                 space.dim())
          .value;
    case SpaceKind::SnowflakeLine: {
      const double a = space.point(x)[0], b = space.point(y)[0], c = space.point(z)[0];
      return std::pow((std::max({a, b, c}) - std::min({a, b, c})) / 2.0,
                      space.snowflake_beta());
    }
    case SpaceKind::CantorDust:
    default: {
      double best = std::numeric_limits<double>::infinity();
      for (int u = 0; u < space.size(); ++u) {
        const double m = std::max(
            {space.distance(x, u), space.distance(y, u), space.distance(z, u)});
        best = std::min(best, m);
      }
      return best;
    }
  }
}

double rho_pair(const MetricMeasureSpace& space, int x, int y) {
  switch (space.kind()) {
    case SpaceKind::EuclideanGrid:
      return space.distance(x, y) / 2.0;
    case SpaceKind::SnowflakeLine:
      return std::pow(std::fabs(space.point(x)[0] - space.point(y)[0]) / 2.0,
                      space.snowflake_beta());
    case SpaceKind::CantorDust:
    default: {
      double best = std::numeric_limits<double>::infinity();
      for (int u = 0; u < space.size(); ++u)
        best = std::min(best,
                        std::max(space.distance(x, u), space.distance(y, u)));
      return best;
    }
  }
}

SectionView::SectionView(const MetricMeasureSpace& space, int x)
    : space_(space), x_(x) {
  if (x < 0 || x >= space.size()) throw std::invalid_argument("SectionView: bad center id");
  const int n = space.size();
  materialized_ = true;
  row_.resize(static_cast<std::size_t>(n) * n);
  if (space.kind() == SpaceKind::CantorDust) {
    std::vector<double> dx(n);
    for (int u = 0; u < n; ++u) dx[u] = space.distance(x, u);
    for (int y = 0; y < n; ++y) {
      std::vector<double> dy(n);
      for (int u = 0; u < n; ++u) dy[u] = space.distance(y, u);
      for (int z = y; z < n; ++z) {
        double best = std::numeric_limits<double>::infinity();
        for (int u = 0; u < n; ++u) {
          const double m = std::max({dx[u], dy[u], space.distance(z, u)});
          if (m < best) best = m;
        }
        row_[static_cast<std::size_t>(y) * n + z] = best;
        row_[static_cast<std::size_t>(z) * n + y] = best;
      }
    }
  } else {
    for (int y = 0; y < n; ++y)
      for (int z = y; z < n; ++z) {
        const double v = rho_value(space, x, y, z);
        row_[static_cast<std::size_t>(y) * n + z] = v;
        row_[static_cast<std::size_t>(z) * n + y] = v;
      }
  }
}

double SectionView::rho_at(int y, int z) const {
  return row_[static_cast<std::size_t>(y) * space_.size() + z];
}

double SectionView::measure(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("section radius must be positive");
  const int n = space_.size();
  double total = 0.0;
  for (int y = 0; y < n; ++y) {
    double inner = 0.0;
    for (int z = 0; z < n; ++z)
      if (rho_at(y, z) < r) inner += space_.weight(z);
    total += space_.weight(y) * inner;
  }
  return total;
}

InclusionReport SectionView::inclusions(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("section radius must be positive");
  const int n = space_.size();
  const double outer_r = 2.0 * space_.kappa() * r;
  std::vector<char> in_b(n), in_outer(n);
  for (int j = 0; j < n; ++j) {
    const double d = space_.distance(x_, j);
    in_b[j] = d < r;
    in_outer[j] = d < outer_r;
  }
  InclusionReport rep;
  for (int y = 0; y < n; ++y) {
    for (int z = 0; z < n; ++z) {
      const bool bb = in_b[y] && in_b[z];
      const bool ee = rho_at(y, z) < r;
      const bool oo = in_outer[y] && in_outer[z];
      rep.inner_count += bb;
      rep.section_count += ee;
      rep.outer_count += oo;
      if ((bb && !ee) || (ee && !oo)) {
        if (bb && !ee) rep.left_ok = false;
        if (ee && !oo) rep.right_ok = false;
        if (rep.bad_y < 0) {
          rep.bad_y = y;
          rep.bad_z = z;
        }
      }
    }
  }
  return rep;
}

double section_measure(const MetricMeasureSpace& space, int x, double r) {
  return SectionView(space, x).measure(r);
}

InclusionReport check_inclusions(const MetricMeasureSpace& space, int x, double r) {
  return SectionView(space, x).inclusions(r);
}

}  // namespace hyperrho
