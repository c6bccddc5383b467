#include "hyperrho/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hyperrho {

namespace {

double unit_ball_volume(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: throw std::invalid_argument("dimension must be 1, 2 or 3");
  }
}

}  // namespace

void MetricMeasureSpace::finalize() {
  total_measure_ = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw std::logic_error("weights must be strictly positive");
    total_measure_ += w;
  }
  // Diameter from coordinate bounding box (all builders are axis-aligned).
  double span = 0.0;
  for (int d = 0; d < dim_; ++d) {
    double lo = points_.front()[d], hi = lo;
    for (const auto& p : points_) {
      lo = std::min(lo, p[d]);
      hi = std::max(hi, p[d]);
    }
    span += (hi - lo) * (hi - lo);
  }
  const double euclid_diam = std::sqrt(span);
  diameter_ = kind_ == SpaceKind::SnowflakeLine ? std::pow(euclid_diam, beta_)
                                                : euclid_diam;
  // Minimal positive distance; builders place points on regular 1-D ladders
  // per axis, so adjacent indices realize it.
  double best = diameter_;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const double d = distance(static_cast<int>(i), static_cast<int>(i + 1));
    if (d > 0.0) best = std::min(best, d);
  }
  min_positive_distance_ = best;
}

MetricMeasureSpace MetricMeasureSpace::euclidean_grid(int dim, int n, double extent) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid dimension must be in {1,2,3}");
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points per side");
  if (!(extent > 0.0)) throw std::invalid_argument("extent must be positive");

  MetricMeasureSpace s;
  s.kind_ = SpaceKind::EuclideanGrid;
  s.dim_ = dim;
  s.extent_ = extent;
  s.kappa_ = 1.0;
  s.eta_ = static_cast<double>(dim);
  const double h = extent / n;
  s.cell_scale_ = h;
  const double w = std::pow(h, dim);
  const double vm = unit_ball_volume(dim);
  s.ahlfors_lower_ = vm;
  s.ahlfors_upper_ = vm;
  s.valid_radius_min_ = 4.0 * h * std::sqrt(static_cast<double>(dim));
  s.valid_radius_max_ = extent / 4.0;

  long total = 1;
  for (int d = 0; d < dim; ++d) total *= n;
  s.points_.reserve(total);
  s.weights_.assign(total, w);
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    std::array<double, 3> p{0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) {
      p[d] = (static_cast<double>(rest % n) + 0.5) * h;  // cell centers
      rest /= n;
    }
    s.points_.push_back(p);
  }
  std::ostringstream cfg;
  cfg.precision(17);
  cfg << "grid" << dim << "d:" << n;
  if (extent != 1.0) cfg << ",extent=" << extent;
  s.config_ = cfg.str();
  s.finalize();
  return s;
}

MetricMeasureSpace MetricMeasureSpace::snowflake_line(int n, double beta) {
  if (n < 2) throw std::invalid_argument("snowflake needs at least 2 points");
  if (!(beta > 1.0))
    throw std::invalid_argument("snowflake exponent must exceed 1 (use the grid builder otherwise)");

  MetricMeasureSpace s;
  s.kind_ = SpaceKind::SnowflakeLine;
  s.dim_ = 1;
  s.extent_ = 1.0;
  s.beta_ = beta;
  s.kappa_ = std::pow(2.0, beta - 1.0);  // sharp constant for |.|^beta
  s.eta_ = 1.0 / beta;
  const double h = 1.0 / n;
  s.cell_scale_ = h;
  s.ahlfors_lower_ = 2.0;
  s.ahlfors_upper_ = 2.0;
  s.valid_radius_min_ = std::pow(4.0 * h, beta);
  s.valid_radius_max_ = std::pow(0.25, beta);
  s.points_.reserve(n);
  s.weights_.assign(n, 1.0 / n);
  for (int i = 0; i < n; ++i) s.points_.push_back({(i + 0.5) * h, 0.0, 0.0});
  std::ostringstream cfg;
  cfg.precision(17);
  cfg << "snowflake:" << n << "," << beta;
  s.config_ = cfg.str();
  s.finalize();
  return s;
}

MetricMeasureSpace MetricMeasureSpace::cantor_dust(int level, double ratio) {
  if (level < 1) throw std::invalid_argument("cantor level must be >= 1");
  if (!(ratio > 0.0) || !(ratio < 0.5))
    throw std::invalid_argument("cantor ratio must lie in (0, 1/2)");

  MetricMeasureSpace s;
  s.kind_ = SpaceKind::CantorDust;
  s.dim_ = 1;
  s.extent_ = 1.0;
  s.kappa_ = 1.0;
  s.eta_ = std::log(2.0) / std::log(1.0 / ratio);
  const long count = 1L << level;
  const double cell = std::pow(ratio, level);
  s.cell_scale_ = cell;
  // a: every level-j cell containing x with width < r carries mass 2^-j >= r^eta / 2.
  // A: cell starts at level k+1 are >= ratio^k (1-ratio) apart, so a ball of
  // radius r in (ratio^{k+1}, ratio^k] meets at most 2/(1-ratio)+1 of them.
  s.ahlfors_lower_ = 0.5;
  s.ahlfors_upper_ = 1.0 + 2.0 / (1.0 - ratio);
  s.valid_radius_min_ = level >= 2 ? std::pow(ratio, level - 2) : ratio;
  s.valid_radius_max_ = 0.25;
  s.points_.reserve(count);
  s.weights_.assign(count, 1.0 / static_cast<double>(count));
  for (long mask = 0; mask < count; ++mask) {
    double x = 0.0;
    double scale = 1.0;
    for (int b = level - 1; b >= 0; --b) {
      if ((mask >> b) & 1) x += (1.0 - ratio) * scale;
      scale *= ratio;
    }
    s.points_.push_back({x, 0.0, 0.0});  // left endpoints of level cells
  }
  std::sort(s.points_.begin(), s.points_.end());
  std::ostringstream cfg;
  cfg.precision(17);
  cfg << "cantor:" << level << "," << ratio;
  s.config_ = cfg.str();
  s.finalize();
  return s;
}

MetricMeasureSpace MetricMeasureSpace::from_config(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("space config must look like kind:params, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  std::vector<std::string> args;
  {
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(tok);
  }
  auto num = [&](const std::string& t) {
    std::size_t pos = 0;
    double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("bad number '" + t + "' in space config");
    return v;
  };
  if (kind == "grid1d" || kind == "grid2d" || kind == "grid3d") {
    if (args.empty()) throw std::invalid_argument("grid config needs a point count");
    const int dim = kind[4] - '0';
    const int n = static_cast<int>(num(args[0]));
    double extent = 1.0;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i].rfind("extent=", 0) == 0)
        extent = num(args[i].substr(7));
      else
        throw std::invalid_argument("unknown grid option '" + args[i] + "'");
    }
    return euclidean_grid(dim, n, extent);
  }
  if (kind == "snowflake") {
    if (args.empty()) throw std::invalid_argument("snowflake config needs a point count");
    const int n = static_cast<int>(num(args[0]));
    const double beta = args.size() > 1 ? num(args[1]) : 2.0;
    return snowflake_line(n, beta);
  }
  if (kind == "cantor") {
    if (args.empty()) throw std::invalid_argument("cantor config needs a level");
    const int level = static_cast<int>(num(args[0]));
    const double ratio = args.size() > 1 ? num(args[1]) : 1.0 / 3.0;
    return cantor_dust(level, ratio);
  }
  throw std::invalid_argument("unknown space kind '" + kind + "'");
}

double MetricMeasureSpace::radius_plus_cell(double r) const {
  if (kind_ == SpaceKind::SnowflakeLine) {
    const double s = std::pow(r, 1.0 / beta_);
    return std::pow(s + cell_scale_, beta_);
  }
  const double slack =
      kind_ == SpaceKind::EuclideanGrid ? cell_scale_ * std::sqrt(static_cast<double>(dim_))
                                        : cell_scale_;
  return r + slack;
}

double MetricMeasureSpace::radius_minus_cell(double r) const {
  if (kind_ == SpaceKind::SnowflakeLine) {
    const double s = std::pow(r, 1.0 / beta_);
    return std::pow(std::max(s - cell_scale_, 0.0), beta_);
  }
  const double slack =
      kind_ == SpaceKind::EuclideanGrid ? cell_scale_ * std::sqrt(static_cast<double>(dim_))
                                        : cell_scale_;
  return std::max(r - slack, 0.0);
}

bool MetricMeasureSpace::is_interior(int i) const {
  for (int d = 0; d < dim_; ++d) {
    const double c = points_[i][d];
    if (c < extent_ / 4.0 || c > 3.0 * extent_ / 4.0) return false;
  }
  return true;
}

std::vector<int> MetricMeasureSpace::interior_points() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (is_interior(i)) out.push_back(i);
  return out;
}

BallStats MetricMeasureSpace::ball(int center, double r) const {
  if (center < 0 || center >= size()) throw std::invalid_argument("ball: bad center id");
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  BallStats st;
  st.center = center;
  st.radius = r;
  for (int j = 0; j < size(); ++j) {
    if (distance(center, j) < r) {
      st.measure += weights_[j];
      ++st.count;
    }
  }
  return st;
}

std::vector<double> default_fit_radii(const MetricMeasureSpace& space, int count) {
  std::vector<double> radii;
  const double lo = std::max(space.valid_radius_min(), space.min_positive_distance());
  const double hi = std::max(space.valid_radius_max(), lo * 1.0001);
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    radii.push_back(lo * std::pow(hi / lo, t));
  }
  return radii;
}

AhlforsFit ahlfors_estimate(const MetricMeasureSpace& space, int sample_centers,
                            const std::vector<double>& radii) {
  AhlforsFit fit;
  if (radii.size() < 3)
    throw std::invalid_argument("ahlfors_estimate: fewer than 3 usable radii");
  const auto interior = space.interior_points();
  if (interior.empty()) throw std::invalid_argument("ahlfors_estimate: no interior points");
  std::vector<int> centers;
  const int m = std::max(1, std::min<int>(sample_centers, static_cast<int>(interior.size())));
  for (int i = 0; i < m; ++i)
    centers.push_back(interior[i * interior.size() / m]);

  // Pooled least squares of log mu(B(x,r)) against log r.
  std::vector<double> lx, ly;
  for (int c : centers) {
    for (double r : radii) {
      const BallStats st = space.ball(c, r);
      if (st.measure <= 0.0) continue;
      lx.push_back(std::log(r));
      ly.push_back(std::log(st.measure));
    }
  }
  fit.samples = static_cast<int>(lx.size());
  if (fit.samples < 3) throw std::invalid_argument("ahlfors_estimate: fewer than 3 usable radii");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= lx.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    fit.degenerate = true;
    return fit;
  }
  fit.eta_hat = sxy / sxx;
  fit.a_hat = std::numeric_limits<double>::infinity();
  fit.A_hat = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double ratio = std::exp(ly[i] - fit.eta_hat * lx[i]);
    fit.a_hat = std::min(fit.a_hat, ratio);
    fit.A_hat = std::max(fit.A_hat, ratio);
  }
  return fit;
}

}  // namespace hyperrho
