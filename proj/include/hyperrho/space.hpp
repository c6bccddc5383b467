#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace hyperrho {

enum class SpaceKind { EuclideanGrid, SnowflakeLine, CantorDust };

struct BallStats {
  int center = -1;
  double radius = 0.0;
  double measure = 0.0;
  int count = 0;
};

// Finite discretization of an eta-Ahlfors regular quasi-metric measure space:
// a point set with a quasi-metric oracle, quadrature weights, and the
// geometric constants (kappa, eta, a, A). Immutable after construction; all
// read operations are safe under concurrent access.
//
// Stored Ahlfors constants per builder (documented interior-regime values,
// asserted with one-cell radius slack, see radius_plus_cell / radius_minus_cell):
//   euclidean_grid(m):  a = A = V_m (unit-ball volume: 2, pi, 4pi/3); eta = m
//   snowflake_line:     a = A = 2; eta = 1/beta; kappa = 2^(beta-1)
//   cantor_dust:        a = 1/2, A = 1 + 2/(1-ratio); eta = log2/log(1/ratio)
class MetricMeasureSpace {
public:
  static MetricMeasureSpace euclidean_grid(int dim, int n, double extent = 1.0);
  static MetricMeasureSpace snowflake_line(int n, double beta);
  static MetricMeasureSpace cantor_dust(int level, double ratio = 1.0 / 3.0);
  // Compact config mirror: "grid1d:256", "grid2d:64,extent=2", "snowflake:512,2",
  // "cantor:9,0.333333...".
  static MetricMeasureSpace from_config(const std::string& spec);

  SpaceKind kind() const { return kind_; }
  int size() const { return static_cast<int>(points_.size()); }
  int dim() const { return dim_; }
  const std::array<double, 3>& point(int i) const { return points_[i]; }
  double weight(int i) const { return weights_[i]; }
  double total_measure() const { return total_measure_; }
  double diameter() const { return diameter_; }
  double extent() const { return extent_; }

  double kappa() const { return kappa_; }
  double eta() const { return eta_; }
  double ahlfors_lower() const { return ahlfors_lower_; }
  double ahlfors_upper() const { return ahlfors_upper_; }
  double snowflake_beta() const { return beta_; }

  // Euclidean width of one quadrature cell.
  double cell_scale() const { return cell_scale_; }
  double min_positive_distance() const { return min_positive_distance_; }

  double distance(int i, int j) const {
    return distance_points(points_[i], points_[j]);
  }
  double distance_points(const std::array<double, 3>& p,
                         const std::array<double, 3>& q) const {
    switch (kind_) {
      case SpaceKind::SnowflakeLine:
        return std::pow(std::fabs(p[0] - q[0]), beta_);
      default: {
        double s = 0.0;
        for (int d = 0; d < dim_; ++d) {
          const double t = p[d] - q[d];
          s += t * t;
        }
        return std::sqrt(s);
      }
    }
  }

  // One-cell slack expressed in metric units at scale r. For the snowflake
  // the Euclidean cell width h maps to the d-scale through t -> t^beta.
  double radius_plus_cell(double r) const;
  double radius_minus_cell(double r) const;

  // Range of radii on which the discretization faithfully mimics Ahlfors
  // regularity with the stored constants (interior centers).
  double valid_radius_min() const { return valid_radius_min_; }
  double valid_radius_max() const { return valid_radius_max_; }

  bool is_interior(int i) const;
  std::vector<int> interior_points() const;

  // Strict-inequality ball membership; rejects r <= 0.
  BallStats ball(int center, double r) const;

  std::string config_string() const { return config_; }

private:
  MetricMeasureSpace() = default;
  void finalize();

  SpaceKind kind_ = SpaceKind::EuclideanGrid;
  int dim_ = 1;
  double extent_ = 1.0;
  double beta_ = 1.0;  // snowflake exponent
  double kappa_ = 1.0;
  double eta_ = 1.0;
  double ahlfors_lower_ = 0.0;
  double ahlfors_upper_ = 0.0;
  double cell_scale_ = 0.0;
  double valid_radius_min_ = 0.0;
  double valid_radius_max_ = 0.0;
  double total_measure_ = 0.0;
  double diameter_ = 0.0;
  double min_positive_distance_ = 0.0;
  std::vector<std::array<double, 3>> points_;
  std::vector<double> weights_;
  std::string config_;
};

struct AhlforsFit {
  double eta_hat = 0.0;
  double a_hat = 0.0;
  double A_hat = 0.0;
  int samples = 0;
  bool degenerate = false;
};

// Least-squares slope of log mu(B(x,r)) vs log r pooled over interior centers.
AhlforsFit ahlfors_estimate(const MetricMeasureSpace& space, int sample_centers,
                            const std::vector<double>& radii);

// Log-spaced radii inside the valid-scale window.
std::vector<double> default_fit_radii(const MetricMeasureSpace& space, int count);

}  // namespace hyperrho
