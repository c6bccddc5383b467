#pragma once

#include <optional>

#include "hyperrho/rational.hpp"

namespace hyperrho {

// Reciprocal-exponent conventions: r = 1/p1, s = 1/p2, t = 1/p3 and the plane
// Pi_sigma = {r + s - t = 2 sigma} with sigma = (2 eta - gamma)/(2 eta).

struct SigmaParams {
  double eta = 0.0;
  double gamma = 0.0;
  double sigma = 0.0;
};

// Requires 0 < gamma < 2 eta, which places sigma in (0, 1).
SigmaParams sigma_of(double eta, double gamma);

constexpr unsigned kRegionA = 1u;
constexpr unsigned kRegionB = 2u;
constexpr unsigned kRegionC = 4u;

struct RegionTags {
  unsigned tags = 0;  // kRegionA | kRegionB | kRegionC
  bool in_omega = false;
  bool boundary = false;  // within `margin` of some defining boundary
};

// Strict-inequality classification with a boundary-exclusion margin; points
// within margin of any boundary are flagged and excluded from decomposition
// assertions.
RegionTags region_classify(double r, double s, double sigma, double margin = 1e-12);

// Deterministic chain choice over a tag set: A, then B, then C.
char choose_chain(unsigned tags);

// t = r + s - 2 sigma; empty when t <= 0 (inadmissible triple).
std::optional<double> p3_from(double p1, double p2, double sigma);

struct DecompositionReport {
  long long lattice_points = 0;
  long long checked = 0;
  long long exceptions = 0;
  double area_omega = 0.0, area_a = 0.0, area_b = 0.0, area_c = 0.0;
  double bad_r = 0.0, bad_s = 0.0;  // first exception witness
};

// Lattice check of Omega = A u B u C on the margin-excluded (0,1)^2 lattice,
// plus Monte Carlo region areas.
DecompositionReport decomposition_check(double sigma, int grid_n, double margin);

double analytic_area_omega(double sigma);
double analytic_area_a(double sigma);
double analytic_area_b(double sigma);  // C has the same area by symmetry

// Exact rational chain exponents (reciprocal form). All throw when the point
// lies outside the required region.
struct ChainAExponents {
  Rational pi1_inv, pi2_inv;  // 1/pi_i = 1/p_i - sigma; 1/pi1 + 1/pi2 = 1/p3
};
ChainAExponents chain_a(const Rational& r, const Rational& s, const Rational& sigma);

struct ChainBCExponents {
  Rational q1_inv, q2_inv;  // 1/q1 = t + sigma, 1/q2 = s - sigma (B); mirrored for C
};
ChainBCExponents chain_b(const Rational& r, const Rational& s, const Rational& sigma);
ChainBCExponents chain_c(const Rational& r, const Rational& s, const Rational& sigma);

// Region membership in exact arithmetic (strict inequalities, no margin).
bool in_region_a(const Rational& r, const Rational& s, const Rational& sigma);
bool in_region_b(const Rational& r, const Rational& s, const Rational& sigma);
bool in_region_c(const Rational& r, const Rational& s, const Rational& sigma);
bool in_omega(const Rational& r, const Rational& s, const Rational& sigma);

}  // namespace hyperrho
