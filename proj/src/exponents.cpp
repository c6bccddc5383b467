#include "hyperrho/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperrho {

SigmaParams sigma_of(double eta, double gamma) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (!(gamma > 0.0) || !(gamma < 2.0 * eta))
    throw std::invalid_argument("gamma must lie in (0, 2 eta)");
  return SigmaParams{eta, gamma, (2.0 * eta - gamma) / (2.0 * eta)};
}

namespace {

// Signed slacks of the strict inequalities defining each region; a region
// holds when all its slacks are positive.
struct Slacks {
  double omega_min;  // min over: r, 1-r, s, 1-s, r+s-2sigma
  double a_min;      // min over: r-sigma, 1-r, s-sigma, 1-s
  double b_min;      // min over: s-sigma, r+s-2sigma, 1+sigma-(r+s), r, 1-r, 1-s
  double c_min;      // mirror of b
};

Slacks slacks_of(double r, double s, double sigma) {
  auto mn = [](std::initializer_list<double> xs) {
    double m = *xs.begin();
    for (double x : xs) m = std::min(m, x);
    return m;
  };
  Slacks out;
  out.omega_min = mn({r, 1.0 - r, s, 1.0 - s, r + s - 2.0 * sigma});
  out.a_min = mn({r - sigma, 1.0 - r, s - sigma, 1.0 - s});
  out.b_min = mn({s - sigma, r + s - 2.0 * sigma, 1.0 + sigma - (r + s), r,
                  1.0 - r, 1.0 - s});
  out.c_min = mn({r - sigma, r + s - 2.0 * sigma, 1.0 + sigma - (r + s), s,
                  1.0 - s, 1.0 - r});
  return out;
}

}  // namespace

RegionTags region_classify(double r, double s, double sigma, double margin) {
  if (margin < 0.0) throw std::invalid_argument("margin must be nonnegative");
  const Slacks sl = slacks_of(r, s, sigma);
  RegionTags out;
  if (sl.a_min > margin) out.tags |= kRegionA;
  if (sl.b_min > margin) out.tags |= kRegionB;
  if (sl.c_min > margin) out.tags |= kRegionC;
  out.in_omega = sl.omega_min > margin;
  // Boundary: some defining slack sits inside [-margin, margin].
  for (double v : {sl.omega_min, sl.a_min, sl.b_min, sl.c_min})
    if (std::fabs(v) <= margin) out.boundary = true;
  return out;
}

char choose_chain(unsigned tags) {
  if (tags & kRegionA) return 'A';
  if (tags & kRegionB) return 'B';
  if (tags & kRegionC) return 'C';
  return '-';
}

std::optional<double> p3_from(double p1, double p2, double sigma) {
  if (!(p1 > 1.0) || !(p2 > 1.0))
    throw std::invalid_argument("p1 and p2 must exceed 1");
  const double t = 1.0 / p1 + 1.0 / p2 - 2.0 * sigma;
  if (!(t > 0.0)) return std::nullopt;
  return 1.0 / t;
}

DecompositionReport decomposition_check(double sigma, int grid_n, double margin) {
  if (grid_n < 100) throw std::invalid_argument("decomposition lattice needs grid_n >= 100");
  DecompositionReport rep;
  rep.lattice_points = static_cast<long long>(grid_n) * grid_n;
  long long in_o = 0, in_a = 0, in_b = 0, in_c = 0;
  for (int i = 0; i < grid_n; ++i) {
    const double r = (i + 0.5) / grid_n;
    for (int j = 0; j < grid_n; ++j) {
      const double s = (j + 0.5) / grid_n;
      const RegionTags tags = region_classify(r, s, sigma, margin);
      in_o += tags.in_omega;
      in_a += (tags.tags & kRegionA) != 0;
      in_b += (tags.tags & kRegionB) != 0;
      in_c += (tags.tags & kRegionC) != 0;
      if (tags.boundary) continue;
      ++rep.checked;
      if (tags.in_omega != (tags.tags != 0)) {
        if (rep.exceptions == 0) {
          rep.bad_r = r;
          rep.bad_s = s;
        }
        ++rep.exceptions;
      }
    }
  }
  const double cell = 1.0 / (static_cast<double>(grid_n) * grid_n);
  rep.area_omega = in_o * cell;
  rep.area_a = in_a * cell;
  rep.area_b = in_b * cell;
  rep.area_c = in_c * cell;
  return rep;
}

double analytic_area_omega(double sigma) {
  // Half-plane cut r+s > 2 sigma of the unit square.
  if (sigma >= 0.5) return 2.0 * (1.0 - sigma) * (1.0 - sigma);
  return 1.0 - 2.0 * sigma * sigma;
}

double analytic_area_a(double sigma) { return (1.0 - sigma) * (1.0 - sigma); }

double analytic_area_b(double sigma) {
  if (sigma >= 0.5) return (1.0 - sigma) * (1.0 - sigma);
  return 0.5 - sigma * sigma;
}

namespace {
const Rational kZero{0, 1};
const Rational kOne{1, 1};
}  // namespace

bool in_region_a(const Rational& r, const Rational& s, const Rational& sigma) {
  return r > sigma && r < kOne && s > sigma && s < kOne;
}

bool in_region_b(const Rational& r, const Rational& s, const Rational& sigma) {
  const Rational rs = r + s;
  return r > kZero && r < kOne && s < kOne && s > sigma &&
         rs > sigma + sigma && rs < kOne + sigma;
}

bool in_region_c(const Rational& r, const Rational& s, const Rational& sigma) {
  return in_region_b(s, r, sigma);
}

bool in_omega(const Rational& r, const Rational& s, const Rational& sigma) {
  return r > kZero && r < kOne && s > kZero && s < kOne &&
         r + s > sigma + sigma;
}

ChainAExponents chain_a(const Rational& r, const Rational& s, const Rational& sigma) {
  if (!in_region_a(r, s, sigma))
    throw std::invalid_argument("chain A requires (r, s) in A_sigma");
  return ChainAExponents{r - sigma, s - sigma};
}

ChainBCExponents chain_b(const Rational& r, const Rational& s, const Rational& sigma) {
  if (!in_region_b(r, s, sigma))
    throw std::invalid_argument("chain B requires (r, s) in B_sigma");
  const Rational t = r + s - sigma - sigma;
  return ChainBCExponents{t + sigma, s - sigma};
}

ChainBCExponents chain_c(const Rational& r, const Rational& s, const Rational& sigma) {
  if (!in_region_c(r, s, sigma))
    throw std::invalid_argument("chain C requires (r, s) in C_sigma");
  const Rational t = r + s - sigma - sigma;
  return ChainBCExponents{t + sigma, r - sigma};
}

}  // namespace hyperrho
