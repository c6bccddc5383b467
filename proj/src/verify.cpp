#include "hyperrho/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hyperrho/hypermetric.hpp"
#include "hyperrho/operators.hpp"
#include "hyperrho/rng.hpp"

namespace hyperrho {

namespace {

using clock_type = std::chrono::steady_clock;

class Stopwatch {
public:
  Stopwatch() : start_(clock_type::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(clock_type::now() - start_).count();
  }

private:
  clock_type::time_point start_;
};

// Tracks the worst (smallest) relative slack and its witness.
class WorstMargin {
public:
  void update(double slack, const std::string& witness) {
    if (slack < value_) {
      value_ = slack;
      witness_ = witness;
    }
  }
  double value() const { return std::isfinite(value_) ? value_ : 0.0; }
  const std::string& witness() const { return witness_; }
  bool seen() const { return std::isfinite(value_); }

private:
  double value_ = std::numeric_limits<double>::infinity();
  std::string witness_;
};

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= x.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

std::vector<int> strided_interior(const MetricMeasureSpace& space, int count) {
  const auto interior = space.interior_points();
  if (interior.empty()) throw std::logic_error("space has no interior points");
  std::vector<int> out;
  const int m = std::max(1, std::min<int>(count, static_cast<int>(interior.size())));
  for (int i = 0; i < m; ++i) out.push_back(interior[i * interior.size() / m]);
  return out;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out.push_back(lo * std::pow(hi / lo, t));
  }
  return out;
}

// Deterministic nonnegative test pair: spans flat, singular (single-cell),
// rough and smooth regimes.
std::pair<GridFunction, GridFunction> seeded_pair(const MetricMeasureSpace& space,
                                                  std::uint64_t seed, int index) {
  Rng rng(mix_seed(seed, 1000 + index));
  auto pick = [&](int which) -> GridFunction {
    switch (which % 5) {
      case 0: return random_function(space, rng.next());
      case 1: return gaussian_bump(space, rng.uniform(0.3, 0.7), rng.uniform(0.05, 0.2));
      case 2: {
        const double a = rng.uniform(0.1, 0.5);
        return indicator_function(space, a, a + rng.uniform(0.05, 0.4));
      }
      case 3: return cosine_mix(space, rng.next());
      default: return constant_function(space, rng.uniform(0.5, 2.0));
    }
  };
  return {pick(index), pick(index + 2)};
}

// Analytic family reusable across grid resolutions (refinement checks).
std::vector<std::string> analytic_family_specs(std::uint64_t seed) {
  std::ostringstream c1, c2;
  c1 << "cosmix:" << (mix_seed(seed, 21) % 100000);
  c2 << "cosmix:" << (mix_seed(seed, 22) % 100000);
  return {"constant:1",    "gaussian:0.5,0.1",   "gaussian:0.3,0.07",
          "gaussian:0.7,0.15", "indicator:0.3,0.6", c1.str(), c2.str()};
}

GridFunction pointwise_product(const GridFunction& a, const GridFunction& b) {
  GridFunction out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
  out.nonneg = a.nonneg && b.nonneg;
  return out;
}

}  // namespace

// --- TrialConfig -----------------------------------------------------------

TrialConfig TrialConfig::from_json(const nlohmann::json& j) {
  TrialConfig c;
  auto get = [&](const char* key, auto& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
  };
  get("seed", c.seed);
  get("spaces", c.spaces);
  get("sandwich_trials", c.sandwich_trials);
  get("kernel_trials", c.kernel_trials);
  get("lemma21_centers", c.lemma21_centers);
  get("lemma21_radii", c.lemma21_radii);
  get("lemma11_grid_n", c.lemma11_grid_n);
  get("lemma11_centers", c.lemma11_centers);
  get("prop32b_grid_n", c.prop32b_grid_n);
  get("prop32b_pairs", c.prop32b_pairs);
  get("refinement_ns", c.refinement_ns);
  get("dilation_grid_n", c.dilation_grid_n);
  get("region_sigmas", c.region_sigmas);
  get("region_grid_n", c.region_grid_n);
  get("chain_samples", c.chain_samples);
  get("search_grid_n", c.search_grid_n);
  get("search_iterations", c.search_iterations);
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    auto gt = [&](const char* key, double& slot) {
      if (t.contains(key)) slot = t.at(key).get<double>();
    };
    gt("rel_eq", c.tol.rel_eq);
    gt("pointwise", c.tol.pointwise);
    gt("fit", c.tol.fit);
    gt("ratio_stability", c.tol.ratio_stability);
    gt("scaling", c.tol.scaling);
  }
  return c;
}

nlohmann::json TrialConfig::echo() const {
  return nlohmann::json{
      {"seed", seed},
      {"spaces", spaces},
      {"sandwich_trials", sandwich_trials},
      {"kernel_trials", kernel_trials},
      {"lemma21_centers", lemma21_centers},
      {"lemma21_radii", lemma21_radii},
      {"lemma11_grid_n", lemma11_grid_n},
      {"lemma11_centers", lemma11_centers},
      {"prop32b_grid_n", prop32b_grid_n},
      {"prop32b_pairs", prop32b_pairs},
      {"refinement_ns", refinement_ns},
      {"dilation_grid_n", dilation_grid_n},
      {"region_sigmas", region_sigmas},
      {"region_grid_n", region_grid_n},
      {"chain_samples", chain_samples},
      {"search_grid_n", search_grid_n},
      {"search_iterations", search_iterations},
      {"tolerances",
       {{"rel_eq", tol.rel_eq},
        {"pointwise", tol.pointwise},
        {"fit", tol.fit},
        {"ratio_stability", tol.ratio_stability},
        {"scaling", tol.scaling}}}};
}

// --- report ----------------------------------------------------------------

bool VerificationReport::all_passed() const {
  for (const auto& r : records)
    if (r.asserted && !r.passed) return false;
  return true;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  int passed = 0;
  for (const auto& r : records) {
    checks.push_back({{"name", r.name},
                      {"statement", r.statement},
                      {"passed", r.passed},
                      {"asserted", r.asserted},
                      {"margin", r.margin},
                      {"witness", r.witness},
                      {"details", r.details}});
    passed += r.passed;
  }
  return nlohmann::json{{"suite", suite},
                        {"seed", seed},
                        {"config", config_echo},
                        {"checks", checks},
                        {"summary",
                         {{"total", records.size()},
                          {"passed", passed},
                          {"all_passed", all_passed()}}}};
}

std::string VerificationReport::margins_csv() const {
  std::ostringstream os;
  os << "name,statement,passed,asserted,margin,witness\n";
  os.precision(17);
  for (const auto& r : records) {
    std::string w = r.witness;
    std::replace(w.begin(), w.end(), ',', ';');
    std::string st = r.statement;
    std::replace(st.begin(), st.end(), ',', ';');
    os << r.name << "," << st << "," << (r.passed ? 1 : 0) << ","
       << (r.asserted ? 1 : 0) << "," << r.margin << "," << w << "\n";
  }
  return os.str();
}

std::string VerificationReport::summary_text() const {
  std::ostringstream os;
  for (const auto& r : records) {
    os << (r.passed ? "PASS" : (r.asserted ? "FAIL" : "info")) << "  " << r.name
       << "  margin=" << r.margin << "  (" << r.runtime_seconds << " s)";
    if (!r.passed && !r.witness.empty()) os << "  witness: " << r.witness;
    os << "\n";
  }
  os << (all_passed() ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
  return os.str();
}

// --- checks ----------------------------------------------------------------

CheckRecord check_sandwich(const MetricMeasureSpace& space, int trials,
                           std::uint64_t seed, double rel_eq) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "sandwich[" + space.config_string() + "]";
  rec.statement = "L/(2 kappa) <= rho(x,y,z) <= L and d/(2 kappa) <= rho(x,y) <= d";
  Rng rng(mix_seed(seed, 11));
  WorstMargin worst;
  const double inv2k = 1.0 / (2.0 * space.kappa());
  bool ok = true;
  for (int t = 0; t < trials; ++t) {
    const int x = rng.index(space.size());
    const int y = rng.index(space.size());
    const int z = rng.index(space.size());
    const RhoResult r = rho(space, x, y, z);
    const double L = r.max_pairwise;
    if (L == 0.0) {
      if (r.value != 0.0) ok = false;
      continue;
    }
    const double lo = (r.value - L * inv2k) / L;
    const double hi = (L - r.value) / L;
    std::ostringstream w;
    w << "triple(" << x << "," << y << "," << z << ") trial " << t;
    worst.update(std::min(lo, hi), w.str());
    if (lo < -rel_eq || hi < -rel_eq) ok = false;

    // order-2 sandwich on the same stream
    const double d = space.distance(x, y);
    if (d > 0.0) {
      const double r2 = rho_pair(space, x, y);
      const double lo2 = (r2 - d * inv2k) / d;
      const double hi2 = (d - r2) / d;
      std::ostringstream w2;
      w2 << "pair(" << x << "," << y << ") trial " << t;
      worst.update(std::min(lo2, hi2), w2.str());
      if (lo2 < -rel_eq || hi2 < -rel_eq) ok = false;
    }
  }
  rec.passed = ok;
  rec.margin = worst.value();
  rec.witness = ok ? "" : worst.witness();
  rec.details = {{"trials", trials}, {"kappa", space.kappa()}};
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_lemma21(const MetricMeasureSpace& space, int centers, int radii) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "lemma21[" + space.config_string() + "]";
  rec.statement =
      "BxB in E(x,r) in B(2kr)xB(2kr); a^2 r^2eta <= mu2(E) <= (2k)^2eta A^2 r^2eta";
  const double eta2 = 2.0 * space.eta();
  const double tk2eta = std::pow(2.0 * space.kappa(), eta2);
  const double a2 = space.ahlfors_lower() * space.ahlfors_lower();
  const double A2 = space.ahlfors_upper() * space.ahlfors_upper();
  const auto rs = log_spaced(space.valid_radius_min(), space.valid_radius_max(), radii);
  WorstMargin worst;
  bool ok = true;
  int skipped = 0;
  for (int c : strided_interior(space, centers)) {
    SectionView view(space, c);
    for (double r : rs) {
      const InclusionReport inc = view.inclusions(r);
      if (!inc.left_ok || !inc.right_ok) {
        ok = false;
        std::ostringstream w;
        w << "inclusion violated at x=" << c << " r=" << r << " pair(" << inc.bad_y
          << "," << inc.bad_z << ")";
        worst.update(-1.0, w.str());
        continue;
      }
      const double mu2 = view.measure(r);
      const double r_lo = space.radius_minus_cell(r);
      const double upper = tk2eta * A2 * std::pow(space.radius_plus_cell(r), eta2);
      std::ostringstream w;
      w << "x=" << c << " r=" << r;
      if (r_lo <= 0.0) {
        ++skipped;  // below resolution: the lower bound degenerates
      } else {
        const double lower = a2 * std::pow(r_lo, eta2);
        worst.update((mu2 - lower) / mu2, w.str() + " (lower)");
        if (mu2 < lower) ok = false;
      }
      worst.update((upper - mu2) / mu2, w.str() + " (upper)");
      if (mu2 > upper) ok = false;
    }
  }
  rec.passed = ok;
  rec.margin = worst.value();
  rec.witness = ok ? "" : worst.witness();
  rec.details = {{"centers", centers}, {"radii", rs}, {"skipped_lower", skipped}};
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_lemma11(const MetricMeasureSpace& space,
                          const std::vector<KernelProfile>& phis, int centers) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "lemma11[" + space.config_string() + "]";
  rec.statement = "C1 * moment(phi) <= J(x) <= C2 * moment(phi)";
  const Lemma11Constants c = lemma11_constants(space);
  const double eta = space.eta();
  WorstMargin worst;
  bool ok = true;
  const double window_lo = space.valid_radius_min();
  const double window_hi = space.valid_radius_max();
  for (const auto& phi : phis) {
    const double s_full = phi_moment(phi, eta);
    if (!std::isfinite(s_full))
      throw std::invalid_argument("lemma11 bracket needs a finite moment: " +
                                  phi.describe());
    // Finite spaces cannot see all scales: the lower bracket uses the moment
    // truncated to the valid-scale window.
    const double s_window = phi_moment_window(phi, eta, window_lo, window_hi);
    for (int x : strided_interior(space, centers)) {
      const double j = j_integral(space, phi, x);
      const double lower = c.C1 * s_window;
      const double upper = c.C2 * s_full;
      std::ostringstream w;
      w << phi.describe() << " at x=" << x;
      worst.update((j - lower) / (j > 0 ? j : 1.0), w.str() + " (lower)");
      worst.update((upper - j) / (j > 0 ? j : 1.0), w.str() + " (upper)");
      if (j < lower || j > upper) ok = false;
    }
  }
  rec.passed = ok;
  rec.margin = worst.value();
  rec.witness = ok ? "" : worst.witness();
  rec.details = {{"C1", c.C1},
                 {"C2", c.C2},
                 {"lambda_lower", c.lambda_lower},
                 {"lambda_upper", c.lambda_upper},
                 {"window", {window_lo, window_hi}}};
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_lemma11_divergence(int n_coarse, int n_fine, double min_growth) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "lemma11_divergence";
  rec.statement = "J diverges at the critical power alpha = 2 eta under refinement";
  const auto coarse = MetricMeasureSpace::euclidean_grid(1, n_coarse);
  const auto fine = MetricMeasureSpace::euclidean_grid(1, n_fine);
  const KernelProfile phi = KernelProfile::power_cutoff(2.0 * coarse.eta());
  const double j_coarse = j_integral(coarse, phi, n_coarse / 2);
  const double j_fine = j_integral(fine, phi, n_fine / 2);
  const double growth = j_fine / j_coarse - 1.0;
  rec.passed = growth >= min_growth;
  rec.margin = growth - min_growth;
  rec.details = {{"J_coarse", j_coarse},
                 {"J_fine", j_fine},
                 {"growth", growth},
                 {"required", min_growth}};
  if (!rec.passed) {
    std::ostringstream w;
    w << "growth " << growth << " below " << min_growth;
    rec.witness = w.str();
  }
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_prop32a(const MetricMeasureSpace& space, double gamma, int trials,
                          std::uint64_t seed, double rel_eq) {
  Stopwatch sw;
  CheckRecord rec;
  std::ostringstream name;
  name << "prop32a[" << space.config_string() << ",gamma=" << gamma << "]";
  rec.name = name.str();
  rec.statement = "rho^-gamma <= (2 kappa)^gamma min of the three d^(-g/2) d^(-g/2) products";
  Rng rng(mix_seed(seed, 32));
  const double factor = std::pow(2.0 * space.kappa(), gamma);
  WorstMargin worst;
  bool ok = true;
  int done = 0;
  while (done < trials) {
    const int x = rng.index(space.size());
    const int y = rng.index(space.size());
    const int z = rng.index(space.size());
    if (x == y || x == z || y == z) continue;
    ++done;
    const double dxy = space.distance(x, y);
    const double dxz = space.distance(x, z);
    const double dyz = space.distance(y, z);
    const double g2 = -gamma / 2.0;
    const double bound =
        factor * std::min({std::pow(dxy, g2) * std::pow(dxz, g2),
                           std::pow(dxy, g2) * std::pow(dyz, g2),
                           std::pow(dxz, g2) * std::pow(dyz, g2)});
    const double lhs = std::pow(rho_value(space, x, y, z), -gamma);
    std::ostringstream w;
    w << "triple(" << x << "," << y << "," << z << ")";
    worst.update((bound - lhs) / bound, w.str());
    if (lhs > bound * (1.0 + rel_eq)) ok = false;
  }
  rec.passed = ok;
  rec.margin = worst.value();
  rec.witness = ok ? "" : worst.witness();
  rec.details = {{"gamma", gamma}, {"trials", trials}};
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_prop32b(const MetricMeasureSpace& space, double gamma, int pairs,
                          std::uint64_t seed, double tol) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "prop32b[" + space.config_string() + "]";
  rec.statement =
      "T^gamma(f,g) <= (2 kappa)^gamma {(If)(Ig), I(f Ig), I(g If)} pointwise";
  const double alpha = space.eta() - gamma / 2.0;
  const double factor = std::pow(2.0 * space.kappa(), gamma);
  WorstMargin worst;
  bool ok = true;
  for (int pi = 0; pi < pairs; ++pi) {
    const auto [f, g] = seeded_pair(space, seed, pi);
    const GridFunction If = riesz_apply(space, alpha, f);
    const GridFunction Ig = riesz_apply(space, alpha, g);
    const GridFunction IfIg = riesz_apply(space, alpha, pointwise_product(f, Ig));
    const GridFunction IgIf = riesz_apply(space, alpha, pointwise_product(g, If));

    struct Bound {
      PairExclusion excl;
      const char* label;
    };
    const Bound bounds[3] = {{PairExclusion::RieszProduct, "If*Ig"},
                             {PairExclusion::RieszOfFIg, "I(f Ig)"},
                             {PairExclusion::RieszOfGIf, "I(g If)"}};
    for (const Bound& b : bounds) {
      const GridFunction lhs = t_gamma_apply(space, gamma, f, g, b.excl);
      for (int x = 0; x < space.size(); ++x) {
        double rhs = factor;
        switch (b.excl) {
          case PairExclusion::RieszProduct: rhs *= If.values[x] * Ig.values[x]; break;
          case PairExclusion::RieszOfFIg: rhs *= IfIg.values[x]; break;
          default: rhs *= IgIf.values[x]; break;
        }
        const double scale = std::max(rhs, 1e-300);
        std::ostringstream w;
        w << "pair " << pi << " bound " << b.label << " x=" << x;
        worst.update((rhs - lhs.values[x]) / scale, w.str());
        if (lhs.values[x] > rhs + tol * scale) ok = false;
      }
    }
  }
  rec.passed = ok;
  rec.margin = worst.value();
  rec.witness = ok ? "" : worst.witness();
  rec.details = {{"gamma", gamma}, {"pairs", pairs}};
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_region_decomposition(double sigma, int grid_n, double margin,
                                       double area_tol) {
  Stopwatch sw;
  CheckRecord rec;
  std::ostringstream name;
  name << "region_decomposition[sigma=" << sigma << "]";
  rec.name = name.str();
  rec.statement = "Omega = A u B u C with zero exceptions; lattice areas match";
  const DecompositionReport rep = decomposition_check(sigma, grid_n, margin);
  const double errs[4] = {std::fabs(rep.area_omega - analytic_area_omega(sigma)),
                          std::fabs(rep.area_a - analytic_area_a(sigma)),
                          std::fabs(rep.area_b - analytic_area_b(sigma)),
                          std::fabs(rep.area_c - analytic_area_b(sigma))};
  const double max_err = *std::max_element(errs, errs + 4);
  rec.passed = rep.exceptions == 0 && max_err <= area_tol;
  rec.margin = std::min(rep.exceptions == 0 ? 1.0 : -1.0,
                        (area_tol - max_err) / area_tol);
  if (rep.exceptions > 0) {
    std::ostringstream w;
    w << "(r,s)=(" << rep.bad_r << "," << rep.bad_s << ")";
    rec.witness = w.str();
  } else if (max_err > area_tol) {
    rec.witness = "area mismatch";
  }
  rec.details = {{"sigma", sigma},
                 {"grid_n", grid_n},
                 {"exceptions", rep.exceptions},
                 {"checked", rep.checked},
                 {"areas",
                  {{"omega", rep.area_omega},
                   {"A", rep.area_a},
                   {"B", rep.area_b},
                   {"C", rep.area_c}}},
                 {"analytic",
                  {{"omega", analytic_area_omega(sigma)},
                   {"A", analytic_area_a(sigma)},
                   {"B", analytic_area_b(sigma)}}},
                 {"max_area_error", max_err}};
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_chains(const Rational& sigma, int samples_per_region,
                         std::uint64_t seed) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "chains_rational";
  rec.statement = "Hoelder/HLS chain identities hold exactly on A, B and C";
  Rng rng(mix_seed(seed, 33));
  bool ok = true;
  std::string witness;
  long long t_ge_one = 0;  // points where 1/p3 >= 1, reported not asserted

  auto draw = [&]() {
    const long long den = 7 + rng.index(390);
    const long long num = 1 + rng.index(static_cast<int>(den - 1));
    return Rational(num, den);
  };
  auto fail = [&](const std::string& msg) {
    if (ok) witness = msg;
    ok = false;
  };

  const Rational one(1, 1);
  for (int region = 0; region < 3; ++region) {
    int found = 0;
    long long attempts = 0;
    while (found < samples_per_region) {
      if (++attempts > 200000LL * samples_per_region) {
        fail("sampling starved for region " + std::to_string(region));
        break;
      }
      const Rational r = draw();
      const Rational s = draw();
      const Rational t = r + s - sigma - sigma;
      const bool inA = in_region_a(r, s, sigma);
      const bool inB = in_region_b(r, s, sigma);
      const bool inC = in_region_c(r, s, sigma);
      if ((region == 0 && !inA) || (region == 1 && !inB) || (region == 2 && !inC))
        continue;
      ++found;
      if (!in_omega(r, s, sigma)) fail("region point escaped Omega");
      if (t >= one) ++t_ge_one;
      if (region == 0) {
        const ChainAExponents ch = chain_a(r, s, sigma);
        if (!(ch.pi1_inv + ch.pi2_inv == t)) fail("chain A sum identity");
        if (!(ch.pi1_inv > Rational(0)) || !(ch.pi1_inv < r)) fail("chain A range pi1");
        if (!(ch.pi2_inv > Rational(0)) || !(ch.pi2_inv < s)) fail("chain A range pi2");
        // HLS pairings: 1/out = 1/in - sigma by construction
        if (!(r - sigma == ch.pi1_inv)) fail("chain A HLS pairing");
      } else if (region == 1) {
        const ChainBCExponents ch = chain_b(r, s, sigma);
        if (!(ch.q1_inv == t + sigma)) fail("chain B q1 identity");
        if (!(ch.q2_inv == s - sigma)) fail("chain B q2 identity");
        if (!(ch.q1_inv == r + ch.q2_inv)) fail("chain B Hoelder identity");
        if (!(ch.q1_inv > Rational(0)) || !(ch.q1_inv < one)) fail("chain B q1 range");
        if (!(ch.q2_inv > Rational(0)) || !(ch.q2_inv < one)) fail("chain B q2 range");
      } else {
        const ChainBCExponents ch = chain_c(r, s, sigma);
        const ChainBCExponents mirror = chain_b(s, r, sigma);
        if (!(ch.q1_inv == mirror.q1_inv) || !(ch.q2_inv == mirror.q2_inv))
          fail("chain C is not the mirror of chain B");
        if (!(ch.q1_inv > Rational(0)) || !(ch.q1_inv < one)) fail("chain C q1 range");
        if (!(ch.q2_inv > Rational(0)) || !(ch.q2_inv < one)) fail("chain C q2 range");
      }
    }
  }
  // Coverage: every Omega sample admits a chain.
  int covered = 0;
  while (covered < samples_per_region) {
    const Rational r = draw();
    const Rational s = draw();
    if (!in_omega(r, s, sigma)) continue;
    ++covered;
    unsigned tags = 0;
    if (in_region_a(r, s, sigma)) tags |= kRegionA;
    if (in_region_b(r, s, sigma)) tags |= kRegionB;
    if (in_region_c(r, s, sigma)) tags |= kRegionC;
    if (choose_chain(tags) == '-') fail("Omega point without an applicable chain");
  }
  rec.passed = ok;
  rec.margin = ok ? 1.0 : -1.0;
  rec.witness = witness;
  rec.details = {{"sigma", {sigma.num, sigma.den}},
                 {"samples_per_region", samples_per_region},
                 {"t_ge_one", t_ge_one}};
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_hls_linear(double alpha, double p, const std::vector<int>& ns,
                             std::uint64_t seed, double drift_tol) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "hls_linear";
  rec.statement = "||I_a f||_q / ||f||_p stays stable under refinement";
  const double eta = 1.0;
  const double qinv = 1.0 / p - alpha / eta;
  if (!(qinv > 0.0) || !(qinv < 1.0 / p))
    throw std::invalid_argument("hls exponents out of range");
  const double q = 1.0 / qinv;
  std::vector<double> ratios;
  for (int n : ns) {
    const auto space = MetricMeasureSpace::euclidean_grid(1, n);
    double best = 0.0;
    for (const auto& spec : analytic_family_specs(seed)) {
      const GridFunction f = generate(space, spec);
      const double denom = lp_norm(f, p);
      if (denom == 0.0) continue;
      best = std::max(best, lp_norm(riesz_apply(space, alpha, f), q) / denom);
    }
    ratios.push_back(best);
  }
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  const double drift = hi / lo - 1.0;
  rec.passed = drift <= drift_tol;
  rec.margin = drift_tol - drift;
  rec.details = {{"alpha", alpha}, {"p", p}, {"q", q}, {"ns", ns}, {"ratios", ratios},
                 {"drift", drift}};
  if (!rec.passed) rec.witness = "ratio drift " + std::to_string(drift);
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_theorem12_stability(double gamma, double p1, double p2, double p3,
                                      const std::vector<int>& ns, std::uint64_t seed,
                                      double drift_tol) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "theorem12_stability";
  rec.statement = "sup ||T(f,g)||_p3 / (||f||_p1 ||g||_p2) stable under refinement";
  const auto specs = analytic_family_specs(seed);
  // Deterministic pair list over the analytic family.
  const std::vector<std::pair<int, int>> idx = {{0, 1}, {1, 2}, {2, 3}, {4, 1},
                                                {5, 6}, {3, 5}, {0, 6}};
  std::vector<double> ratios;
  for (int n : ns) {
    const auto space = MetricMeasureSpace::euclidean_grid(1, n);
    double best = 0.0;
    for (auto [i, j] : idx) {
      const GridFunction f = generate(space, specs[i]);
      const GridFunction g = generate(space, specs[j]);
      const double denom = lp_norm(f, p1) * lp_norm(g, p2);
      if (denom == 0.0) continue;
      best = std::max(best,
                      lp_norm(t_gamma_apply_fast(space, gamma, f, g), p3) / denom);
    }
    ratios.push_back(best);
  }
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  const double drift = hi / lo - 1.0;
  rec.passed = drift <= drift_tol;
  rec.margin = drift_tol - drift;
  rec.details = {{"gamma", gamma},
                 {"exponents", {p1, p2, p3}},
                 {"ns", ns},
                 {"ratios", ratios},
                 {"drift", drift}};
  if (!rec.passed) rec.witness = "ratio drift " + std::to_string(drift);
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_theorem12_dilation(double gamma, double p1, double p2, double p3,
                                     int grid_n, double scaling_tol) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "theorem12_dilation";
  rec.statement =
      "log-ratio slope under bump dilation is 0 at admissible exponents and "
      "shifts by eta*delta under 1/p3 perturbation";
  const auto space = MetricMeasureSpace::euclidean_grid(1, grid_n);
  const double eta = space.eta();
  const double t3 = 1.0 / p3;
  const std::vector<double> lambdas = {1.0, 2.0, 4.0};

  std::vector<double> logl, logr, logr_minus, logr_plus;
  for (double lam : lambdas) {
    const GridFunction f = gaussian_bump(space, 0.5, 0.1, lam);
    const GridFunction g = gaussian_bump(space, 0.5, 0.12, lam);
    const GridFunction tfg = t_gamma_apply_fast(space, gamma, f, g);
    const double denom = lp_norm(f, p1) * lp_norm(g, p2);
    logl.push_back(std::log(lam));
    logr.push_back(std::log(lp_norm(tfg, p3) / denom));
    logr_minus.push_back(std::log(lp_norm(tfg, 1.0 / (t3 - 0.1)) / denom));
    logr_plus.push_back(std::log(lp_norm(tfg, 1.0 / (t3 + 0.1)) / denom));
  }
  const double slope = lsq_slope(logl, logr);
  const double slope_minus = lsq_slope(logl, logr_minus);  // 1/p3 -> 1/p3 - 0.1
  const double slope_plus = lsq_slope(logl, logr_plus);    // 1/p3 -> 1/p3 + 0.1
  const double shift_minus = slope_minus - slope;          // expected +0.1 eta
  const double shift_plus = slope_plus - slope;            // expected -0.1 eta

  const double m0 = scaling_tol - std::fabs(slope);
  const double m1 = scaling_tol - std::fabs(shift_minus - 0.1 * eta);
  const double m2 = scaling_tol - std::fabs(shift_plus + 0.1 * eta);
  rec.passed = m0 >= 0.0 && m1 >= 0.0 && m2 >= 0.0 && shift_minus > 0.0 &&
               shift_plus < 0.0;
  rec.margin = std::min({m0, m1, m2});
  rec.details = {{"grid_n", grid_n},
                 {"slope", slope},
                 {"shift_perturb_minus", shift_minus},
                 {"shift_perturb_plus", shift_plus},
                 {"expected_shift", 0.1 * eta}};
  if (!rec.passed) {
    std::ostringstream w;
    w << "slope=" << slope << " shifts=(" << shift_minus << "," << shift_plus << ")";
    rec.witness = w.str();
  }
  rec.runtime_seconds = sw.seconds();
  return rec;
}

CheckRecord check_evaluator_equivalence(int grid_n, int cases, std::uint64_t seed,
                                        double rel_eq) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "evaluator_equivalence";
  rec.statement = "tiled evaluator matches the reference and is worker-invariant";
  const auto space = MetricMeasureSpace::euclidean_grid(1, grid_n);
  const double gamma = space.eta();
  WorstMargin worst;
  bool ok = true;
  for (int i = 0; i < cases; ++i) {
    const auto [f, g] = seeded_pair(space, seed, i);
    const GridFunction ref = t_gamma_apply(space, gamma, f, g);
    const GridFunction w1 = t_gamma_apply_fast(space, gamma, f, g, 1);
    const GridFunction w2 = t_gamma_apply_fast(space, gamma, f, g, 2);
    const GridFunction w4 = t_gamma_apply_fast(space, gamma, f, g, 4);
    for (int x = 0; x < space.size(); ++x) {
      const double scale = std::max(std::fabs(ref.values[x]), 1e-300);
      const double rel = std::fabs(w1.values[x] - ref.values[x]) / scale;
      std::ostringstream w;
      w << "case " << i << " x=" << x;
      worst.update(rel_eq - rel, w.str());
      if (rel > rel_eq) ok = false;
      if (w1.values[x] != w2.values[x] || w1.values[x] != w4.values[x]) {
        ok = false;
        worst.update(-1.0, w.str() + " (worker mismatch)");
      }
    }
  }
  rec.passed = ok;
  rec.margin = worst.value();
  rec.witness = ok ? "" : worst.witness();
  rec.details = {{"grid_n", grid_n}, {"cases", cases}};
  rec.runtime_seconds = sw.seconds();
  return rec;
}

SearchResult adversarial_ratio_search(const MetricMeasureSpace& space, double gamma,
                                      double p1, double p2, double p3, int iterations,
                                      std::uint64_t seed) {
  if (iterations < 1) throw std::invalid_argument("search needs iterations >= 1");
  const int n = space.size();
  SearchResult out;
  Rng rng(mix_seed(seed, 99));
  out.f = random_function(space, rng.next());
  out.g = random_function(space, rng.next());

  auto normalize = [&](GridFunction& h, double p) {
    const double norm = lp_norm(h, p);
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw std::runtime_error("ratio search: non-finite or zero iterate norm");
    for (auto& v : h.values) v /= norm;
  };
  normalize(out.f, p1);
  normalize(out.g, p2);

  auto ratio = [&](const GridFunction& f, const GridFunction& g) {
    const double r = lp_norm(t_gamma_apply_fast(space, gamma, f, g), p3) /
                     (lp_norm(f, p1) * lp_norm(g, p2));
    if (!std::isfinite(r)) throw std::runtime_error("ratio search: non-finite ratio");
    return r;
  };

  // Weighted adjoint against the first slot: v(y) = sum_{x,z} K h(x) g(z) wx wz.
  auto adjoint_f = [&](const GridFunction& h, const GridFunction& g) {
    std::vector<double> v(n, 0.0);
    for (int x = 0; x < n; ++x) {
      const double hx = h.values[x] * space.weight(x);
      if (hx == 0.0) continue;
      for (int y = 0; y < n; ++y) {
        double s = 0.0;
        for (int z = 0; z < n; ++z) {
          if (y == x && z == x) continue;
          s += std::pow(rho_value(space, x, y, z), -gamma) * g.values[z] *
               space.weight(z);
        }
        v[y] += hx * s;
      }
    }
    return GridFunction{&space, std::move(v), true};
  };

  double best = ratio(out.f, out.g);
  for (int it = 0; it < iterations; ++it) {
    for (int slot = 0; slot < 2; ++slot) {
      const GridFunction& fixed = slot == 0 ? out.g : out.f;
      GridFunction& target = slot == 0 ? out.f : out.g;
      const double p_in = slot == 0 ? p1 : p2;

      GridFunction tfg = t_gamma_apply_fast(space, gamma, out.f, out.g);
      GridFunction h = tfg;
      for (auto& v : h.values) v = std::pow(std::max(v, 0.0), p3 - 1.0);
      GridFunction cand = adjoint_f(h, fixed);
      for (auto& v : cand.values) v = std::pow(std::max(v, 0.0), 1.0 / (p_in - 1.0));
      normalize(cand, p_in);
      const GridFunction saved = target;
      target = cand;
      const double r = ratio(out.f, out.g);
      if (r >= best - 1e-9) {
        best = std::max(best, r);
      } else {
        target = saved;  // reject the step
      }
    }
    out.history.push_back(best);
  }
  out.best_ratio = best;
  return out;
}

CheckRecord check_search(const MetricMeasureSpace& space, double gamma, double p1,
                         double p2, double p3, int iterations, std::uint64_t seed) {
  Stopwatch sw;
  CheckRecord rec;
  rec.name = "adversarial_ratio_search";
  rec.statement = "best norm ratio is nondecreasing and stabilizes";
  const SearchResult res =
      adversarial_ratio_search(space, gamma, p1, p2, p3, iterations, seed);
  bool ok = true;
  for (std::size_t i = 1; i < res.history.size(); ++i)
    if (res.history[i] < res.history[i - 1] - 1e-9) ok = false;
  double spread = 0.0;
  if (res.history.size() >= 5) {
    const auto tail0 = res.history.end() - 5;
    const double lo = *std::min_element(tail0, res.history.end());
    const double hi = *std::max_element(tail0, res.history.end());
    spread = hi / lo - 1.0;
    if (spread > 0.01) ok = false;
  }
  rec.passed = ok;
  rec.margin = 0.01 - spread;
  rec.details = {{"best_ratio", res.best_ratio},
                 {"iterations", iterations},
                 {"history", res.history},
                 {"last5_spread", spread}};
  if (!ok) rec.witness = "spread " + std::to_string(spread);
  rec.runtime_seconds = sw.seconds();
  return rec;
}

// --- suites ----------------------------------------------------------------

VerificationReport run_suite(const std::string& suite, const TrialConfig& cfg) {
  static const std::vector<std::string> known = {
      "all", "sandwich", "lemma11", "lemma21", "prop32", "region", "theorem12",
      "search"};
  if (std::find(known.begin(), known.end(), suite) == known.end())
    throw std::invalid_argument("unknown suite '" + suite + "'");
  auto want = [&](const char* name) { return suite == "all" || suite == name; };

  VerificationReport report;
  report.seed = cfg.seed;
  report.suite = suite;
  report.config_echo = cfg.echo();

  std::vector<MetricMeasureSpace> spaces;
  if (want("sandwich") || want("lemma21") || want("prop32"))
    for (const auto& spec : cfg.spaces)
      spaces.push_back(MetricMeasureSpace::from_config(spec));

  if (want("sandwich")) {
    for (std::size_t i = 0; i < spaces.size(); ++i)
      report.records.push_back(check_sandwich(spaces[i], cfg.sandwich_trials,
                                              mix_seed(cfg.seed, i), cfg.tol.rel_eq));
  }
  if (want("lemma21")) {
    for (const auto& s : spaces)
      report.records.push_back(check_lemma21(s, cfg.lemma21_centers, cfg.lemma21_radii));
  }
  if (want("lemma11")) {
    const auto grid = MetricMeasureSpace::euclidean_grid(1, cfg.lemma11_grid_n);
    const double eta = grid.eta();
    const std::vector<KernelProfile> phis = {
        KernelProfile::power_cutoff(0.5 * eta), KernelProfile::power_cutoff(eta),
        KernelProfile::power_cutoff(1.5 * eta), KernelProfile::tail(3.0 * eta),
        KernelProfile::indicator(1.0)};
    report.records.push_back(check_lemma11(grid, phis, cfg.lemma11_centers));
    report.records.push_back(
        check_lemma11_divergence(cfg.lemma11_grid_n, 4 * cfg.lemma11_grid_n, 0.2));
  }
  if (want("prop32")) {
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      const double eta = spaces[i].eta();
      for (double frac : {0.5, 1.0, 1.5})
        report.records.push_back(check_prop32a(spaces[i], frac * eta,
                                               cfg.kernel_trials,
                                               mix_seed(cfg.seed, 100 + i),
                                               cfg.tol.rel_eq));
    }
    const auto grid = MetricMeasureSpace::euclidean_grid(1, cfg.prop32b_grid_n);
    report.records.push_back(check_prop32b(grid, grid.eta(), cfg.prop32b_pairs,
                                           cfg.seed, cfg.tol.pointwise));
    report.records.push_back(check_evaluator_equivalence(cfg.prop32b_grid_n, 5,
                                                         cfg.seed, cfg.tol.rel_eq));
  }
  if (want("region")) {
    for (double sigma : cfg.region_sigmas)
      report.records.push_back(check_region_decomposition(
          sigma, cfg.region_grid_n, 1e-12, 2.0 / cfg.region_grid_n));
    report.records.push_back(
        check_chains(Rational(1, 2), cfg.chain_samples, cfg.seed));
  }
  if (want("theorem12")) {
    report.records.push_back(check_hls_linear(0.5, 4.0 / 3.0, cfg.refinement_ns,
                                              cfg.seed, cfg.tol.ratio_stability));
    report.records.push_back(
        check_theorem12_stability(1.0, 4.0 / 3.0, 4.0 / 3.0, 2.0, cfg.refinement_ns,
                                  cfg.seed, cfg.tol.ratio_stability));
    report.records.push_back(check_theorem12_dilation(
        1.0, 4.0 / 3.0, 4.0 / 3.0, 2.0, cfg.dilation_grid_n, cfg.tol.scaling));
  }
  if (want("search")) {
    const auto grid = MetricMeasureSpace::euclidean_grid(1, cfg.search_grid_n);
    report.records.push_back(check_search(grid, 1.0, 4.0 / 3.0, 4.0 / 3.0, 2.0,
                                          cfg.search_iterations, cfg.seed));
  }
  return report;
}

void write_report(const VerificationReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream os(std::filesystem::path(out_dir) / "report.json");
    os << report.to_json().dump(2) << "\n";
  }
  {
    std::ofstream os(std::filesystem::path(out_dir) / "margins.csv");
    os << report.margins_csv();
  }
}

}  // namespace hyperrho
