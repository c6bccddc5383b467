#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyperrho/exponents.hpp"
#include "hyperrho/grid_function.hpp"
#include "hyperrho/kernels.hpp"
#include "hyperrho/space.hpp"

namespace hyperrho {

struct Tolerances {
  double rel_eq = 1e-12;          // pointwise algebraic equalities
  double pointwise = 1e-10;       // pointwise operator inequalities
  double fit = 0.05;              // Ahlfors exponent fit
  double ratio_stability = 0.15;  // refinement drift of norm ratios
  double scaling = 0.05;          // dilation slope
};

struct TrialConfig {
  std::uint64_t seed = 7;
  std::vector<std::string> spaces = {"grid1d:512", "grid2d:64", "snowflake:512,2",
                                     "cantor:9"};
  int sandwich_trials = 2000;
  int kernel_trials = 2000;  // Prop 3.2(a)
  int lemma21_centers = 3;
  int lemma21_radii = 4;
  int lemma11_grid_n = 128;
  int lemma11_centers = 3;
  int prop32b_grid_n = 64;
  int prop32b_pairs = 5;
  std::vector<int> refinement_ns = {48, 64, 96};
  int dilation_grid_n = 128;
  std::vector<double> region_sigmas = {0.25, 0.5, 0.75};
  int region_grid_n = 400;
  int chain_samples = 200;
  int search_grid_n = 48;
  int search_iterations = 20;
  Tolerances tol;

  static TrialConfig defaults() { return TrialConfig{}; }
  static TrialConfig from_json(const nlohmann::json& j);
  nlohmann::json echo() const;
};

struct CheckRecord {
  std::string name;
  std::string statement;  // which claim this exercises
  bool passed = false;
  bool asserted = true;  // reported-only records do not gate the exit status
  double margin = 0.0;   // worst relative slack observed (negative = violation)
  std::string witness;   // reproduction hint for the worst case
  nlohmann::json details = nlohmann::json::object();
  double runtime_seconds = 0.0;  // not serialized: report bodies are byte-stable
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::string suite;
  nlohmann::json config_echo;
  std::vector<CheckRecord> records;

  bool all_passed() const;
  nlohmann::json to_json() const;
  std::string margins_csv() const;
  std::string summary_text() const;
};

// --- individual checks -----------------------------------------------------

CheckRecord check_sandwich(const MetricMeasureSpace& space, int trials,
                           std::uint64_t seed, double rel_eq);

CheckRecord check_lemma21(const MetricMeasureSpace& space, int centers, int radii);

CheckRecord check_lemma11(const MetricMeasureSpace& space,
                          const std::vector<KernelProfile>& phis, int centers);

// Divergence evidence at the critical exponent alpha = 2 eta: J must grow by
// at least `min_growth` under grid refinement.
CheckRecord check_lemma11_divergence(int n_coarse, int n_fine, double min_growth);

CheckRecord check_prop32a(const MetricMeasureSpace& space, double gamma, int trials,
                          std::uint64_t seed, double rel_eq);

CheckRecord check_prop32b(const MetricMeasureSpace& space, double gamma, int pairs,
                          std::uint64_t seed, double tol);

CheckRecord check_region_decomposition(double sigma, int grid_n, double margin,
                                       double area_tol);

CheckRecord check_chains(const Rational& sigma, int samples_per_region,
                         std::uint64_t seed);

CheckRecord check_hls_linear(double alpha, double p, const std::vector<int>& ns,
                             std::uint64_t seed, double drift_tol);

CheckRecord check_theorem12_stability(double gamma, double p1, double p2, double p3,
                                      const std::vector<int>& ns, std::uint64_t seed,
                                      double drift_tol);

CheckRecord check_theorem12_dilation(double gamma, double p1, double p2, double p3,
                                     int grid_n, double scaling_tol);

CheckRecord check_evaluator_equivalence(int grid_n, int cases, std::uint64_t seed,
                                        double rel_eq);

struct SearchResult {
  GridFunction f, g;
  double best_ratio = 0.0;
  std::vector<double> history;  // best ratio after each iteration
};

// Alternating nonnegative-kernel power iteration for near-extremal inputs to
// the norm inequality; steps are accepted only when the ratio does not drop.
SearchResult adversarial_ratio_search(const MetricMeasureSpace& space, double gamma,
                                      double p1, double p2, double p3, int iterations,
                                      std::uint64_t seed);

CheckRecord check_search(const MetricMeasureSpace& space, double gamma, double p1,
                         double p2, double p3, int iterations, std::uint64_t seed);

// --- suites ----------------------------------------------------------------

// suite: all | sandwich | lemma11 | lemma21 | prop32 | region | theorem12 | search
VerificationReport run_suite(const std::string& suite, const TrialConfig& config);

// Writes report.json and margins.csv under out_dir (created if absent).
void write_report(const VerificationReport& report, const std::string& out_dir);

}  // namespace hyperrho
