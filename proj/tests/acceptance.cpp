// Acceptance gate: runs the end-to-end criteria at full stated sizes and
// prints exactly one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperrho.h"
#include "hyperrho/kernels.hpp"
#include "hyperrho/rng.hpp"
#include "hyperrho/space.hpp"
#include "hyperrho/verify.hpp"

using namespace hyperrho;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& label, bool passed, double seconds,
            double limit_seconds) {
  const bool ok = passed && (limit_seconds <= 0.0 || seconds <= limit_seconds);
  std::printf("%s  criterion %2d: %s (%.1f s%s)\n", ok ? "PASS" : "FAIL", criterion,
              label.c_str(), seconds,
              limit_seconds > 0.0 && seconds > limit_seconds ? ", over budget" : "");
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

template <typename Fn>
void timed(int criterion, const std::string& label, double limit_seconds, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  bool passed = false;
  try {
    passed = fn();
  } catch (const std::exception& e) {
    std::printf("      criterion %d threw: %s\n", criterion, e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(criterion, label, passed, seconds, limit_seconds);
}

const std::vector<std::string> kSpaces = {"grid1d:512", "grid2d:64",
                                          "snowflake:512,2", "cantor:9"};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

}  // namespace

int main() {
  const std::uint64_t seed = 7;
  const Tolerances tol;

  timed(1, "sandwich bounds, 10^4 triples per space", 30.0, [&] {
    bool ok = true;
    for (std::size_t i = 0; i < kSpaces.size(); ++i) {
      const auto s = MetricMeasureSpace::from_config(kSpaces[i]);
      const auto rec = check_sandwich(s, 10000, mix_seed(seed, i), tol.rel_eq);
      if (!rec.passed) std::printf("      %s\n", rec.name.c_str());
      ok = ok && rec.passed;
    }
    return ok;
  });

  timed(2, "section inclusions and measure bracket, 5 centers x 6 radii", 60.0, [&] {
    bool ok = true;
    for (const auto& cfg : kSpaces) {
      const auto s = MetricMeasureSpace::from_config(cfg);
      const auto rec = check_lemma21(s, 5, 6);
      if (!rec.passed)
        std::printf("      %s: %s\n", rec.name.c_str(), rec.witness.c_str());
      ok = ok && rec.passed;
    }
    return ok;
  });

  timed(3, "J(x) bracket for five kernel profiles plus divergence growth", 120.0,
        [&] {
          const auto grid = MetricMeasureSpace::euclidean_grid(1, 256);
          const double eta = grid.eta();
          const std::vector<KernelProfile> phis = {
              KernelProfile::power_cutoff(0.5 * eta),
              KernelProfile::power_cutoff(eta),
              KernelProfile::power_cutoff(1.5 * eta), KernelProfile::tail(3.0 * eta),
              KernelProfile::indicator(1.0)};
          const auto bracket = check_lemma11(grid, phis, 5);
          const auto growth = check_lemma11_divergence(128, 512, 0.2);
          if (!bracket.passed)
            std::printf("      bracket: %s\n", bracket.witness.c_str());
          if (!growth.passed)
            std::printf("      divergence: %s\n", growth.witness.c_str());
          return bracket.passed && growth.passed;
        });

  timed(4, "kernel bound, 10^4 distinct triples per space and order", 30.0, [&] {
    bool ok = true;
    for (std::size_t i = 0; i < kSpaces.size(); ++i) {
      const auto s = MetricMeasureSpace::from_config(kSpaces[i]);
      for (double frac : {0.5, 1.0, 1.5}) {
        const auto rec = check_prop32a(s, frac * s.eta(), 10000,
                                       mix_seed(seed, 40 + i), tol.rel_eq);
        if (!rec.passed) std::printf("      %s\n", rec.name.c_str());
        ok = ok && rec.passed;
      }
    }
    return ok;
  });

  timed(5, "three operator upper bounds, 20 pairs on grid1d:128", 120.0, [&] {
    const auto s = MetricMeasureSpace::euclidean_grid(1, 128);
    const auto rec = check_prop32b(s, s.eta(), 20, seed, tol.pointwise);
    if (!rec.passed) std::printf("      %s\n", rec.witness.c_str());
    return rec.passed;
  });

  timed(6, "region decomposition, 1000x1000 lattice, three sigmas", 30.0, [&] {
    bool ok = true;
    for (double sigma : {0.25, 0.5, 0.75}) {
      const auto rec = check_region_decomposition(sigma, 1000, 1e-12, 2e-3);
      if (!rec.passed)
        std::printf("      sigma=%g: %s\n", sigma, rec.witness.c_str());
      ok = ok && rec.passed;
    }
    return ok;
  });

  timed(7, "exact rational chains, 10^3 points per region", 10.0, [&] {
    const auto rec = check_chains(Rational(1, 2), 1000, seed);
    if (!rec.passed) std::printf("      %s\n", rec.witness.c_str());
    return rec.passed;
  });

  timed(8, "norm-ratio stability and dilation slopes", 300.0, [&] {
    const std::vector<int> ns = {64, 128, 256};
    const auto stability =
        check_theorem12_stability(1.0, 4.0 / 3.0, 4.0 / 3.0, 2.0, ns, seed,
                                  tol.ratio_stability);
    const auto dilation =
        check_theorem12_dilation(1.0, 4.0 / 3.0, 4.0 / 3.0, 2.0, 256, tol.scaling);
    if (!stability.passed)
      std::printf("      stability: %s\n", stability.details.dump().c_str());
    if (!dilation.passed)
      std::printf("      dilation: %s\n", dilation.details.dump().c_str());
    return stability.passed && dilation.passed;
  });

  timed(9, "tiled evaluator equivalence, 20 cases on grid1d:128", 120.0, [&] {
    const auto rec = check_evaluator_equivalence(128, 20, seed, tol.rel_eq);
    if (!rec.passed) std::printf("      %s\n", rec.witness.c_str());
    return rec.passed;
  });

  timed(10, "byte-identical verify --suite all --seed 7 reruns", 0.0, [&] {
    namespace fs = std::filesystem;
    const fs::path base =
        fs::temp_directory_path() / "hyperrho_acceptance_determinism";
    fs::remove_all(base);
    const fs::path d1 = base / "run1", d2 = base / "run2";
    for (const fs::path& d : {d1, d2}) {
      int ok = 0;
      const hr_status st = hr_verify_run("all", "{\"seed\": 7}", d.c_str(),
                                         nullptr, nullptr, &ok);
      if (st != HR_OK) {
        std::printf("      verify run failed: %s\n", hr_last_error());
        return false;
      }
      if (!ok) {
        std::printf("      verify suite reported failures (%s)\n",
                    d.string().c_str());
        return false;
      }
    }
    const bool same = slurp(d1 / "report.json") == slurp(d2 / "report.json") &&
                      slurp(d1 / "margins.csv") == slurp(d2 / "margins.csv") &&
                      !slurp(d1 / "report.json").empty();
    if (!same) std::printf("      report bodies differ between reruns\n");
    return same;
  });

  if (g_failures > 0) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all criteria passed\n");
  return 0;
}
