#include "doctest.h"

#include <stdexcept>

#include "hyperrho/verify.hpp"

using namespace hyperrho;

namespace {

// Small sizes keep unit tests fast; the acceptance binary runs full sizes.
TrialConfig small_config() {
  TrialConfig cfg;
  cfg.seed = 7;
  cfg.spaces = {"grid1d:96", "snowflake:96,2", "cantor:6"};
  cfg.sandwich_trials = 300;
  cfg.kernel_trials = 300;
  cfg.lemma21_centers = 2;
  cfg.lemma21_radii = 3;
  cfg.lemma11_grid_n = 64;
  cfg.lemma11_centers = 2;
  cfg.prop32b_grid_n = 32;
  cfg.prop32b_pairs = 3;
  cfg.refinement_ns = {32, 48};
  cfg.dilation_grid_n = 96;
  cfg.region_sigmas = {0.5};
  cfg.region_grid_n = 150;
  cfg.chain_samples = 40;
  cfg.search_grid_n = 24;
  cfg.search_iterations = 8;
  return cfg;
}

}  // namespace

TEST_CASE("unknown suite is rejected") {
  CHECK_THROWS_AS(run_suite("bogus", small_config()), std::invalid_argument);
}

TEST_CASE("sandwich suite passes on the small spaces") {
  const auto report = run_suite("sandwich", small_config());
  CHECK(report.records.size() == 3);
  CHECK(report.all_passed());
  for (const auto& r : report.records) CHECK(r.margin >= 0.0);
}

TEST_CASE("lemma21 suite passes on the small spaces") {
  const auto report = run_suite("lemma21", small_config());
  CHECK(report.all_passed());
}

TEST_CASE("lemma11 suite passes, including divergence evidence") {
  const auto report = run_suite("lemma11", small_config());
  CHECK(report.all_passed());
  CHECK(report.records.size() == 2);
}

TEST_CASE("prop32 suite passes on the small spaces") {
  const auto report = run_suite("prop32", small_config());
  CHECK(report.all_passed());
}

TEST_CASE("region suite passes") {
  const auto report = run_suite("region", small_config());
  CHECK(report.all_passed());
}

TEST_CASE("theorem12 suite passes at small sizes") {
  const auto report = run_suite("theorem12", small_config());
  CHECK(report.all_passed());
}

TEST_CASE("search suite is monotone and stabilizes") {
  const auto report = run_suite("search", small_config());
  CHECK(report.all_passed());
  REQUIRE(report.records.size() == 1);
  const auto& hist = report.records[0].details.at("history");
  REQUIRE(hist.size() >= 2);
  for (std::size_t i = 1; i < hist.size(); ++i)
    CHECK(hist[i].get<double>() >= hist[i - 1].get<double>() - 1e-9);
}

TEST_CASE("reports are byte-identical for a fixed seed") {
  const auto cfg = small_config();
  const auto a = run_suite("region", cfg);
  const auto b = run_suite("region", cfg);
  CHECK(a.to_json().dump(2) == b.to_json().dump(2));
  CHECK(a.margins_csv() == b.margins_csv());
}

TEST_CASE("report serialization carries the expected fields") {
  const auto report = run_suite("region", small_config());
  const auto j = report.to_json();
  CHECK(j.at("suite") == "region");
  CHECK(j.at("seed") == 7);
  CHECK(j.contains("config"));
  CHECK(j.at("summary").at("all_passed") == true);
  for (const auto& c : j.at("checks")) {
    CHECK(c.contains("name"));
    CHECK(c.contains("statement"));
    CHECK(c.contains("margin"));
    CHECK_FALSE(c.contains("runtime_seconds"));  // determinism contract
  }
  CHECK(report.margins_csv().rfind("name,statement,passed,asserted,margin,witness",
                                   0) == 0);
  CHECK(report.summary_text().find("all checks passed") != std::string::npos);
}

TEST_CASE("trial config round-trips through JSON") {
  const auto cfg = small_config();
  const auto echoed = TrialConfig::from_json(cfg.echo());
  CHECK(echoed.echo() == cfg.echo());

  // partial override keeps the remaining defaults
  const auto partial = TrialConfig::from_json({{"seed", 11}, {"chain_samples", 5}});
  CHECK(partial.seed == 11);
  CHECK(partial.chain_samples == 5);
  CHECK(partial.region_grid_n == TrialConfig::defaults().region_grid_n);
  CHECK(partial.tol.rel_eq == doctest::Approx(1e-12));
}

TEST_CASE("dilation check distinguishes perturbed exponents with signed shifts") {
  const auto rec = check_theorem12_dilation(1.0, 4.0 / 3.0, 4.0 / 3.0, 2.0, 96, 0.05);
  CHECK(rec.passed);
  CHECK(rec.details.at("shift_perturb_minus").get<double>() > 0.0);
  CHECK(rec.details.at("shift_perturb_plus").get<double>() < 0.0);
}
