#include "hyperrho.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "hyperrho/grid_function.hpp"
#include "hyperrho/hypermetric.hpp"
#include "hyperrho/operators.hpp"
#include "hyperrho/rng.hpp"
#include "hyperrho/space.hpp"
#include "hyperrho/verify.hpp"

struct hr_space {
  hyperrho::MetricMeasureSpace impl;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hr_status fail(hr_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
hr_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(HR_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(HR_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(HR_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(HR_ERR_RUNTIME, "unknown error");
  }
}

hr_status require(bool cond, const char* message) {
  return cond ? HR_OK : fail(HR_ERR_INVALID_ARGUMENT, message);
}

std::string method_name(hyperrho::RhoMethod m) {
  switch (m) {
    case hyperrho::RhoMethod::ExactEuclidean: return "exact";
    default: return "discrete";
  }
}

std::string summary_from_json(const nlohmann::json& report, bool* all_passed) {
  std::ostringstream os;
  bool ok = true;
  for (const auto& c : report.at("checks")) {
    const bool passed = c.at("passed").get<bool>();
    const bool asserted = c.at("asserted").get<bool>();
    if (asserted && !passed) ok = false;
    os << (passed ? "PASS" : (asserted ? "FAIL" : "info")) << "  "
       << c.at("name").get<std::string>() << "  margin="
       << c.at("margin").get<double>();
    const std::string witness = c.value("witness", std::string());
    if (!passed && !witness.empty()) os << "  witness: " << witness;
    os << "\n";
  }
  os << (ok ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
  if (all_passed) *all_passed = ok;
  return os.str();
}

}  // namespace

extern "C" {

const char* hr_version(void) { return "1.0.0"; }

const char* hr_last_error(void) { return g_last_error.c_str(); }

void hr_string_free(char* s) { std::free(s); }

hr_status hr_space_create(const char* config, hr_space** out) {
  if (hr_status st = require(config && out, "null argument"); st != HR_OK) return st;
  return guarded([&] {
    auto* handle = new hr_space{hyperrho::MetricMeasureSpace::from_config(config)};
    *out = handle;
    return HR_OK;
  });
}

void hr_space_destroy(hr_space* space) { delete space; }

hr_status hr_space_describe_json(const hr_space* space, int fit_radii,
                                 char** out_json) {
  if (hr_status st = require(space && out_json, "null argument"); st != HR_OK)
    return st;
  return guarded([&] {
    const auto& s = space->impl;
    const auto radii =
        hyperrho::default_fit_radii(s, fit_radii > 0 ? fit_radii : 8);
    const auto fit = hyperrho::ahlfors_estimate(s, 5, radii);
    const char* kind = "grid";
    if (s.kind() == hyperrho::SpaceKind::SnowflakeLine) kind = "snowflake";
    if (s.kind() == hyperrho::SpaceKind::CantorDust) kind = "cantor";
    const nlohmann::json j{
        {"config", s.config_string()},
        {"kind", kind},
        {"size", s.size()},
        {"dim", s.dim()},
        {"kappa", s.kappa()},
        {"eta", s.eta()},
        {"ahlfors_lower", s.ahlfors_lower()},
        {"ahlfors_upper", s.ahlfors_upper()},
        {"total_measure", s.total_measure()},
        {"diameter", s.diameter()},
        {"cell_scale", s.cell_scale()},
        {"valid_radius_min", s.valid_radius_min()},
        {"valid_radius_max", s.valid_radius_max()},
        {"ahlfors_fit",
         {{"eta_hat", fit.eta_hat},
          {"a_hat", fit.a_hat},
          {"A_hat", fit.A_hat},
          {"samples", fit.samples},
          {"degenerate", fit.degenerate}}}};
    *out_json = dup_string(j.dump(2) + "\n");
    return HR_OK;
  });
}

hr_status hr_rho_table_csv(const hr_space* space, int triples, uint64_t seed,
                           char** out_csv) {
  if (hr_status st = require(space && out_csv, "null argument"); st != HR_OK)
    return st;
  if (hr_status st = require(triples > 0, "triples must be positive"); st != HR_OK)
    return st;
  return guarded([&] {
    const auto& s = space->impl;
    hyperrho::Rng rng(hyperrho::mix_seed(seed, 0x7a0));
    std::ostringstream os;
    os.precision(17);
    os << "x,y,z,x0,x1,x2,y0,y1,y2,z0,z1,z2,rho,witness0,witness1,witness2,L,"
          "method\n";
    for (int t = 0; t < triples; ++t) {
      const int x = rng.index(s.size());
      const int y = rng.index(s.size());
      const int z = rng.index(s.size());
      const hyperrho::RhoResult r = hyperrho::rho(s, x, y, z);
      os << x << "," << y << "," << z;
      for (int id : {x, y, z})
        for (int d = 0; d < 3; ++d) os << "," << s.point(id)[d];
      os << "," << r.value;
      for (int d = 0; d < 3; ++d) os << "," << r.witness_point[d];
      os << "," << r.max_pairwise << "," << method_name(r.method) << "\n";
    }
    *out_csv = dup_string(os.str());
    return HR_OK;
  });
}

hr_status hr_apply_csv(const hr_space* space, const char* mode, double exponent,
                       const char* f_spec, const char* g_spec, char** out_csv) {
  if (hr_status st = require(space && mode && f_spec && out_csv, "null argument");
      st != HR_OK)
    return st;
  return guarded([&] {
    const auto& s = space->impl;
    const hyperrho::GridFunction f = hyperrho::generate(s, f_spec);
    hyperrho::GridFunction result;
    if (std::strcmp(mode, "tgamma") == 0) {
      if (!g_spec) throw std::invalid_argument("tgamma mode needs a g spec");
      const hyperrho::GridFunction g = hyperrho::generate(s, g_spec);
      result = hyperrho::t_gamma_apply_fast(s, exponent, f, g);
    } else if (std::strcmp(mode, "riesz") == 0) {
      result = hyperrho::riesz_apply(s, exponent, f);
    } else {
      throw std::invalid_argument(std::string("unknown apply mode '") + mode +
                                  "' (expected tgamma or riesz)");
    }
    std::ostringstream os;
    os.precision(17);
    os << "index,x0,x1,x2,value\n";
    for (int i = 0; i < s.size(); ++i) {
      os << i;
      for (int d = 0; d < 3; ++d) os << "," << s.point(i)[d];
      os << "," << result.values[i] << "\n";
    }
    *out_csv = dup_string(os.str());
    return HR_OK;
  });
}

hr_status hr_region_csv(double sigma, int grid_n, char** out_csv,
                        char** out_summary_json) {
  if (hr_status st = require(out_csv != nullptr, "null argument"); st != HR_OK)
    return st;
  if (hr_status st = require(sigma > 0.0 && sigma < 1.0, "sigma must be in (0,1)");
      st != HR_OK)
    return st;
  return guarded([&] {
    if (grid_n < 100)
      throw std::invalid_argument("region lattice needs grid_n >= 100");
    std::ostringstream os;
    os.precision(17);
    os << "r,s,in_omega,in_a,in_b,in_c,chain\n";
    for (int i = 0; i < grid_n; ++i) {
      const double r = (i + 0.5) / grid_n;
      for (int j = 0; j < grid_n; ++j) {
        const double svar = (j + 0.5) / grid_n;
        const hyperrho::RegionTags tags = hyperrho::region_classify(r, svar, sigma);
        os << r << "," << svar << "," << (tags.in_omega ? 1 : 0) << ","
           << ((tags.tags & hyperrho::kRegionA) ? 1 : 0) << ","
           << ((tags.tags & hyperrho::kRegionB) ? 1 : 0) << ","
           << ((tags.tags & hyperrho::kRegionC) ? 1 : 0) << ","
           << hyperrho::choose_chain(tags.tags) << "\n";
      }
    }
    *out_csv = dup_string(os.str());
    if (out_summary_json) {
      const hyperrho::DecompositionReport rep =
          hyperrho::decomposition_check(sigma, grid_n, 1e-12);
      const nlohmann::json j{
          {"sigma", sigma},
          {"grid_n", grid_n},
          {"exceptions", rep.exceptions},
          {"checked", rep.checked},
          {"verdict", rep.exceptions == 0 ? "pass" : "fail"},
          {"areas",
           {{"omega", rep.area_omega},
            {"A", rep.area_a},
            {"B", rep.area_b},
            {"C", rep.area_c}}},
          {"analytic_areas",
           {{"omega", hyperrho::analytic_area_omega(sigma)},
            {"A", hyperrho::analytic_area_a(sigma)},
            {"B", hyperrho::analytic_area_b(sigma)},
            {"C", hyperrho::analytic_area_b(sigma)}}}};
      *out_summary_json = dup_string(j.dump(2) + "\n");
    }
    return HR_OK;
  });
}

hr_status hr_verify_run(const char* suite, const char* config_json,
                        const char* out_dir, char** out_report_json,
                        char** out_summary, int* all_passed) {
  if (hr_status st = require(suite != nullptr, "null suite"); st != HR_OK) return st;
  return guarded([&] {
    hyperrho::TrialConfig cfg = hyperrho::TrialConfig::defaults();
    if (config_json && *config_json)
      cfg = hyperrho::TrialConfig::from_json(nlohmann::json::parse(config_json));
    const hyperrho::VerificationReport report = hyperrho::run_suite(suite, cfg);
    if (out_dir && *out_dir) hyperrho::write_report(report, out_dir);
    if (out_report_json)
      *out_report_json = dup_string(report.to_json().dump(2) + "\n");
    if (out_summary) *out_summary = dup_string(report.summary_text());
    if (all_passed) *all_passed = report.all_passed() ? 1 : 0;
    return HR_OK;
  });
}

hr_status hr_report_summary(const char* report_json, char** out_summary,
                            int* all_passed) {
  if (hr_status st = require(report_json && out_summary, "null argument");
      st != HR_OK)
    return st;
  return guarded([&] {
    const nlohmann::json j = nlohmann::json::parse(report_json);
    bool ok = true;
    *out_summary = dup_string(summary_from_json(j, &ok));
    if (all_passed) *all_passed = ok ? 1 : 0;
    return HR_OK;
  });
}

}  // extern "C"
