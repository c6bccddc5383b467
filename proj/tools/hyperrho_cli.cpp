// hyperrho command-line front end. Links only the C API of the shared
// library; all numerics live behind hyperrho.h.
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperrho.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct StringDeleter {
  void operator()(char* p) const { hr_string_free(p); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct SpaceDeleter {
  void operator()(hr_space* p) const { hr_space_destroy(p); }
};
using SpaceHandle = std::unique_ptr<hr_space, SpaceDeleter>;

[[noreturn]] void die(const std::string& message, int code) {
  std::cerr << "error: " << message << "\n";
  std::exit(code);
}

void check_api(hr_status st) {
  if (st == HR_OK) return;
  die(hr_last_error(), st == HR_ERR_INVALID_ARGUMENT ? kExitUsage : kExitCheckFailure);
}

SpaceHandle open_space(const std::string& config) {
  hr_space* raw = nullptr;
  check_api(hr_space_create(config.c_str(), &raw));
  return SpaceHandle(raw);
}

// Default output directory comes from HYPERRHO_OUT when --out is absent;
// empty means "write to standard output".
std::string resolve_out(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("HYPERRHO_OUT");
  return env ? std::string(env) : std::string();
}

void deliver(const std::string& out_dir, const std::string& filename,
             const char* body) {
  if (out_dir.empty()) {
    std::cout << body;
    return;
  }
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / filename;
  std::ofstream os(path);
  if (!os) die("cannot write " + path.string(), kExitCheckFailure);
  os << body;
  std::cout << "wrote " << path.string() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) die("cannot read " + path, kExitUsage);
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

// --seed on the command line overrides any seed in the config file.
std::string with_seed(const std::string& config_json, std::uint64_t seed) {
  nlohmann::json j = nlohmann::json::object();
  if (!config_json.empty()) {
    j = nlohmann::json::parse(config_json, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      die("config file is not a JSON object", kExitUsage);
  }
  j["seed"] = seed;
  return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypermetric rho and bilinear fractional integral toolkit"};
  app.set_version_flag("--version", hr_version());
  app.require_subcommand(1);

  // space ------------------------------------------------------------------
  auto* cmd_space = app.add_subcommand("space", "describe a space and its Ahlfors fit");
  std::string sp_config = "grid1d:256";
  std::string sp_out;
  int sp_fit_radii = 8;
  cmd_space->add_option("--space", sp_config, "space config, e.g. grid1d:256");
  cmd_space->add_option("--fit-radii", sp_fit_radii, "radii in the Ahlfors fit");
  cmd_space->add_option("--out", sp_out, "output directory (default: stdout)");

  // rho --------------------------------------------------------------------
  auto* cmd_rho = app.add_subcommand("rho", "emit a seeded triple table with rho values");
  std::string rho_config = "grid1d:256";
  std::string rho_out;
  int rho_triples = 100;
  std::uint64_t rho_seed = 7;
  cmd_rho->add_option("--space", rho_config, "space config");
  cmd_rho->add_option("--triples", rho_triples, "number of seeded triples")
      ->check(CLI::PositiveNumber);
  cmd_rho->add_option("--seed", rho_seed, "random seed");
  cmd_rho->add_option("--out", rho_out, "output directory (default: stdout)");

  // apply ------------------------------------------------------------------
  auto* cmd_apply = app.add_subcommand("apply", "apply T^gamma or the linear fractional integral");
  std::string ap_config = "grid1d:256";
  std::string ap_f = "constant:1", ap_g = "constant:1", ap_out;
  double ap_gamma = 0.0, ap_alpha = 0.0;
  auto* opt_gamma = cmd_apply->add_option("--gamma", ap_gamma, "bilinear order gamma in (0, 2 eta)");
  auto* opt_alpha = cmd_apply->add_option("--alpha", ap_alpha, "linear order alpha in (0, eta)");
  opt_gamma->excludes(opt_alpha);
  cmd_apply->add_option("--space", ap_config, "space config");
  cmd_apply->add_option("--f", ap_f, "first input, e.g. gaussian:0.5,0.1");
  cmd_apply->add_option("--g", ap_g, "second input (tgamma mode only)");
  cmd_apply->add_option("--out", ap_out, "output directory (default: stdout)");

  // region -----------------------------------------------------------------
  auto* cmd_region = app.add_subcommand("region", "emit exponent-region lattice data");
  std::vector<double> rg_sigmas;
  double rg_eta = 0.0, rg_gamma = 0.0;
  int rg_grid = 400;
  std::string rg_out;
  cmd_region->add_option("--sigma", rg_sigmas, "sigma values in (0,1); repeatable");
  auto* opt_rg_eta = cmd_region->add_option("--eta", rg_eta, "dimension eta (with --op-gamma)");
  auto* opt_rg_gamma = cmd_region->add_option("--op-gamma", rg_gamma, "operator order gamma");
  opt_rg_eta->needs(opt_rg_gamma);
  opt_rg_gamma->needs(opt_rg_eta);
  cmd_region->add_option("--grid", rg_grid, "lattice resolution per axis")
      ->check(CLI::Range(100, 100000));
  cmd_region->add_option("--out", rg_out, "output directory (default: stdout)");

  // verify -----------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  std::string vf_suite = "all", vf_config, vf_out;
  std::uint64_t vf_seed = 7;
  bool vf_seed_given = false;
  cmd_verify
      ->add_option("--suite", vf_suite,
                   "all|sandwich|lemma11|lemma21|prop32|region|theorem12|search")
      ->check(CLI::IsMember({"all", "sandwich", "lemma11", "lemma21", "prop32",
                             "region", "theorem12", "search"}));
  cmd_verify->add_option("--seed", vf_seed, "random seed (default 7)")
      ->each([&](const std::string&) { vf_seed_given = true; });
  cmd_verify->add_option("--config", vf_config, "JSON config file of trial overrides")
      ->check(CLI::ExistingFile);
  cmd_verify->add_option("--out", vf_out, "report output directory");

  // report -----------------------------------------------------------------
  auto* cmd_report = app.add_subcommand("report", "summarize a report.json");
  std::string rp_in;
  cmd_report->add_option("--in", rp_in, "path to report.json")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (app.got_subcommand(cmd_space)) {
    const SpaceHandle space = open_space(sp_config);
    char* body = nullptr;
    check_api(hr_space_describe_json(space.get(), sp_fit_radii, &body));
    ApiString guard(body);
    deliver(resolve_out(sp_out), "space.json", body);
    return kExitOk;
  }

  if (app.got_subcommand(cmd_rho)) {
    const SpaceHandle space = open_space(rho_config);
    char* body = nullptr;
    check_api(hr_rho_table_csv(space.get(), rho_triples, rho_seed, &body));
    ApiString guard(body);
    deliver(resolve_out(rho_out), "rho_table.csv", body);
    return kExitOk;
  }

  if (app.got_subcommand(cmd_apply)) {
    if (opt_gamma->count() == 0 && opt_alpha->count() == 0)
      die("apply needs --gamma or --alpha", kExitUsage);
    const SpaceHandle space = open_space(ap_config);
    const bool bilinear = opt_gamma->count() > 0;
    char* body = nullptr;
    check_api(hr_apply_csv(space.get(), bilinear ? "tgamma" : "riesz",
                           bilinear ? ap_gamma : ap_alpha, ap_f.c_str(),
                           ap_g.c_str(), &body));
    ApiString guard(body);
    deliver(resolve_out(ap_out), "apply.csv", body);
    return kExitOk;
  }

  if (app.got_subcommand(cmd_region)) {
    if (opt_rg_eta->count() > 0) {
      if (!(rg_gamma > 0.0) || !(rg_gamma < 2.0 * rg_eta))
        die("--op-gamma must lie in (0, 2 eta)", kExitUsage);
      rg_sigmas.push_back((2.0 * rg_eta - rg_gamma) / (2.0 * rg_eta));
    }
    const std::string out_dir = resolve_out(rg_out);
    for (double sigma : rg_sigmas) {
      char* csv = nullptr;
      char* summary = nullptr;
      check_api(hr_region_csv(sigma, rg_grid, &csv, &summary));
      ApiString csv_guard(csv), summary_guard(summary);
      std::ostringstream name;
      name << "region_sigma_" << sigma << ".csv";
      deliver(out_dir, name.str(), csv);
      std::cout << summary;
    }
    return kExitOk;
  }

  if (app.got_subcommand(cmd_verify)) {
    std::string config_json = vf_config.empty() ? std::string() : read_file(vf_config);
    if (vf_seed_given || config_json.empty())
      config_json = with_seed(config_json, vf_seed);
    char* summary = nullptr;
    int all_passed = 0;
    const std::string out_dir = resolve_out(vf_out);
    check_api(hr_verify_run(vf_suite.c_str(), config_json.c_str(),
                            out_dir.empty() ? nullptr : out_dir.c_str(), nullptr,
                            &summary, &all_passed));
    ApiString guard(summary);
    std::cout << summary;
    if (!out_dir.empty())
      std::cout << "wrote " << (std::filesystem::path(out_dir) / "report.json").string()
                << " and margins.csv\n";
    return all_passed ? kExitOk : kExitCheckFailure;
  }

  if (app.got_subcommand(cmd_report)) {
    const std::string body = read_file(rp_in);
    char* summary = nullptr;
    int all_passed = 0;
    check_api(hr_report_summary(body.c_str(), &summary, &all_passed));
    ApiString guard(summary);
    std::cout << summary;
    return all_passed ? kExitOk : kExitCheckFailure;
  }

  return kExitUsage;
}
