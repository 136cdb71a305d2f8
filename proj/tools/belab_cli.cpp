#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "belab/errors.hpp"
#include "belab/experiment.hpp"
#include "belab/verify.hpp"

namespace {

struct RunFlags {
  std::string config;
  std::string out;
  std::optional<std::size_t> grid;
  std::optional<std::size_t> workers;
  std::string format;
  std::string tolerance_profile;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool config_required) {
  auto* c = cmd->add_option("--config", f.config, "experiment configuration (JSON)");
  if (config_required) c->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--grid", f.grid, "radial grid cells")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", f.workers, "concurrent instances")->check(CLI::PositiveNumber);
  cmd->add_option("--format", f.format, "csv or json (default: both)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--tolerance-profile", f.tolerance_profile, "strict or default")
      ->check(CLI::IsMember({"strict", "default"}));
}

int run_sweep(const RunFlags& f, std::optional<std::vector<belab::Check>> checks) {
  belab::ExperimentConfig cfg = belab::load_config(f.config);
  if (checks) cfg.checks = *checks;
  if (f.grid) cfg.grid = *f.grid;
  if (f.workers) cfg.workers = *f.workers;
  if (!f.tolerance_profile.empty()) cfg.tolerances = belab::Tolerances::named(f.tolerance_profile);
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (!f.format.empty()) cfg.formats = {f.format};

  const belab::RunReport report = belab::run(cfg);
  for (const auto& p : belab::emit(report, cfg.out_dir, cfg.formats))
    std::cerr << "wrote " << p.string() << "\n";
  for (const auto& row : report.rows) {
    std::cout << row["instance"].get<std::string>() << "  " << row["status"].get<std::string>();
    if (row.contains("lambda") && row["lambda"].is_number())
      std::printf("  lambda=%.10g", row["lambda"].get<double>());
    const auto failed = row["checks_failed"].get<std::string>();
    if (!failed.empty()) std::cout << "  failed=" << failed;
    std::cout << "\n";
  }
  std::cout << report.rows.size() << " instances, " << report.checks_passed << " checks passed, "
            << report.checks_failed << " failed, " << report.solver_failures
            << " solver failures\n";
  return belab::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral and curvature experiments on weighted warped-product manifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(belab::kVersion));

  RunFlags flags;
  struct Sub {
    const char* name;
    const char* help;
    std::optional<std::vector<belab::Check>> checks;
  };
  using belab::Check;
  const std::vector<Sub> subs = {
      {"spectrum", "first non-zero eigenvalue of each instance",
       std::vector<Check>{Check::spectrum}},
      {"certify", "compare eigenvalues with the curvature bounds",
       std::vector<Check>{Check::spectrum, Check::bounds}},
      {"estimate", "normalized eigenfunction, gradient estimate and barrier comparison",
       std::vector<Check>{Check::spectrum, Check::bounds, Check::estimates}},
      {"soliton-check", "shrinking soliton residuals and identities",
       std::vector<Check>{Check::soliton}},
      {"sweep", "run the checks listed in the config", std::nullopt},
  };
  std::vector<CLI::App*> run_cmds;
  for (const Sub& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_run_flags(cmd, flags, true);
    run_cmds.push_back(cmd);
  }

  CLI::App* verify = app.add_subcommand("verify-paper", "run the full verification suite");
  std::string verify_out, verify_format, fault = "none";
  std::size_t verify_workers = 1;
  std::vector<int> only;
  verify->add_option("--out", verify_out, "directory for verify-paper.csv/json");
  verify->add_option("--workers", verify_workers, "concurrent instances")
      ->check(CLI::PositiveNumber);
  verify->add_option("--format", verify_format, "csv or json (default: both)")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, 10));
  verify->add_option("--inject-fault", fault, "none, ling-constant or diameter-constant")
      ->check(CLI::IsMember({"none", "ling-constant", "diameter-constant"}));

  CLI::App* barriers = app.add_subcommand("emit-barriers", "tabulate t, xi, eta, z");
  double a = 0.0, b = 1.01, delta = 0.25, mu = 1.0;
  std::optional<double> sigma;
  std::size_t points = 1001;
  std::string barrier_out;
  barriers->add_option("--a", a, "asymmetry a in [0, 1)");
  barriers->add_option("--b", b, "b > 1");
  barriers->add_option("--delta", delta, "delta");
  barriers->add_option("--mu", mu, "barrier weight mu");
  barriers->add_option("--sigma", sigma, "use delta - sigma c^2 as the xi weight");
  barriers->add_option("--points", points, "number of samples")->check(CLI::Range(2, 10000000));
  barriers->add_option("--out", barrier_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (run_cmds[i]->parsed()) return run_sweep(flags, subs[i].checks);

    if (verify->parsed()) {
      belab::VerifyOptions opts;
      opts.workers = verify_workers;
      opts.fault = belab::parse_fault(fault);
      opts.only.insert(only.begin(), only.end());
      const belab::SuiteReport r = belab::verify_paper(opts);
      for (const auto& c : r.criteria)
        std::printf("criterion %2d %s  %s: %s\n", c.id, c.passed ? "PASS" : "FAIL",
                    c.title.c_str(), c.detail.c_str());
      std::printf("%s in %.1f s\n", r.all_passed() ? "all criteria passed" : "FAILED",
                  r.seconds);
      if (!verify_out.empty()) {
        std::filesystem::create_directories(verify_out);
        if (verify_format.empty() || verify_format == "csv")
          std::ofstream(std::filesystem::path(verify_out) / "verify-paper.csv",
                        std::ios::binary)
              << belab::suite_csv(r);
        if (verify_format.empty() || verify_format == "json")
          std::ofstream(std::filesystem::path(verify_out) / "verify-paper.json")
              << belab::suite_json(r).dump(2) << "\n";
      }
      return r.all_passed() ? 0 : 1;
    }

    if (barriers->parsed()) {
      const std::string table = belab::barrier_table(a, b, delta, mu, sigma, points);
      if (barrier_out.empty()) {
        std::cout << table;
      } else {
        std::ofstream(barrier_out, std::ios::binary) << table;
      }
      return 0;
    }
  } catch (const belab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const belab::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const belab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
