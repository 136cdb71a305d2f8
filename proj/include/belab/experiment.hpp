#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "belab/geometry.hpp"
#include "belab/soliton.hpp"

namespace belab {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

enum class Check { spectrum, bounds, estimates, soliton };

std::string to_string(Check c);

struct Tolerances {
  double bound = 1e-6;       // eigenvalue bound margins
  double gradient = 1e-2;    // relative slack on lambda (1 + a)
  double dominance = 1e-2;   // absolute slack on z - Z
  double residual = 1e-8;    // soliton identities
  double membership = 1e-3;  // relative eigenvalue match
  double identity = 1e-6;    // Delta v = -lambda (v + a) on the grid

  static Tolerances named(const std::string& profile);
};

struct SolitonSpec {
  double gamma = 1.0;
  std::vector<double> potential;  // cos-polynomial coefficients
  bool expect_soliton = true;
};

struct FamilySpec {
  std::string name;
  std::string family;
  std::vector<int> dims{2};
  std::vector<double> epsilons;       // sphere-cosine-density
  double radius = 1.0;
  double beta = 0.0;                  // bumped-sphere
  std::vector<double> coefficients;   // density cos-polynomial
  double circumference = 0.0;         // circle
  double length = 0.0;                // sampled
  std::vector<double> warp_samples;   // sampled
  std::vector<double> density_samples;
  std::optional<SolitonSpec> soliton;
};

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  std::vector<FamilySpec> families;
  std::size_t grid = 2000;
  double b = 1.01;
  std::size_t bins = 200;
  int angular_samples = 65;
  int max_mode = 2;
  std::size_t workers = 1;
  std::optional<double> sigma;  // weight of the B-2-b2 barrier
  Tolerances tolerances;
  std::vector<Check> checks{Check::spectrum, Check::bounds};
  std::filesystem::path out_dir = "out";
  std::vector<std::string> formats{"csv", "json"};
};

/// Parses and validates a configuration document; unknown keys, an empty
/// family list, empty parameter ranges, and non-positive tolerances are
/// ConfigErrors.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

struct Instance {
  std::size_t index = 0;
  std::string key;
  std::string family;
  WarpedManifold model;
  std::optional<double> epsilon;
  std::optional<SolitonCandidate> soliton;
  bool expect_soliton = true;
};

std::vector<Instance> expand(const ExperimentConfig& config);

struct RunReport {
  nlohmann::ordered_json environment;
  std::vector<nlohmann::ordered_json> rows;  // sorted by instance index
  std::size_t checks_passed = 0;
  std::size_t checks_failed = 0;
  std::size_t solver_failures = 0;
  std::size_t errors = 0;

  bool all_passed() const noexcept {
    return checks_failed == 0 && solver_failures == 0 && errors == 0;
  }
};

/// Exit status: 0 all checks pass, 1 a check failed, 3 a solver failure.
int exit_code(const RunReport& report);

/// One report row for one instance; failures are recorded in the row.
nlohmann::ordered_json run_instance(const ExperimentConfig& config,
                                    const Instance& instance);

/// Runs every instance (concurrently up to config.workers); rows come back in
/// instance order regardless of completion order.
RunReport run(const ExperimentConfig& config);

/// Fixed CSV column order of run reports.
const std::vector<std::string>& report_columns();

std::string format_number(double v);
/// CSV with a fixed header; numbers at 17 significant digits.
std::string to_csv(const std::vector<nlohmann::ordered_json>& rows,
                   const std::vector<std::string>& columns);
std::string report_csv(const RunReport& report);
nlohmann::ordered_json report_json(const RunReport& report);

/// Writes report.csv and/or report.json under `dir`; returns the paths.
std::vector<std::filesystem::path> emit(const RunReport& report,
                                        const std::filesystem::path& dir,
                                        const std::vector<std::string>& formats);

/// (t, xi, eta, z) at `points` equally spaced t in [-pi/2, pi/2].
std::string barrier_table(double a, double b, double delta, double mu,
                          std::optional<double> sigma, std::size_t points = 1001);

}  // namespace belab
