#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace belab {

/// Deliberate corruptions used to check that the suite can fail.
enum class Fault {
  none,
  ling_constant,      // 31/100 replaced by 310/100 in the eigenvalue bound
  diameter_constant,  // 31/100 replaced by 32/100 in the diameter derivation
};

Fault parse_fault(const std::string& s);

struct VerifyOptions {
  std::size_t workers = 1;
  Fault fault = Fault::none;
  std::set<int> only;  // empty: all criteria
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double worst = 0.0;      // worst measured quantity, compared to threshold
  double threshold = 0.0;
  std::size_t instances = 0;
  std::string detail;
  double seconds = 0.0;    // JSON only; never in the CSV
};

struct SuiteReport {
  std::vector<CriterionResult> criteria;
  double seconds = 0.0;
  bool all_passed() const;
};

/// Runs criteria 1-9, then (unless excluded) reruns them and compares the
/// CSV bytes as criterion 10.
SuiteReport verify_paper(const VerifyOptions& options = {});

std::string suite_csv(const SuiteReport& report);
nlohmann::ordered_json suite_json(const SuiteReport& report);

}  // namespace belab
