#include "belab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "belab/bounds.hpp"
#include "belab/errors.hpp"
#include "belab/estimates.hpp"
#include "belab/experiment.hpp"
#include "belab/soliton.hpp"
#include "belab/spectral.hpp"
#include "belab/test_functions.hpp"

namespace belab {

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

CriterionResult spectral_accuracy() {
  const auto t0 = Clock::now();
  CriterionResult c{1, "spectral accuracy on round spheres", true, 0.0, 1e-3, 0, {}, 0.0};
  std::string orders;
  for (int n = 2; n <= 5; ++n) {
    const WarpedManifold s = WarpedManifold::unit_sphere(n);
    const FirstEigen fine = first_nonzero_eigenvalue(s, make_grid(s, 4000), {2, false});
    const double err = std::abs(fine.lambda - n);
    c.worst = std::max(c.worst, err);
    c.passed = c.passed && err <= 1e-3;
    std::vector<double> errs;
    for (std::size_t N : {250, 500, 1000, 2000})
      errs.push_back(std::abs(first_nonzero_in_mode(s, make_grid(s, N), 0, false).lambda - n));
    orders += (n > 2 ? "; n=" : "n=") + std::to_string(n) + " order";
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
      const double p = std::log2(errs[i] / errs[i + 1]);
      c.passed = c.passed && p >= 1.8 && p <= 2.2;
      orders += fmt(" %.4f", p);
    }
    ++c.instances;
  }
  c.seconds = seconds_since(t0);
  c.passed = c.passed && c.seconds < 60.0;
  c.detail = orders;
  return c;
}

// The 15 weighted spheres phi = eps cos r shared by criteria 2-4.
RunReport cosine_density_family(std::size_t workers) {
  ExperimentConfig cfg;
  FamilySpec f;
  f.name = "cosine-density";
  f.family = "sphere-cosine-density";
  f.dims = {2, 3, 4};
  f.epsilons = {0.1, 0.3, 0.5, 0.7, 0.9};
  cfg.families = {f};
  cfg.grid = 4000;
  cfg.b = 1.01;
  cfg.checks = {Check::spectrum, Check::bounds, Check::estimates};
  cfg.workers = workers;
  return run(cfg);
}

double num(const nlohmann::ordered_json& row, const char* key) {
  const auto& v = row.at(key);
  if (!v.is_number()) throw Error(std::string("row is missing ") + key);
  return v.get<double>();
}

CriterionResult lichnerowicz_suite(const RunReport& r) {
  CriterionResult c{2, "lambda >= (n-1) K_eff on the cosine-density family", true,
                    kPi, -1e-6, 0, {}, 0.0};
  for (const auto& row : r.rows) {
    ++c.instances;
    if (row.at("status") == "solver-error" || !row.at("lichnerowicz_margin").is_number()) {
      c.passed = false;
      c.detail += row.at("instance").get<std::string>() + " missing; ";
      continue;
    }
    const double m = num(row, "lichnerowicz_margin");
    c.worst = std::min(c.worst, m);
    c.passed = c.passed && m >= c.threshold;
  }
  c.passed = c.passed && c.instances == 15;
  c.detail += "min margin " + fmt("%.6g", c.worst);
  return c;
}

CriterionResult ling_suite(const RunReport& r, Fault fault, double shared_seconds) {
  const auto t0 = Clock::now();
  const Rational fraction = fault == Fault::ling_constant
                                ? constants::kLingFraction * Rational(10)
                                : constants::kLingFraction;
  CriterionResult c{3, "lambda >= pi^2/d^2 + (31/100)(n-1) K_eff", true, kPi, -1e-6, 0, {}, 0.0};
  for (const auto& row : r.rows) {
    ++c.instances;
    if (!row.at("lambda").is_number() || !row.at("k_eff").is_number()) {
      c.passed = false;
      continue;
    }
    const Bound b = ling_be_bound(row.at("n").get<int>(), num(row, "k_eff"),
                                  num(row, "diameter"), fraction);
    const double m = num(row, "lambda") - b.value;
    c.worst = std::min(c.worst, m);
    c.passed = c.passed && b.applicable && m >= c.threshold;
  }
  c.seconds = shared_seconds + seconds_since(t0);
  c.passed = c.passed && c.instances == 15 && c.seconds < 120.0;
  c.detail = "fraction " + std::to_string(fraction.numerator()) + "/" +
             std::to_string(fraction.denominator()) + "; min margin " + fmt("%.6g", c.worst);
  return c;
}

CriterionResult gradient_suite(const RunReport& r) {
  CriterionResult c{4, "max |grad v|^2/(b^2-v^2) <= lambda(1+a)(1+1e-2)", true, 0.0, 1e-2, 0,
                    {}, 0.0};
  c.worst = -1.0;
  for (const auto& row : r.rows) {
    ++c.instances;
    if (!row.at("gradient_max_ratio").is_number()) {
      c.passed = false;
      continue;
    }
    const double excess = num(row, "gradient_max_ratio") / num(row, "gradient_limit") - 1.0;
    c.worst = std::max(c.worst, excess);
    c.passed = c.passed && excess <= c.threshold;
  }
  c.passed = c.passed && c.instances == 15;
  c.detail = "max relative excess " + fmt("%.6g", c.worst);
  return c;
}

CriterionResult barrier_dominance() {
  const auto t0 = Clock::now();
  CriterionResult c{5, "Z(t) <= 1 + delta xi(t) for the zonal S^2 eigenfunction", false, 0.0,
                    -1e-2, 1, {}, 0.0};
  const WarpedManifold s = WarpedManifold::unit_sphere(2);
  const FirstEigen eig = first_nonzero_in_mode(s, make_grid(s, 4000), 0, false);
  NormalizedEigenfunction v = normalize(eig, {2, 1.0, 1.01});
  if (v.a < 1e-9) v.a = 0.0;
  const BarrierFamily z = BarrierFamily::symmetric(v.delta, 1.01);
  const ZProfile zp = compute_Z(v, 200);
  const DominanceReport d = barrier_dominance_check(zp, [&](double t) { return z(t).value; });
  c.worst = d.min_margin;
  c.passed = v.a == 0.0 && std::abs(v.delta - 0.25) < 1e-6 && d.min_margin >= c.threshold;
  c.detail = "a " + fmt("%.3g", v.a) + ", delta " + fmt("%.9f", v.delta) + ", bins " +
             std::to_string(d.bins_checked) + ", min z - Z " + fmt("%.6g", d.min_margin) +
             " at t " + fmt("%.6f", d.t_at_min);
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult test_function_identities() {
  using boost::math::quadrature::gauss_kronrod;
  CriterionResult c{6, "test-function integrals and endpoint values", true, 0.0, 1e-8, 0, {},
                    0.0};
  auto record = [&](double err) {
    c.worst = std::max(c.worst, err);
    c.passed = c.passed && err <= c.threshold;
    ++c.instances;
  };
  const double h = kPi / 2;
  record(std::abs(gauss_kronrod<double, 61>::integrate([](double t) { return xi(t).value; },
                                                       -h, h, 15, 1e-14) + kPi));
  record(std::abs(gauss_kronrod<double, 61>::integrate([](double t) { return eta(t).value; },
                                                       -h, h, 15, 1e-14)));
  record(std::abs(xi(h).value));
  record(std::abs(xi(-h).value));
  record(std::abs(eta(h).value - 1.0));
  record(std::abs(eta(-h).value + 1.0));
  // Series against the closed form inside the window, where both are accurate.
  for (double e : {0.099, 0.05, 0.02}) {
    record(std::abs(xi(h - e).value - xi_closed_form(h - e)));
    record(std::abs(eta(h - e).value - eta_closed_form(h - e)));
  }
  for (double mu : {0.25, 0.5, 1.0})
    for (double delta : {0.1, 0.25, 0.5}) {
      const LengthLedger l = length_integral_check(1.0, 1.0, BarrierFamily(0.0, 1.01, delta, mu));
      record(std::abs(l.z_integral - (1.0 - mu * delta) * kPi));
    }
  c.detail = "max error " + fmt("%.3g", c.worst);
  return c;
}

CriterionResult exact_constants(Fault fault) {
  CriterionResult c{7, "exact diameter constant and Myers value", false, 0.0, 1e-15, 3, {}, 0.0};
  try {
    const DiameterConstant dc = derive_diameter_bound(
        fault == Fault::diameter_constant ? Rational(32, 100) : constants::kLingFraction);
    const double rational_path = static_cast<double>(dc.numerator) * kPi /
                                 static_cast<double>(dc.denominator);
    const bool bit_identical = soliton_diameter_lower(1.0) == rational_path;
    const double myers = myers_upper(4, 1.0);
    const double ref = kPi * std::sqrt(3.0);
    c.worst = std::abs(myers - ref) / ref;
    c.passed = dc.numerator == 10 && dc.denominator == 13 && bit_identical &&
               c.worst <= c.threshold;
    c.detail = "constant " + std::to_string(dc.numerator) + "/" +
               std::to_string(dc.denominator) + (bit_identical ? ", " : ", NOT ") +
               "bit-identical to rational path, myers rel err " + fmt("%.3g", c.worst);
  } catch (const Error& e) {
    c.detail = e.what();
  }
  return c;
}

CriterionResult soliton_suite() {
  CriterionResult c{8, "soliton checker on Einstein data and a perturbation", true, 0.0, 1e-8, 0,
                    {}, 0.0};
  for (int n = 2; n <= 5; ++n) {
    const WarpedManifold s = WarpedManifold::unit_sphere(n);
    const Grid g = make_grid(s, 1000);
    const SolitonCandidate sc{s, Profile::constant(0.0), n - 1.0};
    const SolitonResidual r = soliton_residual(sc, g);
    const HamiltonLedger hl = hamilton_identities(sc, g);
    const EigenfunctionIdentity ei = eigenfunction_identity(sc, g);
    for (double x : {r.radial, r.tangential, hl.bianchi, hl.constancy_stddev, hl.trace,
                     ei.residual})
      c.worst = std::max(c.worst, x);
    ++c.instances;
  }
  c.passed = c.worst < c.threshold;
  const WarpedManifold s2 = WarpedManifold::unit_sphere(2);
  const Grid g = make_grid(s2, 1000);
  const SolitonCandidate bent{s2, Profile::cos_polynomial({0.0, 0.1}), 1.0};
  const SolitonResidual r = soliton_residual(bent, g);
  const HamiltonLedger hl = hamilton_identities(bent, g);
  const double sup = std::max(r.radial, r.tangential);
  const bool perturbed_ok = std::abs(sup - 0.1) <= 1e-3 && std::abs(hl.trace - 0.2) <= 1e-3;
  const PotentialShift once = normalize_f(bent, g);
  const PotentialShift twice = normalize_f({s2, once.potential, 1.0}, g);
  const bool idempotent = std::abs(twice.shift) <= 1e-14;
  c.instances += 2;
  c.passed = c.passed && perturbed_ok && idempotent;
  c.detail = "einstein max residual " + fmt("%.3g", c.worst) + "; perturbed soliton " +
             fmt("%.6f", sup) + " trace " + fmt("%.6f", hl.trace) + "; second shift " +
             fmt("%.3g", twice.shift);
  return c;
}

CriterionResult case_totality() {
  CriterionResult c{9, "case analysis is total with multiple >= 31/50", true, 1.0,
                    to_double(constants::kLingAlphaFraction), 0, {}, 0.0};
  const double q = kPi * kPi;
  std::size_t counts[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 100; ++i) {
    for (int j = 1; j <= 50; ++j) {
      const double a = i / 100.0;
      const double delta = j / 100.0;
      // Mutually exclusive predicates, written independently of ling_case.
      const bool pa = a == 0.0;
      const bool pb1 = a > 0.0 && q * delta / 4.0 <= a;
      const bool pb2a = a > 0.0 && q * delta / 4.0 > a && a >= 0.765;
      const bool pb2b1 = a > 0.0 && q * delta / 4.0 > a && a < 0.765 && a >= 1.53 * delta;
      const bool pb2b2 = a > 0.0 && q * delta / 4.0 > a && a < 0.765 && a < 1.53 * delta;
      const int hits = pa + pb1 + pb2a + pb2b1 + pb2b2;
      const LingCase expected = pa     ? LingCase::A
                                : pb1  ? LingCase::B1
                                : pb2a ? LingCase::B2a
                                : pb2b1 ? LingCase::B2b1
                                        : LingCase::B2b2;
      const CaseResult r = ling_case(a, delta);
      ++counts[static_cast<int>(r.label)];
      c.worst = std::min(c.worst, r.alpha_multiple);
      c.passed = c.passed && hits == 1 && r.label == expected &&
                 r.alpha_multiple >= c.threshold;
      ++c.instances;
    }
  }
  c.detail = "A " + std::to_string(counts[0]) + ", B-1 " + std::to_string(counts[1]) +
             ", B-2-a " + std::to_string(counts[2]) + ", B-2-b1 " + std::to_string(counts[3]) +
             ", B-2-b2 " + std::to_string(counts[4]) + "; min multiple " +
             fmt("%.6f", c.worst);
  return c;
}

bool selected(const VerifyOptions& o, int id) { return o.only.empty() || o.only.count(id); }

std::vector<CriterionResult> core_suite(const VerifyOptions& o) {
  std::vector<CriterionResult> out;
  auto guarded = [&](int id, const char* title, auto&& fn) {
    if (!selected(o, id)) return;
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({id, title, false, 0.0, 0.0, 0, std::string("error: ") + e.what(), 0.0});
    }
  };
  guarded(1, "spectral accuracy on round spheres", [] { return spectral_accuracy(); });
  if (selected(o, 2) || selected(o, 3) || selected(o, 4)) {
    const auto t0 = Clock::now();
    std::optional<RunReport> family;
    std::string failure;
    try {
      family = cosine_density_family(o.workers);
    } catch (const std::exception& e) {
      failure = e.what();
    }
    const double shared = seconds_since(t0);
    auto on_family = [&](int id, const char* title, auto&& fn) {
      guarded(id, title, [&] {
        if (!family) throw Error(failure);
        return fn(*family);
      });
    };
    on_family(2, "lambda >= (n-1) K_eff", [](const RunReport& r) { return lichnerowicz_suite(r); });
    on_family(3, "eigenvalue bound with 31/100",
              [&](const RunReport& r) { return ling_suite(r, o.fault, shared); });
    on_family(4, "gradient estimate", [](const RunReport& r) { return gradient_suite(r); });
  }
  guarded(5, "barrier dominance", [] { return barrier_dominance(); });
  guarded(6, "test-function identities", [] { return test_function_identities(); });
  guarded(7, "exact constants", [&] { return exact_constants(o.fault); });
  guarded(8, "soliton checker", [] { return soliton_suite(); });
  guarded(9, "case totality", [] { return case_totality(); });
  return out;
}

}  // namespace

Fault parse_fault(const std::string& s) {
  if (s == "none") return Fault::none;
  if (s == "ling-constant") return Fault::ling_constant;
  if (s == "diameter-constant") return Fault::diameter_constant;
  throw ConfigError("unknown fault '" + s + "'");
}

bool SuiteReport::all_passed() const {
  return !criteria.empty() &&
         std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed; });
}

SuiteReport verify_paper(const VerifyOptions& options) {
  const auto t0 = Clock::now();
  SuiteReport report;
  report.criteria = core_suite(options);
  if (selected(options, 10)) {
    const auto t1 = Clock::now();
    SuiteReport first{report.criteria, 0.0};
    SuiteReport second{core_suite(options), 0.0};
    const bool same = suite_csv(first) == suite_csv(second);
    CriterionResult c{10, "repeated runs give byte-identical CSV", same, same ? 0.0 : 1.0, 0.0,
                      2, same ? "identical" : "CSV differs between runs", 0.0};
    c.seconds = seconds_since(t1);
    report.criteria.push_back(c);
  }
  report.seconds = seconds_since(t0);
  return report;
}

std::string suite_csv(const SuiteReport& report) {
  std::vector<nlohmann::ordered_json> rows;
  for (const auto& c : report.criteria)
    rows.push_back({{"criterion", c.id},
                    {"title", c.title},
                    {"passed", c.passed},
                    {"worst", c.worst},
                    {"threshold", c.threshold},
                    {"instances", c.instances},
                    {"detail", c.detail}});
  return to_csv(rows, {"criterion", "title", "passed", "worst", "threshold", "instances",
                       "detail"});
}

nlohmann::ordered_json suite_json(const SuiteReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = "belab-suite-report";
  j["schema_version"] = kReportSchemaVersion;
  j["version"] = kVersion;
  j["all_passed"] = report.all_passed();
  j["seconds"] = report.seconds;
  j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& c : report.criteria)
    j["criteria"].push_back({{"criterion", c.id},
                             {"title", c.title},
                             {"passed", c.passed},
                             {"worst", c.worst},
                             {"threshold", c.threshold},
                             {"instances", c.instances},
                             {"detail", c.detail},
                             {"seconds", c.seconds}});
  return j;
}

}  // namespace belab
