#include "belab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "belab/bounds.hpp"
#include "belab/errors.hpp"
#include "belab/estimates.hpp"
#include "belab/spectral.hpp"

namespace belab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;
// Normalization asymmetry below this is rounding in max/min of a symmetric u.
constexpr double kASnap = 1e-9;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T get_as(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <class T>
void read_opt(const json& obj, const char* key, T& out, const std::string& where) {
  if (obj.contains(key)) out = get_as<T>(obj, key, where);
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(where + ": expected numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }
  if (v.is_object()) {
    reject_unknown(v, {"start", "stop", "step"}, where);
    const double start = get_as<double>(v, "start", where);
    const double stop = get_as<double>(v, "stop", where);
    const double step = get_as<double>(v, "step", where);
    if (!(step > 0.0) || stop < start)
      throw ConfigError(where + ": empty or malformed range");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  throw ConfigError(where + ": expected a number, list or range");
}

const std::set<std::string> kFamilies = {"sphere",        "sphere-cosine-density",
                                         "sphere-cos-polynomial", "bumped-sphere",
                                         "circle",        "sampled"};

FamilySpec parse_family(const json& f, std::size_t i) {
  const std::string where = "families[" + std::to_string(i) + "]";
  reject_unknown(f,
                 {"name", "family", "n", "epsilon", "radius", "beta", "coefficients",
                  "circumference", "length", "warp", "density", "soliton"},
                 where);
  FamilySpec s;
  s.family = get_as<std::string>(f, "family", where);
  if (!kFamilies.count(s.family))
    throw ConfigError(where + ": unknown family '" + s.family + "'");
  s.name = f.contains("name") ? get_as<std::string>(f, "name", where) : s.family;
  if (f.contains("n")) {
    s.dims.clear();
    for (double d : number_list(f.at("n"), where + ".n")) {
      if (d != std::floor(d) || d < 2) throw ConfigError(where + ".n: need integers >= 2");
      s.dims.push_back(static_cast<int>(d));
    }
    if (s.dims.empty()) throw ConfigError(where + ".n: empty");
  }
  if (s.family == "sphere-cosine-density") {
    if (!f.contains("epsilon")) throw ConfigError(where + ": missing epsilon");
    s.epsilons = number_list(f.at("epsilon"), where + ".epsilon");
    if (s.epsilons.empty()) throw ConfigError(where + ".epsilon: empty");
  } else if (f.contains("epsilon")) {
    throw ConfigError(where + ": epsilon only applies to sphere-cosine-density");
  }
  read_opt(f, "radius", s.radius, where);
  read_opt(f, "beta", s.beta, where);
  read_opt(f, "coefficients", s.coefficients, where);
  read_opt(f, "circumference", s.circumference, where);
  read_opt(f, "length", s.length, where);
  read_opt(f, "warp", s.warp_samples, where);
  read_opt(f, "density", s.density_samples, where);
  if (!(s.radius > 0.0)) throw ConfigError(where + ".radius must be positive");
  if (s.family == "circle" && !(s.circumference > 0.0))
    throw ConfigError(where + ": circle needs a positive circumference");
  if (s.family == "sampled") {
    if (!(s.length > 0.0) || s.warp_samples.size() < 5)
      throw ConfigError(where + ": sampled needs length > 0 and at least 5 warp samples");
    if (!s.density_samples.empty() && s.density_samples.size() < 5)
      throw ConfigError(where + ": density needs at least 5 samples");
  }
  if (f.contains("soliton")) {
    const json& sj = f.at("soliton");
    reject_unknown(sj, {"gamma", "potential", "expect"}, where + ".soliton");
    SolitonSpec sol;
    read_opt(sj, "gamma", sol.gamma, where + ".soliton");
    read_opt(sj, "potential", sol.potential, where + ".soliton");
    if (sj.contains("expect")) {
      const auto e = get_as<std::string>(sj, "expect", where + ".soliton");
      if (e != "soliton" && e != "non-soliton")
        throw ConfigError(where + ".soliton.expect: soliton or non-soliton");
      sol.expect_soliton = e == "soliton";
    }
    s.soliton = sol;
  }
  return s;
}

Check parse_check(const std::string& s) {
  if (s == "spectrum") return Check::spectrum;
  if (s == "bounds") return Check::bounds;
  if (s == "estimates") return Check::estimates;
  if (s == "soliton") return Check::soliton;
  throw ConfigError("unknown check '" + s + "'");
}

std::string fmt_key(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Angular frequency of the cos-polynomial densities on each family.
double density_frequency(const FamilySpec& f) {
  if (f.family == "circle") return 2.0 * kPi / f.circumference;
  if (f.family == "sampled") return kPi / f.length;
  if (f.family == "bumped-sphere") return 1.0;
  return 1.0 / f.radius;
}

WarpedManifold build_model(const FamilySpec& f, int n, std::optional<double> eps) {
  const double freq = density_frequency(f);
  Profile density = f.coefficients.empty() ? Profile()
                                           : Profile::cos_polynomial(f.coefficients, freq);
  if (f.family == "sphere" || f.family == "sphere-cos-polynomial")
    return WarpedManifold::interval_sphere(n, kPi * f.radius, Profile::sine(f.radius),
                                           density);
  if (f.family == "sphere-cosine-density")
    return WarpedManifold::interval_sphere(n, kPi * f.radius, Profile::sine(f.radius),
                                           Profile::cos_polynomial({0.0, *eps}, freq));
  if (f.family == "bumped-sphere")
    return WarpedManifold::interval_sphere(n, kPi, Profile::bumped_sine(f.beta), density);
  if (f.family == "circle") return WarpedManifold::circle(f.circumference, density);
  // sampled
  if (!f.density_samples.empty())
    density = Profile::sampled(f.density_samples, f.length, 0.0, 0.0);
  return WarpedManifold::interval_sphere(
      n, f.length, Profile::sampled(f.warp_samples, f.length, 1.0, -1.0), density);
}

bool wants(const ExperimentConfig& c, Check k) {
  return std::find(c.checks.begin(), c.checks.end(), k) != c.checks.end();
}

ordered_json finite_or_null(double x) {
  return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string to_string(Check c) {
  switch (c) {
    case Check::spectrum: return "spectrum";
    case Check::bounds: return "bounds";
    case Check::estimates: return "estimates";
    case Check::soliton: return "soliton";
  }
  return "?";
}

Tolerances Tolerances::named(const std::string& profile) {
  if (profile == "default") return {};
  if (profile == "strict") return {1e-8, 1e-3, 1e-3, 1e-10, 1e-4, 1e-8};
  throw ConfigError("unknown tolerance profile '" + profile + "'");
}

ExperimentConfig parse_config(const json& doc) {
  reject_unknown(doc,
                 {"schema_version", "families", "grid", "b", "bins", "angular_samples",
                  "max_mode", "workers", "sigma", "tolerance_profile", "tolerances",
                  "checks", "output"},
                 "config");
  ExperimentConfig c;
  if (!doc.contains("schema_version")) throw ConfigError("config: missing schema_version");
  c.schema_version = get_as<int>(doc, "schema_version", "config");
  if (c.schema_version != kConfigSchemaVersion)
    throw ConfigError("config: unsupported schema_version " +
                      std::to_string(c.schema_version));
  if (!doc.contains("families") || !doc.at("families").is_array() ||
      doc.at("families").empty())
    throw ConfigError("config: families must be a non-empty list");
  std::set<std::string> names;
  for (std::size_t i = 0; i < doc.at("families").size(); ++i) {
    c.families.push_back(parse_family(doc.at("families")[i], i));
    if (!names.insert(c.families.back().name).second)
      throw ConfigError("config: duplicate family name '" + c.families.back().name + "'");
  }
  read_opt(doc, "grid", c.grid, "config");
  read_opt(doc, "b", c.b, "config");
  read_opt(doc, "bins", c.bins, "config");
  read_opt(doc, "angular_samples", c.angular_samples, "config");
  read_opt(doc, "max_mode", c.max_mode, "config");
  read_opt(doc, "workers", c.workers, "config");
  if (doc.contains("sigma")) c.sigma = get_as<double>(doc, "sigma", "config");
  if (c.grid < 8) throw ConfigError("config.grid: need at least 8 cells");
  if (!(c.b > 1.0)) throw ConfigError("config.b: need b > 1");
  if (c.bins < 1) throw ConfigError("config.bins: need at least one bin");
  if (c.angular_samples < 3) throw ConfigError("config.angular_samples: need >= 3");
  if (c.max_mode < 0) throw ConfigError("config.max_mode: need >= 0");
  if (c.workers < 1) throw ConfigError("config.workers: need >= 1");
  if (doc.contains("tolerance_profile"))
    c.tolerances = Tolerances::named(get_as<std::string>(doc, "tolerance_profile", "config"));
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    reject_unknown(t, {"bound", "gradient", "dominance", "residual", "membership", "identity"},
                   "config.tolerances");
    read_opt(t, "bound", c.tolerances.bound, "config.tolerances");
    read_opt(t, "gradient", c.tolerances.gradient, "config.tolerances");
    read_opt(t, "dominance", c.tolerances.dominance, "config.tolerances");
    read_opt(t, "residual", c.tolerances.residual, "config.tolerances");
    read_opt(t, "membership", c.tolerances.membership, "config.tolerances");
    read_opt(t, "identity", c.tolerances.identity, "config.tolerances");
  }
  for (double t : {c.tolerances.bound, c.tolerances.gradient, c.tolerances.dominance,
                   c.tolerances.residual, c.tolerances.membership, c.tolerances.identity})
    if (!(t > 0.0)) throw ConfigError("config.tolerances: all tolerances must be > 0");
  if (doc.contains("checks")) {
    c.checks.clear();
    for (const auto& s : get_as<std::vector<std::string>>(doc, "checks", "config"))
      c.checks.push_back(parse_check(s));
    if (c.checks.empty()) throw ConfigError("config.checks: empty");
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    reject_unknown(o, {"dir", "formats"}, "config.output");
    if (o.contains("dir")) c.out_dir = get_as<std::string>(o, "dir", "config.output");
    read_opt(o, "formats", c.formats, "config.output");
    for (const auto& f : c.formats)
      if (f != "csv" && f != "json") throw ConfigError("config.output: unknown format " + f);
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

std::vector<Instance> expand(const ExperimentConfig& config) {
  std::vector<Instance> out;
  for (const FamilySpec& f : config.families) {
    const std::vector<int> dims = f.family == "circle" ? std::vector<int>{1} : f.dims;
    const std::vector<std::optional<double>> eps =
        f.epsilons.empty() ? std::vector<std::optional<double>>{std::nullopt}
                           : std::vector<std::optional<double>>(f.epsilons.begin(),
                                                                f.epsilons.end());
    for (int n : dims) {
      for (const auto& e : eps) {
        std::string key = f.name + "/n=" + std::to_string(n);
        if (e) key += "/eps=" + fmt_key(*e);
        std::optional<WarpedManifold> model;
        try {
          model = build_model(f, n, e);
        } catch (const Error& err) {
          throw ConfigError(key + ": " + err.what());
        }
        Instance inst{out.size(), key, f.name, *model, e, std::nullopt, true};
        if (f.soliton) {
          inst.soliton = SolitonCandidate{
              inst.model, Profile::cos_polynomial(f.soliton->potential, density_frequency(f)),
              f.soliton->gamma};
          inst.expect_soliton = f.soliton->expect_soliton;
        }
        out.push_back(std::move(inst));
      }
    }
  }
  return out;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "index", "instance", "family", "topology", "n", "length", "epsilon", "grid",
      "status", "checks_passed", "checks_failed",
      "lambda", "lambda_error", "mode", "k_eff", "k_eff_radius", "diameter",
      "lichnerowicz_bound", "lichnerowicz_margin", "ling_bound", "ling_margin",
      "k", "a", "delta", "ling_case", "case_alpha_multiple", "case_bound", "case_margin",
      "gradient_max_ratio", "gradient_limit", "gradient_ok", "identity_residual",
      "z_bins", "dominance_margin", "dominance_t", "dominance_ok",
      "barrier_lambda_lower", "barrier_lambda_margin",
      "soliton_gamma", "soliton_radial", "soliton_tangential", "bianchi",
      "constancy_stddev", "trace", "eigen_identity_residual", "potential_shift",
      "spectrum_has_minus_two_gamma", "soliton_detected",
      "warnings"};
  return cols;
}

ordered_json run_instance(const ExperimentConfig& config, const Instance& inst) {
  const WarpedManifold& model = inst.model;
  const Tolerances& tol = config.tolerances;
  ordered_json row;
  row["index"] = inst.index;
  row["instance"] = inst.key;
  row["family"] = inst.family;
  row["topology"] = to_string(model.topology());
  row["n"] = model.dimension();
  row["length"] = model.length();
  row["epsilon"] = inst.epsilon ? ordered_json(*inst.epsilon) : ordered_json(nullptr);
  row["grid"] = config.grid;

  std::vector<std::string> passed, failed, notes;
  auto verdict = [&](Check k, bool ok) { (ok ? passed : failed).push_back(to_string(k)); };
  std::string status = "ok";
  try {
    const Grid grid = make_grid(model, config.grid);
    if (wants(config, Check::spectrum) || wants(config, Check::bounds) ||
        wants(config, Check::estimates)) {
      const FirstEigen eig =
          first_nonzero_eigenvalue(model, grid, {config.max_mode, true});
      row["lambda"] = eig.lambda;
      row["lambda_error"] = eig.error_estimate;
      row["mode"] = eig.mode;
      notes.insert(notes.end(), eig.warnings.begin(), eig.warnings.end());
      if (wants(config, Check::spectrum))
        verdict(Check::spectrum, std::isfinite(eig.lambda) && eig.lambda > eig.error_estimate);

      const RicciBound rb = be_ricci_lower_bound(model, grid);
      const double d = diameter(model);
      row["k_eff"] = finite_or_null(rb.k_eff);
      row["k_eff_radius"] = rb.radius;
      row["diameter"] = d;
      const bool curvature_ok = !rb.flagged && model.dimension() >= 2;

      if (wants(config, Check::bounds)) {
        if (!curvature_ok) {
          notes.push_back("bounds not applicable: " + rb.reason);
        } else {
          CertifyInputs ci;
          ci.n = model.dimension();
          ci.k = rb.k_eff;
          ci.d = d;
          ci.lambda = eig.lambda;
          const BoundReport br = certify(ci);
          const BoundEntry* lich = br.find("lichnerowicz");
          const BoundEntry* ling = br.find("ling");
          row["lichnerowicz_bound"] = lich->bound.value;
          row["lichnerowicz_margin"] = *lich->margin;
          row["ling_bound"] = ling->bound.value;
          row["ling_margin"] = *ling->margin;
          verdict(Check::bounds, *lich->margin >= -tol.bound && *ling->margin >= -tol.bound);
        }
      }

      if (wants(config, Check::estimates)) {
        if (!curvature_ok) {
          notes.push_back("estimates not applicable: " + rb.reason);
        } else {
          NormalizedEigenfunction v =
              normalize(eig, {model.dimension(), rb.k_eff, config.b}, config.angular_samples);
          if (v.a < kASnap) v.a = 0.0;
          row["k"] = v.k;
          row["a"] = v.a;
          row["delta"] = v.delta;
          CertifyInputs ci;
          ci.n = model.dimension();
          ci.k = rb.k_eff;
          ci.d = d;
          ci.lambda = eig.lambda;
          ci.a = v.a;
          ci.delta = v.delta;
          const BoundReport br = certify(ci);
          bool ok = true;
          if (br.ling_case) {
            row["ling_case"] = to_string(br.ling_case->label);
            row["case_alpha_multiple"] = br.ling_case->alpha_multiple;
            if (const BoundEntry* e = br.find("case"); e && e->margin) {
              row["case_bound"] = e->bound.value;
              row["case_margin"] = *e->margin;
              ok = ok && *e->margin >= -tol.bound;
            }
          } else {
            notes.insert(notes.end(), br.notes.begin(), br.notes.end());
          }

          const GradientEstimate g = gradient_estimate_margin(v);
          const bool gradient_ok = g.max_ratio <= g.limit * (1.0 + tol.gradient);
          row["gradient_max_ratio"] = g.max_ratio;
          row["gradient_limit"] = g.limit;
          row["gradient_ok"] = gradient_ok;
          ok = ok && gradient_ok;

          if (v.identity_residual) {
            row["identity_residual"] = *v.identity_residual;
            ok = ok && *v.identity_residual <= tol.identity;
          }

          if (br.ling_case) {
            const CaseResult& cr = *br.ling_case;
            std::optional<BarrierFamily> barrier;
            if (cr.label == LingCase::A)
              barrier = BarrierFamily::symmetric(v.delta, config.b);
            else if (cr.mu)
              barrier = BarrierFamily(v.a, config.b, v.delta, *cr.mu);
            else
              barrier = BarrierFamily(v.a, config.b, v.delta, 1.0, config.sigma.value_or(0.0));
            const ZProfile zp = compute_Z(v, config.bins);
            const DominanceReport dr = barrier_dominance_check(
                zp, [&](double t) { return (*barrier)(t).value; });
            const bool dom_ok = dr.min_margin >= -tol.dominance;
            row["z_bins"] = zp.present_count();
            row["dominance_margin"] = dr.min_margin;
            row["dominance_t"] = dr.t_at_min;
            row["dominance_ok"] = dom_ok;
            ok = ok && dom_ok;
            try {
              const LengthLedger ll = length_integral_check(eig.lambda, d, *barrier);
              row["barrier_lambda_lower"] = ll.lambda_lower;
              row["barrier_lambda_margin"] = ll.lambda_margin;
            } catch (const HypothesisError& e) {
              notes.push_back(std::string("length integral skipped: ") + e.what());
            }
          }
          verdict(Check::estimates, ok);
        }
      }
    }

    if (wants(config, Check::soliton)) {
      if (!inst.soliton) {
        notes.push_back("no soliton candidate for this family");
      } else {
        const SolitonCandidate& sc = *inst.soliton;
        const SolitonResidual sr = soliton_residual(sc, grid);
        const HamiltonLedger hl = hamilton_identities(sc, grid);
        const EigenfunctionIdentity ei = eigenfunction_identity(sc, grid, tol.membership);
        row["soliton_gamma"] = sc.gamma;
        row["soliton_radial"] = sr.radial;
        row["soliton_tangential"] = sr.tangential;
        row["bianchi"] = hl.bianchi;
        row["constancy_stddev"] = hl.constancy_stddev;
        row["trace"] = hl.trace;
        row["eigen_identity_residual"] = ei.residual;
        row["potential_shift"] = ei.shift;
        row["spectrum_has_minus_two_gamma"] = ei.membership.contains;
        const bool detected = std::max(sr.radial, sr.tangential) <= tol.residual;
        row["soliton_detected"] = detected;
        if (!ei.note.empty()) notes.push_back(ei.note);
        verdict(Check::soliton, detected == inst.expect_soliton);
      }
    }
  } catch (const SolverError& e) {
    status = "solver-error";
    notes.push_back(e.what());
  } catch (const std::exception& e) {
    status = "error";
    notes.push_back(e.what());
  }
  if (status == "ok" && !failed.empty()) status = "check-failed";
  row["status"] = status;
  row["checks_passed"] = join(passed, ";");
  row["checks_failed"] = join(failed, ";");
  row["warnings"] = join(notes, "; ");
  return row;
}

RunReport run(const ExperimentConfig& config) {
  const std::vector<Instance> instances = expand(config);
  std::vector<ordered_json> rows(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < instances.size();)
      rows[i] = run_instance(config, instances[i]);
  };
  const std::size_t nthreads = std::min(config.workers, std::max<std::size_t>(1, instances.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  RunReport report;
  std::sort(rows.begin(), rows.end(), [](const ordered_json& x, const ordered_json& y) {
    return x["index"].get<std::size_t>() < y["index"].get<std::size_t>();
  });
  for (const auto& r : rows) {
    const auto count = [](const std::string& s) {
      return s.empty() ? std::size_t{0}
                       : static_cast<std::size_t>(std::count(s.begin(), s.end(), ';')) + 1;
    };
    report.checks_passed += count(r["checks_passed"].get<std::string>());
    report.checks_failed += count(r["checks_failed"].get<std::string>());
    const auto status = r["status"].get<std::string>();
    if (status == "solver-error") ++report.solver_failures;
    if (status == "error") ++report.errors;
  }
  report.rows = std::move(rows);
  ordered_json env;
  env["version"] = kVersion;
  env["grid"] = config.grid;
  env["b"] = config.b;
  env["bins"] = config.bins;
  env["angular_samples"] = config.angular_samples;
  env["max_mode"] = config.max_mode;
  std::vector<std::string> checks;
  for (Check k : config.checks) checks.push_back(to_string(k));
  env["checks"] = checks;
  report.environment = env;
  return report;
}

int exit_code(const RunReport& report) {
  if (report.solver_failures > 0) return 3;
  if (report.checks_failed > 0 || report.errors > 0) return 1;
  return 0;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_cell(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_number(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

std::string to_csv(const std::vector<ordered_json>& rows,
                   const std::vector<std::string>& columns) {
  std::string out = join(columns, ",") + "\n";
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      if (r.contains(columns[c])) out += csv_cell(r.at(columns[c]));
    }
    out += '\n';
  }
  return out;
}

std::string report_csv(const RunReport& report) {
  return to_csv(report.rows, report_columns());
}

ordered_json report_json(const RunReport& report) {
  ordered_json j;
  j["schema"] = "belab-run-report";
  j["schema_version"] = kReportSchemaVersion;
  j["environment"] = report.environment;
  j["summary"] = {{"instances", report.rows.size()},
                  {"checks_passed", report.checks_passed},
                  {"checks_failed", report.checks_failed},
                  {"solver_failures", report.solver_failures},
                  {"errors", report.errors},
                  {"exit_code", exit_code(report)}};
  j["rows"] = report.rows;
  return j;
}

std::vector<std::filesystem::path> emit(const RunReport& report,
                                        const std::filesystem::path& dir,
                                        const std::vector<std::string>& formats) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& f : formats) {
    std::filesystem::path p;
    std::string body;
    if (f == "csv") {
      p = dir / "report.csv";
      body = report_csv(report);
    } else if (f == "json") {
      p = dir / "report.json";
      body = report_json(report).dump(2) + "\n";
    } else {
      throw ConfigError("unknown output format " + f);
    }
    std::ofstream out(p, std::ios::binary);
    if (!(out << body)) throw Error("cannot write " + p.string());
    written.push_back(p);
  }
  return written;
}

std::string barrier_table(double a, double b, double delta, double mu,
                          std::optional<double> sigma, std::size_t points) {
  if (points < 2) throw DomainError("barrier table needs at least 2 points");
  const BarrierFamily z(a, b, delta, mu, sigma);
  std::string out = "t,xi,eta,z\n";
  for (std::size_t i = 0; i < points; ++i) {
    // Exact endpoints; interior points by linear interpolation in i.
    const double t = i + 1 == points
                         ? kPi / 2
                         : -kPi / 2 + kPi * static_cast<double>(i) / static_cast<double>(points - 1);
    out += format_number(t) + ',' + format_number(xi(t).value) + ',' +
           format_number(eta(t).value) + ',' + format_number(z(t).value) + '\n';
  }
  return out;
}

}  // namespace belab
