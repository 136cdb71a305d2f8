#include "belab/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "belab/errors.hpp"

namespace belab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<std::int64_t> integer_sqrt(std::int64_t v) {
  if (v < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r != v) return std::nullopt;
  return r;
}

Bound inapplicable(std::string name, std::string formula, std::string reason) {
  return {std::move(name), std::move(formula), kNaN, false, std::move(reason)};
}

std::optional<std::string> check_basic(int n, double k) {
  if (n < 2) return "needs n >= 2";
  if (!(k > 0.0)) return "needs K > 0";
  return std::nullopt;
}

}  // namespace

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) /
         static_cast<double>(q.denominator());
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  const auto num = integer_sqrt(q.numerator());
  const auto den = integer_sqrt(q.denominator());
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

Bound lichnerowicz_be(int n, double k) {
  const char* name = "lichnerowicz";
  const char* formula = "(n-1) K";
  if (auto why = check_basic(n, k)) return inapplicable(name, formula, *why);
  return {name, formula, (n - 1.0) * k, true, {}};
}

Bound ling_be_bound(int n, double k, double d, const Rational& fraction) {
  const char* name = "ling";
  std::ostringstream formula;
  formula << "pi^2/d^2 + " << fraction << " (n-1) K";
  if (auto why = check_basic(n, k)) return inapplicable(name, formula.str(), *why);
  if (!(d > 0.0)) return inapplicable(name, formula.str(), "needs d > 0");
  return {name, formula.str(),
          kPi * kPi / (d * d) + to_double(fraction) * (n - 1.0) * k, true, {}};
}

Bound asymmetric_barrier_bound(int n, double k, double d, double mu, double a,
                               double delta) {
  const char* name = "asymmetric-barrier";
  const char* formula = "pi^2/d^2 + mu (n-1) K / 2";
  if (auto why = check_basic(n, k)) return inapplicable(name, formula, *why);
  if (!(d > 0.0)) return inapplicable(name, formula, "needs d > 0");
  if (!(a > 0.0)) return inapplicable(name, formula, "needs a > 0");
  if (!(mu > 0.0 && mu <= 1.0)) return inapplicable(name, formula, "needs mu in (0, 1]");
  // mu = 4a/(pi^2 delta) meets the hypothesis with equality; allow rounding.
  const double cap = 4.0 * a / (kPi * kPi);
  if (mu * delta > cap * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))
    return inapplicable(name, formula, "needs mu delta <= 4a/pi^2");
  return {name, formula, kPi * kPi / (d * d) + 0.5 * mu * (n - 1.0) * k, true, {}};
}

Bound symmetric_barrier_bound(int n, double k, double d) {
  const char* name = "symmetric-barrier";
  const char* formula = "pi^2/d^2 + (n-1) K / 2";
  if (auto why = check_basic(n, k)) return inapplicable(name, formula, *why);
  if (!(d > 0.0)) return inapplicable(name, formula, "needs d > 0");
  return {name, formula, kPi * kPi / (d * d) + 0.5 * (n - 1.0) * k, true, {}};
}

double myers_upper(int n, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("Myers bound needs gamma > 0");
  if (n < 2) throw DomainError("Myers bound needs n >= 2");
  return kPi * std::sqrt((n - 1.0) / gamma);
}

std::string to_string(LingCase c) {
  switch (c) {
    case LingCase::A: return "A";
    case LingCase::B1: return "B-1";
    case LingCase::B2a: return "B-2-a";
    case LingCase::B2b1: return "B-2-b1";
    case LingCase::B2b2: return "B-2-b2";
  }
  return "?";
}

CaseResult ling_case(double a, double delta) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError("ling_case needs a in [0, 1)");
  if (!(delta > 0.0 && delta <= 0.5))
    throw DomainError("ling_case needs delta in (0, 1/2]");
  const double pi2 = kPi * kPi;
  if (a == 0.0) return {LingCase::A, 1.0, 1.0};
  if (pi2 * delta / 4.0 <= a) return {LingCase::B1, 1.0, 1.0};
  const double mu = 4.0 * a / (pi2 * delta);
  if (to_double(constants::kLargeAsymmetry) <= a)
    // lambda >= pi^2/d^2 + (4a/pi^2) lambda combined with lambda >= 2 alpha.
    return {LingCase::B2a, mu, 8.0 * a / pi2};
  if (to_double(constants::kAsymmetryRatio) * delta <= a)
    return {LingCase::B2b1, mu, mu};
  return {LingCase::B2b2, std::nullopt, to_double(constants::kLingAlphaFraction)};
}

DiameterConstant derive_diameter_bound(const Rational& fraction) {
  DiameterConstant out;
  out.coefficient = constants::kSolitonEigenvalue - fraction;
  const auto root = exact_sqrt(out.coefficient);
  if (!root) throw Error("diameter coefficient is not a rational square");
  out.root = *root;
  // pi^2/d^2 <= coefficient gamma  =>  d sqrt(gamma) >= pi / root.
  const Rational inverse = Rational(1) / out.root;
  out.numerator = inverse.numerator();
  out.denominator = inverse.denominator();
  return out;
}

double soliton_diameter_lower(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("soliton diameter bound needs gamma > 0");
  static const DiameterConstant c = derive_diameter_bound();
  return static_cast<double>(c.numerator) * kPi /
         static_cast<double>(c.denominator) / std::sqrt(gamma);
}

std::string to_string(GapVerdict v) {
  return v == GapVerdict::must_be_einstein ? "must-be-Einstein"
                                           : "nontrivial-soliton-possible";
}

GapVerdict gap_classifier(double d, double gamma) {
  if (!(d > 0.0)) throw DomainError("gap classifier needs d > 0");
  return d < soliton_diameter_lower(gamma) ? GapVerdict::must_be_einstein
                                           : GapVerdict::nontrivial_soliton_possible;
}

const BoundEntry* BoundReport::find(const std::string& name) const {
  for (const BoundEntry& e : entries)
    if (e.bound.name == name) return &e;
  return nullptr;
}

BoundReport certify(const CertifyInputs& in) {
  BoundReport out;
  out.inputs = in;
  auto add = [&](Bound b) {
    BoundEntry e{std::move(b), in.lambda, std::nullopt};
    if (e.bound.applicable && in.lambda) e.margin = *in.lambda - e.bound.value;
    out.entries.push_back(std::move(e));
  };
  add(lichnerowicz_be(in.n, in.k));
  add(ling_be_bound(in.n, in.k, in.d, in.ling_fraction));
  if (in.a && in.delta && *in.delta > 0.0 && *in.delta <= 0.5 && *in.a >= 0.0 &&
      *in.a < 1.0) {
    out.ling_case = ling_case(*in.a, *in.delta);
    if (*in.a == 0.0) {
      add(symmetric_barrier_bound(in.n, in.k, in.d));
    } else if (out.ling_case->mu) {
      add(asymmetric_barrier_bound(in.n, in.k, in.d, *out.ling_case->mu, *in.a,
                                   *in.delta));
    }
    Bound c{"case", "pi^2/d^2 + m alpha", kNaN, false, "needs K > 0, d > 0"};
    if (in.n >= 2 && in.k > 0.0 && in.d > 0.0) {
      std::ostringstream f;
      f << "pi^2/d^2 + " << out.ling_case->alpha_multiple << " alpha ["
        << to_string(out.ling_case->label) << "]";
      c = {"case", f.str(),
           kPi * kPi / (in.d * in.d) +
               out.ling_case->alpha_multiple * 0.5 * (in.n - 1.0) * in.k,
           true, {}};
    }
    add(std::move(c));
  } else if (in.a || in.delta) {
    out.notes.push_back("case analysis skipped: (a, delta) outside [0,1) x (0,1/2]");
  }
  if (in.gamma) {
    out.gap = gap_classifier(in.d, *in.gamma);
    out.entries.push_back({{"soliton-diameter-lower", "10 pi / (13 sqrt(gamma))",
                            soliton_diameter_lower(*in.gamma), true, {}},
                           in.d, in.d - soliton_diameter_lower(*in.gamma)});
    if (in.n >= 2)
      out.entries.push_back({{"myers-upper", "pi sqrt((n-1)/gamma)",
                              myers_upper(in.n, *in.gamma), true, {}},
                             in.d, myers_upper(in.n, *in.gamma) - in.d});
    if (in.n < 4)
      out.notes.push_back(
          "nontrivial compact shrinking solitons require n >= 4; the soliton "
          "diameter bound is informational for n = " + std::to_string(in.n));
  }
  return out;
}

}  // namespace belab
