#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace belab {

using Rational = boost::rational<std::int64_t>;

/// Rational constants of the eigenvalue and diameter estimates. Converted
/// to double only when a bound is evaluated.
namespace constants {
inline const Rational kLingFraction{31, 100};       // of (n - 1) K
inline const Rational kLingAlphaFraction{31, 50};   // of alpha = (n - 1) K / 2
inline const Rational kSolitonEigenvalue{2, 1};     // lambda = 2 gamma
inline const Rational kLargeAsymmetry{153, 200};    // 0.765
inline const Rational kAsymmetryRatio{153, 100};    // 1.53
}  // namespace constants

double to_double(const Rational& q);

/// Exact square root of a rational whose numerator and denominator are both
/// perfect squares.
std::optional<Rational> exact_sqrt(const Rational& q);

struct Bound {
  std::string name;
  std::string formula;
  double value = 0.0;
  bool applicable = true;
  std::string reason;  // why not applicable
};

/// lambda >= (n - 1) K.
Bound lichnerowicz_be(int n, double k);
/// lambda >= pi^2/d^2 + (31/100)(n - 1) K. `fraction` overrides 31/100.
Bound ling_be_bound(int n, double k, double d,
                    const Rational& fraction = constants::kLingFraction);
/// lambda >= pi^2/d^2 + mu (n - 1) K / 2, valid for a > 0 and
/// mu delta <= 4a/pi^2 with mu in (0, 1].
Bound asymmetric_barrier_bound(int n, double k, double d, double mu, double a,
                               double delta);
/// lambda >= pi^2/d^2 + (n - 1) K / 2, valid when a = 0.
Bound symmetric_barrier_bound(int n, double k, double d);

/// Upper diameter bound pi sqrt((n - 1)/gamma) for Ric >= gamma g.
double myers_upper(int n, double gamma);

enum class LingCase { A, B1, B2a, B2b1, B2b2 };

std::string to_string(LingCase c);

struct CaseResult {
  LingCase label = LingCase::A;
  /// Barrier weight mu when the case is closed by a xi-eta barrier.
  std::optional<double> mu;
  /// Implied lambda >= pi^2/d^2 + alpha_multiple * alpha.
  double alpha_multiple = 1.0;
};

/// Splits (a, delta) in [0, 1) x (0, 1/2] into the five cases of the
/// improved estimate. Every case implies alpha_multiple >= 31/50.
CaseResult ling_case(double a, double delta);

struct DiameterConstant {
  Rational coefficient;   // 2 - 31/100
  Rational root;          // sqrt(coefficient)
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;  // d sqrt(gamma) >= numerator pi / denominator
};

/// 2 gamma >= pi^2/d^2 + (31/100) gamma solved for d, in exact arithmetic.
DiameterConstant derive_diameter_bound(
    const Rational& fraction = constants::kLingFraction);

/// 10 pi / (13 sqrt(gamma)), built from derive_diameter_bound().
double soliton_diameter_lower(double gamma);

enum class GapVerdict { must_be_einstein, nontrivial_soliton_possible };

std::string to_string(GapVerdict v);

/// Strict: only d < soliton_diameter_lower(gamma) forces an Einstein metric.
GapVerdict gap_classifier(double d, double gamma);

struct BoundEntry {
  Bound bound;
  std::optional<double> measured;
  std::optional<double> margin;  // measured - value
};

struct CertifyInputs {
  int n = 2;
  double k = 0.0;
  double d = 0.0;
  std::optional<double> lambda;  // measured first non-zero eigenvalue
  std::optional<double> a;
  std::optional<double> delta;
  std::optional<double> gamma;   // soliton constant, if a soliton claim is made
  Rational ling_fraction = constants::kLingFraction;
};

struct BoundReport {
  CertifyInputs inputs;
  std::vector<BoundEntry> entries;
  std::optional<CaseResult> ling_case;
  std::optional<GapVerdict> gap;
  std::vector<std::string> notes;

  const BoundEntry* find(const std::string& name) const;
};

BoundReport certify(const CertifyInputs& inputs);

}  // namespace belab
