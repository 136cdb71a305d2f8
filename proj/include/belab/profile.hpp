#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace belab {

/// Value of a radial function together with its first three derivatives.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// A smooth radial function r -> f(r) evaluated with derivatives.
///
/// Closed-form families carry exact derivatives. Sampled profiles are
/// interpolated with a cubic B-spline; their third derivative is a central
/// difference of the spline's second derivative.
class Profile {
 public:
  using Function = std::function<Jet(double)>;

  /// The zero function.
  Profile();
  Profile(Function fn, std::string description);

  Jet operator()(double r) const { return fn_(r); }
  double value(double r) const { return fn_(r).value; }
  const std::string& description() const noexcept { return description_; }

  /// f(r) + shift.
  Profile shifted(double shift) const;
  /// factor * f(r).
  Profile scaled(double factor) const;
  /// f(r / c); used when the metric is scaled by c^2.
  Profile stretched(double c) const;

  static Profile constant(double c);
  /// radius * sin(r / radius): the round sphere of the given radius.
  static Profile sine(double radius = 1.0);
  /// sin r + beta sin^3 r, a non-round warp with regular poles at 0 and pi.
  static Profile bumped_sine(double beta);
  /// sum_k coeffs[k] * cos(frequency * r)^k.
  static Profile cos_polynomial(std::vector<double> coeffs,
                                double frequency = 1.0);
  /// Uniform samples on [0, length] joined by a cubic B-spline.
  static Profile sampled(std::vector<double> values, double length,
                         std::optional<double> left_slope = std::nullopt,
                         std::optional<double> right_slope = std::nullopt);

 private:
  Function fn_;
  std::string description_;
};

}  // namespace belab
