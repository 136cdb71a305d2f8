#include "belab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "belab/errors.hpp"

namespace belab {

Profile::Profile() : Profile([](double) { return Jet{}; }, "0") {}

Profile::Profile(Function fn, std::string description)
    : fn_(std::move(fn)), description_(std::move(description)) {}

Profile Profile::shifted(double shift) const {
  auto inner = fn_;
  std::ostringstream os;
  os << "(" << description_ << ") + " << shift;
  return Profile(
      [inner, shift](double r) {
        Jet j = inner(r);
        j.value += shift;
        return j;
      },
      os.str());
}

Profile Profile::scaled(double factor) const {
  auto inner = fn_;
  std::ostringstream os;
  os << factor << " * (" << description_ << ")";
  return Profile(
      [inner, factor](double r) {
        Jet j = inner(r);
        return Jet{factor * j.value, factor * j.d1, factor * j.d2,
                   factor * j.d3};
      },
      os.str());
}

Profile Profile::stretched(double c) const {
  if (!(c > 0.0)) throw DomainError("stretch factor must be positive");
  auto inner = fn_;
  std::ostringstream os;
  os << "(" << description_ << ")(r / " << c << ")";
  return Profile(
      [inner, c](double r) {
        Jet j = inner(r / c);
        return Jet{j.value, j.d1 / c, j.d2 / (c * c), j.d3 / (c * c * c)};
      },
      os.str());
}

Profile Profile::constant(double c) {
  std::ostringstream os;
  os << c;
  return Profile([c](double) { return Jet{c, 0.0, 0.0, 0.0}; }, os.str());
}

Profile Profile::sine(double radius) {
  if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
  std::ostringstream os;
  os << radius << " sin(r / " << radius << ")";
  return Profile(
      [radius](double r) {
        const double s = std::sin(r / radius);
        const double c = std::cos(r / radius);
        return Jet{radius * s, c, -s / radius, -c / (radius * radius)};
      },
      os.str());
}

Profile Profile::bumped_sine(double beta) {
  if (!(beta > -1.0)) throw DomainError("bump amplitude must exceed -1");
  std::ostringstream os;
  os << "sin r + " << beta << " sin^3 r";
  return Profile(
      [beta](double r) {
        const double s = std::sin(r);
        const double c = std::cos(r);
        return Jet{s + beta * s * s * s, c + beta * 3.0 * s * s * c,
                   -s + beta * (6.0 * s * c * c - 3.0 * s * s * s),
                   -c + beta * (6.0 * c * c * c - 21.0 * s * s * c)};
      },
      os.str());
}

Profile Profile::cos_polynomial(std::vector<double> coeffs, double frequency) {
  std::ostringstream os;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) os << " + ";
    os << coeffs[k] << " cos^" << k << "(" << frequency << " r)";
  }
  if (coeffs.empty()) os << "0";
  return Profile(
      [coeffs = std::move(coeffs), frequency](double r) {
        // Horner for P, P', P'', P''' at x = cos(w r).
        const double x = std::cos(frequency * r);
        double p = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
          p3 = p3 * x + 3.0 * p2;
          p2 = p2 * x + 2.0 * p1;
          p1 = p1 * x + p;
          p = p * x + *it;
        }
        const double s = std::sin(frequency * r);
        const double w = frequency;
        const double x1 = -w * s;
        const double x2 = -w * w * x;
        const double x3 = w * w * w * s;
        return Jet{p, p1 * x1, p2 * x1 * x1 + p1 * x2,
                   p3 * x1 * x1 * x1 + 3.0 * p2 * x1 * x2 + p1 * x3};
      },
      os.str());
}

Profile Profile::sampled(std::vector<double> values, double length,
                         std::optional<double> left_slope,
                         std::optional<double> right_slope) {
  if (values.size() < 5) throw DomainError("sampled profile needs >= 5 samples");
  if (!(length > 0.0)) throw DomainError("sampled profile length must be positive");
  const double step = length / static_cast<double>(values.size() - 1);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto spline = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
      values.begin(), values.end(), 0.0, step, left_slope.value_or(nan),
      right_slope.value_or(nan));
  std::ostringstream os;
  os << "spline(" << values.size() << " samples on [0, " << length << "])";
  return Profile(
      [spline, step, length](double r) {
        const double x = std::clamp(r, 0.0, length);
        const double e = 1e-3 * step;
        const double lo = std::max(0.0, x - e);
        const double hi = std::min(length, x + e);
        const double d3 =
            (spline->double_prime(hi) - spline->double_prime(lo)) / (hi - lo);
        return Jet{(*spline)(x), spline->prime(x), spline->double_prime(x), d3};
      },
      os.str());
}

}  // namespace belab
