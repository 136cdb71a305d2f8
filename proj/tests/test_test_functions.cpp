#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "belab/errors.hpp"
#include "belab/estimates.hpp"
#include "belab/test_functions.hpp"

using namespace belab;
using boost::math::quadrature::gauss_kronrod;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalf = kPi / 2;

// Antiderivative of xi: d/dt [t + (t^2 - pi^2/4) tan t] = xi(t).
double xi_antiderivative(double t) { return t + (t * t - kPi * kPi / 4) * std::tan(t); }

double integrate(double (*f)(double), double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

double xi_value(double t) { return xi(t).value; }
double eta_value(double t) { return eta(t).value; }

// Limit at pi/2 from closed-form values at e, 2e, 4e below it: removes the
// e and e^2 terms of the endpoint expansion.
double endpoint_limit(double (*f)(double)) {
  const double e = 1e-3;
  const double f1 = f(kHalf - e), f2 = f(kHalf - 2 * e), f4 = f(kHalf - 4 * e);
  return (8 * f1 - 6 * f2 + f4) / 3;
}

}  // namespace

TEST_CASE("values at zero") {
  CHECK(xi(0.0).value == doctest::Approx(1 - kPi * kPi / 4).epsilon(1e-15));
  CHECK(xi(0.0).value == doctest::Approx(-1.46740).epsilon(1e-5));
  CHECK(eta(0.0).value == 0.0);
  CHECK(xi(0.0).d1 == 0.0);
}

TEST_CASE("endpoint values agree with a numeric limit of the closed form") {
  CHECK(xi(kHalf).value == 0.0);
  CHECK(xi(-kHalf).value == 0.0);
  CHECK(eta(kHalf).value == 1.0);
  CHECK(eta(-kHalf).value == -1.0);
  CHECK(std::abs(endpoint_limit(xi_closed_form) - xi(kHalf).value) < 1e-8);
  CHECK(std::abs(endpoint_limit(eta_closed_form) - eta(kHalf).value) < 1e-8);
  // a single closed-form sample 1e-4 inside is already O(1e-4) close
  CHECK(std::abs(xi_closed_form(kHalf - 1e-4)) < 3e-4);
  CHECK(std::abs(eta_closed_form(kHalf - 1e-4) - 1.0) < 3e-4);
}

TEST_CASE("series and closed form agree inside the series window") {
  // the closed form loses about eps/e^2 to cancellation, so stay at e >= 0.02
  for (double e = 0.02; e < kSeriesWindow; e += 0.005) {
    CHECK(std::abs(xi(kHalf - e).value - xi_closed_form(kHalf - e)) < 1e-10);
    CHECK(std::abs(eta(kHalf - e).value - eta_closed_form(kHalf - e)) < 1e-10);
  }
  // no jump in value or derivatives across the switch
  const double in = kHalf - kSeriesWindow * (1 - 1e-12);
  const double out = kHalf - kSeriesWindow * (1 + 1e-12);
  for (auto f : {xi, eta}) {
    CHECK(f(in).value == doctest::Approx(f(out).value).epsilon(1e-10));
    CHECK(f(in).d1 == doctest::Approx(f(out).d1).epsilon(1e-9));
    CHECK(f(in).d2 == doctest::Approx(f(out).d2).epsilon(1e-8));
  }
}

TEST_CASE("xi is even and eta is odd") {
  for (int i = 0; i <= 10000; ++i) {
    const double t = kHalf * i / 10000.0;
    REQUIRE(std::abs(xi(t).value - xi(-t).value) <= 1e-12);
    REQUIRE(std::abs(eta(t).value + eta(-t).value) <= 1e-12);
  }
}

TEST_CASE("analytic derivatives match differences of the closed form") {
  const double h = 1e-5;
  for (double t = -1.4; t <= 1.4; t += 0.1) {
    for (auto [f, closed] : {std::pair{xi, xi_closed_form}, std::pair{eta, eta_closed_form}}) {
      const double d1 = (closed(t + h) - closed(t - h)) / (2 * h);
      const double d2 = (closed(t + h) - 2 * closed(t) + closed(t - h)) / (h * h);
      CHECK(f(t).d1 == doctest::Approx(d1).epsilon(1e-7).scale(1));
      CHECK(f(t).d2 == doctest::Approx(d2).epsilon(1e-4).scale(1));
    }
  }
}

TEST_CASE("integrals: xi against its antiderivative, eta by oddness") {
  for (double a : {0.3, 1.0, 1.5}) {
    const double exact = xi_antiderivative(a) - xi_antiderivative(-a);
    CHECK(integrate(xi_value, -a, a) == doctest::Approx(exact).epsilon(1e-12));
  }
  // the antiderivative tends to -pi/2 at pi/2
  CHECK(xi_antiderivative(kHalf - 1e-7) == doctest::Approx(-kHalf).epsilon(1e-6));
  CHECK(std::abs(integrate(xi_value, -kHalf, kHalf) + kPi) < 1e-8);
  CHECK(std::abs(integrate(eta_value, -kHalf, kHalf)) < 1e-8);
}

TEST_CASE("outside the domain") {
  CHECK_THROWS_AS(xi(1.6), DomainError);
  CHECK_THROWS_AS(eta(-1.6), DomainError);
}

TEST_CASE("barrier examples") {
  CHECK(barrier_z(0.0, 0.0, 1.01, 0.1, 1.0) == doctest::Approx(0.85326).epsilon(1e-5));
  for (double a : {0.0, 0.3, 0.9})
    CHECK(barrier_z(kHalf, a, 1.01, 0.2, 0.7) == doctest::Approx(1 + a / 1.01).epsilon(1e-15));
  for (double t : {-1.2, -0.3, 0.0, 0.8, 1.5})
    CHECK(barrier_z_sigma(t, 0.4, 1.01, 0.3, 0.0) == barrier_z(t, 0.4, 1.01, 0.3, 1.0));
  // c = a/b = 0.1, delta = 0.05, sigma = 1
  const double b = 1.2, a = 0.12;
  CHECK(barrier_z_sigma(0.0, a, b, 0.05, 1.0) == doctest::Approx(0.94130).epsilon(1e-5));
  CHECK(barrier_z_sigma(kHalf, a, b, 0.05, 1.0) == doctest::Approx(1.1).epsilon(1e-15));
}

TEST_CASE("barrier family") {
  const BarrierFamily z(0.3, 1.01, 0.25, 0.8);
  CHECK(z.c() == doctest::Approx(0.3 / 1.01));
  CHECK(z.xi_weight() == doctest::Approx(0.2));
  CHECK(z.half_width() == doctest::Approx(std::asin(1 / 1.01)));
  const TestJet j = z(0.4);
  CHECK(j.value == doctest::Approx(1 + z.c() * eta(0.4).value + 0.2 * xi(0.4).value));
  CHECK(j.d1 == doctest::Approx(z.c() * eta(0.4).d1 + 0.2 * xi(0.4).d1));
  CHECK(j.d2 == doctest::Approx(z.c() * eta(0.4).d2 + 0.2 * xi(0.4).d2));
  const BarrierFamily s(0.3, 1.01, 0.25, 1.0, 2.0);
  CHECK(s.xi_weight() == doctest::Approx(0.25 - 2.0 * s.c() * s.c()));
  const BarrierFamily sym = BarrierFamily::symmetric(0.25);
  CHECK(sym(0.0).value == doctest::Approx(1 + 0.25 * (1 - kPi * kPi / 4)));
  CHECK_THROWS(BarrierFamily(-0.1, 1.01, 0.25, 1.0));
  CHECK_THROWS(BarrierFamily(0.1, 1.0, 0.25, 1.0));
}

TEST_CASE("integral of z is (1 - mu delta) pi for a = 0") {
  for (double mu : {0.25, 0.5, 1.0})
    for (double delta : {0.1, 0.25, 0.5}) {
      const LengthLedger l = length_integral_check(1.0, 1.0, BarrierFamily(0, 1.01, delta, mu));
      CHECK(std::abs(l.z_integral - (1 - mu * delta) * kPi) < 1e-8);
    }
  // eta integrates to zero, so the asymmetric part does not change it
  const LengthLedger l = length_integral_check(1.0, 1.0, BarrierFamily(0.5, 1.01, 0.2, 0.5));
  CHECK(std::abs(l.z_integral - 0.9 * kPi) < 1e-8);
}

TEST_CASE("the symmetric barrier satisfies the touching-point estimate with equality") {
  const double delta = 0.25;
  const BarrierFamily z = BarrierFamily::symmetric(delta);
  for (int i = 0; i <= 10000; ++i) {
    const double t = -kHalf + kPi * i / 10000.0;
    const TestEstimate e = test_estimate_residual(z(t), t, 0.0, 1.01, delta);
    REQUIRE(e.symmetric >= -1e-10);
    REQUIRE(std::abs(e.symmetric) <= 1e-10);
  }
}
