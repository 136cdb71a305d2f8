#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "belab/errors.hpp"
#include "belab/geometry.hpp"

using namespace belab;
using boost::math::quadrature::gauss_kronrod;

namespace {

constexpr double kPi = std::numbers::pi;

double total(const std::vector<double>& q) {
  double s = 0.0;
  for (double x : q) s += x;
  return s;
}

// Embedded unit sphere and its induced geometry by finite differences only.
using Vec3 = std::array<double, 3>;

Vec3 embed(double r, double th) {
  return {std::sin(r) * std::cos(th), std::sin(r) * std::sin(th), std::cos(r)};
}

// Metric components (g_rr, g_rt, g_tt) from difference quotients of the embedding.
std::array<double, 3> metric(double r, double th) {
  const double h = 1e-5;
  Vec3 xr, xt;
  const Vec3 a = embed(r + h, th), b = embed(r - h, th);
  const Vec3 c = embed(r, th + h), d = embed(r, th - h);
  for (int k = 0; k < 3; ++k) {
    xr[k] = (a[k] - b[k]) / (2 * h);
    xt[k] = (c[k] - d[k]) / (2 * h);
  }
  double grr = 0, grt = 0, gtt = 0;
  for (int k = 0; k < 3; ++k) {
    grr += xr[k] * xr[k];
    grt += xr[k] * xt[k];
    gtt += xt[k] * xt[k];
  }
  return {grr, grt, gtt};
}

struct FdHessian {
  double rr;  // Hess(e_r, e_r)
  double tt;  // Hess(e_t, e_t) / |d_t|^2
};

// Covariant Hessian of the ambient height function eps * z restricted to the
// sphere, through numerically differentiated Christoffel symbols.
FdHessian fd_hessian(double eps, double r) {
  const double th = 0.3;
  auto f = [&](double rr, double tt) { return eps * embed(rr, tt)[2]; };
  const double h = 1e-4;
  const double fr = (f(r + h, th) - f(r - h, th)) / (2 * h);
  const double ft = (f(r, th + h) - f(r, th - h)) / (2 * h);
  const double frr = (f(r + h, th) - 2 * f(r, th) + f(r - h, th)) / (h * h);
  const double ftt = (f(r, th + h) - 2 * f(r, th) + f(r, th - h)) / (h * h);
  const auto g = metric(r, th);
  const auto gp = metric(r + h, th), gm = metric(r - h, th);
  const auto tp = metric(r, th + h), tm = metric(r, th - h);
  const double d_r_grr = (gp[0] - gm[0]) / (2 * h), d_r_gtt = (gp[2] - gm[2]) / (2 * h);
  const double d_t_grr = (tp[0] - tm[0]) / (2 * h), d_t_gtt = (tp[2] - tm[2]) / (2 * h);
  // Orthogonal coordinates: g_rt vanishes (checked by the caller).
  const double G_r_rr = 0.5 * d_r_grr / g[0];
  const double G_t_rr = -0.5 * d_t_grr / g[2];
  const double G_r_tt = -0.5 * d_r_gtt / g[0];
  const double G_t_tt = 0.5 * d_t_gtt / g[2];
  return {(frr - G_r_rr * fr - G_t_rr * ft) / g[0], (ftt - G_r_tt * fr - G_t_tt * ft) / g[2]};
}

}  // namespace

TEST_CASE("round spheres are Einstein with R = n(n-1)") {
  for (int n = 2; n <= 5; ++n) {
    const WarpedManifold s = WarpedManifold::unit_sphere(n);
    const CurvatureProfile k = curvature(s, make_grid(s, 400));
    for (std::size_t i = 0; i < k.radius.size(); ++i) {
      CHECK(k.ric_rr[i] == doctest::Approx(n - 1.0).epsilon(1e-10));
      CHECK(k.ric_tan[i] == doctest::Approx(n - 1.0).epsilon(1e-10));
      CHECK(k.scalar[i] == doctest::Approx(n * (n - 1.0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("unit S^4 has scalar curvature 12") {
  const WarpedManifold s = WarpedManifold::unit_sphere(4);
  const CurvatureProfile k = curvature(s, make_grid(s, 100));
  for (double r : k.scalar) CHECK(r == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("Bakry-Emery Ricci of S^2 with eps cos r matches a finite-difference Hessian") {
  const double eps = 0.7;
  const WarpedManifold s = WarpedManifold::unit_sphere(2, Profile::cos_polynomial({0.0, eps}));
  const Grid g = make_grid(s, 200);
  const CurvatureProfile k = curvature(s, g);
  const double window = pole_window(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = g.nodes[i];
    // quadratic pole interpolation: O(window^4) inside the window
    const bool near_pole = r < window || r > kPi - window;
    const double tol = near_pole ? 1e-5 : 1e-10;
    CHECK(k.be_rr[i] == doctest::Approx(1.0 - eps * std::cos(r)).epsilon(1e-10));
    CHECK(k.be_tan[i] == doctest::Approx(1.0 - eps * std::cos(r)).epsilon(tol));
    if (r < 0.2 || r > kPi - 0.2) continue;
    REQUIRE(std::abs(metric(r, 0.3)[1]) < 1e-9);
    const FdHessian fd = fd_hessian(eps, r);
    // Ric of the embedded unit sphere is the metric, so Ric_phi = 1 + Hess.
    CHECK(k.be_rr[i] == doctest::Approx(1.0 + fd.rr).epsilon(1e-5));
    CHECK(k.be_tan[i] == doctest::Approx(1.0 + fd.tt).epsilon(1e-5));
  }
}

TEST_CASE("surface Ricci equals -w''/w from differences of w alone") {
  const WarpedManifold m = WarpedManifold::interval_sphere(2, kPi, Profile::bumped_sine(0.2));
  const Grid g = make_grid(m, 400);
  const CurvatureProfile k = curvature(m, g);
  const double h = 1e-4;
  for (std::size_t i = 20; i + 20 < g.size(); i += 7) {
    const double r = g.nodes[i];
    const auto w = [&](double x) { return m.warp().value(x); };
    const double gauss = -(w(r + h) - 2 * w(r) + w(r - h)) / (h * h) / w(r);
    CHECK(k.ric_rr[i] == doctest::Approx(gauss).epsilon(1e-6));
    CHECK(k.ric_tan[i] == doctest::Approx(gauss).epsilon(1e-6));
  }
}

TEST_CASE("pole values stay finite and continuous for a non-round warp") {
  const WarpedManifold m = WarpedManifold::interval_sphere(3, kPi, Profile::bumped_sine(0.1),
                                                           Profile::cos_polynomial({0, 0.2}));
  const CurvatureProfile k = curvature(m, make_grid(m, 1000));
  for (std::size_t i = 0; i < k.radius.size(); ++i) {
    REQUIRE(std::isfinite(k.ric_tan[i]));
    REQUIRE(std::isfinite(k.scalar[i]));
  }
  CHECK(k.ric_tan[0] == doctest::Approx(k.ric_tan[1]).epsilon(1e-3));
  CHECK(k.ric_rr[0] == doctest::Approx(k.ric_rr[1]).epsilon(1e-3));
}

TEST_CASE("K_eff examples") {
  const WarpedManifold s3 = WarpedManifold::unit_sphere(3);
  CHECK(be_ricci_lower_bound(s3, make_grid(s3, 200)).k_eff == doctest::Approx(1.0));

  const WarpedManifold half = WarpedManifold::unit_sphere(2, Profile::cos_polynomial({0, 0.5}));
  const RicciBound b = be_ricci_lower_bound(half, make_grid(half, 200));
  CHECK(b.k_eff == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.radius == doctest::Approx(0.0));
  CHECK_FALSE(b.flagged);

  const WarpedManifold neg = WarpedManifold::unit_sphere(2, Profile::cos_polynomial({0, -1.0}));
  const RicciBound nb = be_ricci_lower_bound(neg, make_grid(neg, 200));
  CHECK(nb.k_eff == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(nb.radius == doctest::Approx(kPi));
  CHECK(nb.flagged);

  // per-n value for phi = eps cos r on S^n is 1 - eps/(n-1)
  const WarpedManifold s4 = WarpedManifold::unit_sphere(4, Profile::cos_polynomial({0, 0.9}));
  CHECK(be_ricci_lower_bound(s4, make_grid(s4, 200)).k_eff == doctest::Approx(1.0 - 0.3));

  const WarpedManifold c = WarpedManifold::circle(2 * kPi);
  CHECK(be_ricci_lower_bound(c, make_grid(c, 64)).flagged);
}

TEST_CASE("diameter") {
  CHECK(diameter(WarpedManifold::unit_sphere(5)) == doctest::Approx(kPi));
  CHECK(diameter(WarpedManifold::circle(2 * kPi)) == doctest::Approx(kPi));
  const WarpedManifold m = WarpedManifold::interval_sphere(
      2, 2.5, Profile::sine(2.5 / kPi));
  CHECK(diameter(m) == 2.5);
}

TEST_CASE("scaling the metric by c^2 scales d by c and Ric by 1/c^2") {
  const WarpedManifold m = WarpedManifold::interval_sphere(3, kPi, Profile::bumped_sine(0.15),
                                                           Profile::cos_polynomial({0, 0.3}));
  for (double c : {0.5, 2.0, 3.0}) {
    const WarpedManifold mc = m.rescaled(c);
    CHECK(diameter(mc) == doctest::Approx(c * diameter(m)));
    const CurvatureProfile k = curvature(m, make_grid(m, 300));
    const CurvatureProfile kc = curvature(mc, make_grid(mc, 300));
    for (std::size_t i = 0; i < k.radius.size(); i += 11) {
      CHECK(kc.radius[i] == doctest::Approx(c * k.radius[i]));
      CHECK(kc.ric_rr[i] * c * c == doctest::Approx(k.ric_rr[i]).epsilon(1e-9));
      CHECK(kc.ric_tan[i] * c * c == doctest::Approx(k.ric_tan[i]).epsilon(1e-9));
      CHECK(kc.be_rr[i] * c * c == doctest::Approx(k.be_rr[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("weighted measure") {
  const WarpedManifold s2 = WarpedManifold::unit_sphere(2);
  const Grid g = make_grid(s2, 400);
  const std::vector<double> q = weighted_measure(s2, g);
  CHECK(total(q) == doctest::Approx(4 * kPi).epsilon(1e-10));
  double first_moment = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) first_moment += q[i] * std::cos(g.nodes[i]);
  CHECK(std::abs(first_moment) < 1e-12);

  const WarpedManifold s3 = WarpedManifold::unit_sphere(3);
  CHECK(total(weighted_measure(s3, make_grid(s3, 400))) ==
        doctest::Approx(2 * kPi * kPi).epsilon(1e-10));

  const WarpedManifold wt = WarpedManifold::unit_sphere(2, Profile::cos_polynomial({0, 1.0}));
  const double oracle = gauss_kronrod<double, 61>::integrate(
      [](double r) { return 2 * kPi * std::sin(r) * std::exp(-std::cos(r)); }, 0.0, kPi, 10,
      1e-14);
  CHECK(oracle == doctest::Approx(2 * kPi * (std::exp(1.0) - std::exp(-1.0))).epsilon(1e-13));
  CHECK(std::abs(total(weighted_measure(wt, make_grid(wt, 2000))) - oracle) < 1e-8);
}

TEST_CASE("weighted measure converges at fourth order") {
  const WarpedManifold m = WarpedManifold::interval_sphere(3, kPi, Profile::bumped_sine(0.2),
                                                           Profile::cos_polynomial({0, 0.4, 0.3}));
  const double oracle = unit_sphere_area(2) * gauss_kronrod<double, 61>::integrate(
      [&](double r) {
        const double w = m.warp().value(r);
        return w * w * std::exp(-m.density().value(r));
      },
      0.0, kPi, 10, 1e-15);
  const double e1 = std::abs(total(weighted_measure(m, make_grid(m, 100))) - oracle);
  const double e2 = std::abs(total(weighted_measure(m, make_grid(m, 200))) - oracle);
  CHECK(std::log2(e1 / e2) > 3.5);
  CHECK(std::abs(total(weighted_measure(m, make_grid(m, 2000))) - oracle) < 1e-8);
}

TEST_CASE("circle measure is the periodic trapezoid rule") {
  const WarpedManifold c = WarpedManifold::circle(2 * kPi, Profile::cos_polynomial({0, 0.5}));
  const Grid g = make_grid(c, 64);
  CHECK(g.size() == 64);
  // int_0^{2pi} e^{-0.5 cos r} dr = 2 pi I_0(0.5)
  CHECK(total(weighted_measure(c, g)) ==
        doctest::Approx(2 * kPi * std::cyl_bessel_i(0.0, 0.5)).epsilon(1e-13));
}

TEST_CASE("invalid models are rejected") {
  CHECK_THROWS_AS(WarpedManifold::interval_sphere(1, kPi, Profile::sine()), DomainError);
  CHECK_THROWS_AS(WarpedManifold::interval_sphere(2, -1.0, Profile::sine()), DomainError);
  const WarpedManifold off =
      WarpedManifold::interval_sphere(2, kPi, Profile::sine().shifted(0.1));
  CHECK_THROWS_AS(off.validate(), PoleRegularityError);
  CHECK_THROWS_AS(curvature(off, make_grid(off, 100)), PoleRegularityError);
  const WarpedManifold cone =
      WarpedManifold::interval_sphere(2, kPi, Profile::sine().scaled(2.0));
  CHECK_THROWS_AS(cone.validate(), PoleRegularityError);
  const WarpedManifold tilted = WarpedManifold::unit_sphere(2, Profile::sine());
  CHECK_THROWS_AS(tilted.validate(), PoleRegularityError);
  const WarpedManifold c = WarpedManifold::circle(5.0, Profile::cos_polynomial({0, 1.0}));
  CHECK_THROWS_AS(c.validate(), PoleRegularityError);
  CHECK_THROWS_AS(make_grid(WarpedManifold::unit_sphere(2), 4), DomainError);
}

TEST_CASE("grids") {
  const Grid g = make_grid(WarpedManifold::unit_sphere(2), 100);
  CHECK(g.size() == 101);
  CHECK(g.cells() == 100);
  CHECK(g.nodes.front() == 0.0);
  CHECK(g.nodes.back() == doctest::Approx(kPi));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.nodes[i] > g.nodes[i - 1]);
  CHECK(g.weights.front() == 0.0);  // w^{n-1} vanishes at the poles
  for (std::size_t i = 1; i + 1 < g.size(); ++i) CHECK(g.weights[i] > 0.0);
}
