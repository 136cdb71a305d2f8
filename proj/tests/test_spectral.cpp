#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "belab/errors.hpp"
#include "belab/geometry.hpp"
#include "belab/spectral.hpp"

using namespace belab;

namespace {

constexpr double kPi = std::numbers::pi;

Profile cosine(double eps) { return Profile::cos_polynomial({0.0, eps}); }

// Richardson extrapolation of a second-order quantity from N and 2N.
double extrapolate(const WarpedManifold& m, int mode, std::size_t n) {
  const double coarse = first_nonzero_in_mode(m, make_grid(m, n), mode, false).lambda;
  const double fine = first_nonzero_in_mode(m, make_grid(m, 2 * n), mode, false).lambda;
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

TEST_CASE("l = 0 stiffness annihilates constants") {
  const WarpedManifold s = WarpedManifold::unit_sphere(2, cosine(0.4));
  const SpectralProblem p = assemble(s, make_grid(s, 200), 0);
  CHECK(p.left == Boundary::regular);
  CHECK(p.size() == 201);
  const std::vector<double> ones(p.size(), 1.0);
  const std::vector<double> lu = p.apply(ones);
  for (double x : lu) CHECK(std::abs(x) < 1e-9);
}

TEST_CASE("l = 1 adds the potential 1/sin^2 r on S^2 and uses Dirichlet poles") {
  const WarpedManifold s = WarpedManifold::unit_sphere(2);
  const Grid g = make_grid(s, 200);
  const SpectralProblem p1 = assemble(s, g, 1);
  AssemblyOptions dir;
  dir.pole_condition = Boundary::dirichlet;
  const SpectralProblem p0 = assemble(s, g, 0, dir);
  CHECK(p1.left == Boundary::dirichlet);
  CHECK(p1.right == Boundary::dirichlet);
  CHECK(p1.size() == g.size() - 2);
  REQUIRE(p0.size() == p1.size());
  for (std::size_t k = 0; k < p1.size(); ++k) {
    const double r = g.nodes[p1.unknowns[k]];
    CHECK(p0.stiffness.diag[k] - p1.stiffness.diag[k] ==
          doctest::Approx(p1.mass[k] / (std::sin(r) * std::sin(r))).epsilon(1e-12));
  }
  AssemblyOptions reg;
  reg.pole_condition = Boundary::regular;
  CHECK_THROWS_AS(assemble(s, g, 1, reg), AssemblyError);
  CHECK_THROWS_AS(assemble(s, g, -1), AssemblyError);
}

TEST_CASE("assembled operator is self-adjoint in the weighted inner product") {
  const WarpedManifold m = WarpedManifold::interval_sphere(3, kPi, Profile::bumped_sine(0.2),
                                                           Profile::cos_polynomial({0, 0.3, 0.2}));
  std::mt19937 gen(7);
  std::normal_distribution<double> nd;
  for (int mode = 0; mode <= 2; ++mode) {
    const SpectralProblem p = assemble(m, make_grid(m, 300), mode);
    std::vector<double> u(p.size()), v(p.size());
    for (auto& x : u) x = nd(gen);
    for (auto& x : v) x = nd(gen);
    const double auv = p.inner(p.apply(u), v);
    const double uav = p.inner(u, p.apply(v));
    CHECK(auv == doctest::Approx(uav).epsilon(1e-12));
  }
}

TEST_CASE("circle of circumference 2pi matches the discrete Fourier spectrum") {
  const WarpedManifold c = WarpedManifold::circle(2 * kPi);
  const std::size_t n = 400;
  const Grid g = make_grid(c, n);
  const SpectralProblem p = assemble(c, g, 0);
  CHECK(p.left == Boundary::periodic);
  const Spectrum s = solve_eigen(p, 5);
  const double h = g.spacing;
  const double expected[] = {0, 1, 1, 2, 2};
  for (std::size_t j = 0; j < 5; ++j) {
    const double k = expected[j];
    const double discrete = -4.0 / (h * h) * std::pow(std::sin(kPi * k / n), 2);
    CHECK(s.entries[j].eigenvalue == doctest::Approx(discrete).epsilon(1e-10).scale(1.0));
    CHECK(s.entries[j].eigenvalue == doctest::Approx(-k * k).epsilon(1e-3).scale(1.0));
  }
}

TEST_CASE("unit S^2 merged spectrum is 0, -2, -2, ... and -6") {
  const WarpedManifold s = WarpedManifold::unit_sphere(2);
  const Grid g = make_grid(s, 2000);
  std::vector<Spectrum> parts;
  for (int l = 0; l <= 2; ++l) parts.push_back(solve_eigen(assemble(s, g, l), 3));
  const Spectrum all = merge(std::move(parts));
  CHECK(std::abs(all.entries[0].eigenvalue) < 1e-10 * all.scale);
  CHECK(all.entries[0].mode == 0);
  CHECK(all.entries[1].eigenvalue == doctest::Approx(-2.0).epsilon(1e-5));
  CHECK(all.entries[2].eigenvalue == doctest::Approx(-2.0).epsilon(1e-5));
  CHECK(all.entries[3].eigenvalue == doctest::Approx(-6.0).epsilon(1e-5));
  for (std::size_t i = 1; i < all.entries.size(); ++i)
    CHECK(std::abs(all.entries[i].eigenvalue) >= std::abs(all.entries[i - 1].eigenvalue));
  // refinement extrapolation pins the classical values far more tightly
  CHECK(extrapolate(s, 0, 1000) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(extrapolate(s, 1, 1000) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(extrapolate(s, 2, 1000) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("first non-zero eigenvalue of S^n is n") {
  for (int n : {2, 3, 4}) {
    const WarpedManifold s = WarpedManifold::unit_sphere(n);
    const FirstEigen e = first_nonzero_eigenvalue(s, make_grid(s, 2000));
    CHECK(e.lambda == doctest::Approx(n).epsilon(1e-5));
    CHECK(e.error_estimate > 0.0);
    CHECK(e.error_estimate < 1e-5);
    CHECK(std::abs(e.lambda - n) < 3.0 * e.error_estimate);
    CHECK(e.warnings.empty());
    CHECK(e.per_mode.size() == 3);
  }
  const WarpedManifold s4 = WarpedManifold::unit_sphere(4);
  CHECK(extrapolate(s4, 0, 1000) == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("second-order convergence on named families") {
  const WarpedManifold weighted = WarpedManifold::unit_sphere(3, cosine(0.5));
  const double ref = extrapolate(weighted, 1, 4000);
  std::vector<double> errs;
  for (std::size_t n : {250, 500, 1000, 2000})
    errs.push_back(std::abs(first_nonzero_in_mode(weighted, make_grid(weighted, n), 1, false)
                                .lambda - ref));
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    const double p = std::log2(errs[i] / errs[i + 1]);
    CHECK(p >= 1.8);
    CHECK(p <= 2.2);
  }
}

TEST_CASE("weighted sphere obeys the Lichnerowicz-type bound") {
  const WarpedManifold s = WarpedManifold::unit_sphere(2, cosine(0.5));
  const Grid g = make_grid(s, 1000);
  const FirstEigen e = first_nonzero_eigenvalue(s, g);
  CHECK(e.lambda >= 0.5);
  CHECK(e.lambda == doctest::Approx(2.0374).epsilon(1e-4));
  for (double eps : {0.2, 0.6, 0.95})
    for (int n : {2, 3, 5}) {
      const WarpedManifold m = WarpedManifold::unit_sphere(n, cosine(eps));
      const Grid gm = make_grid(m, 800);
      const double k = be_ricci_lower_bound(m, gm).k_eff;
      CHECK(first_nonzero_eigenvalue(m, gm).lambda >= (n - 1) * k - 1e-6);
    }
}

TEST_CASE("eigenfunctions are weighted-orthonormal and eigenvalues nonpositive") {
  const WarpedManifold m = WarpedManifold::interval_sphere(2, kPi, Profile::bumped_sine(0.2),
                                                           cosine(0.3));
  for (int l = 0; l <= 1; ++l) {
    const SpectralProblem p = assemble(m, make_grid(m, 600), l);
    const Spectrum s = solve_eigen(p, 5);
    for (const auto& e : s.entries) CHECK(e.eigenvalue <= 1e-10 * s.scale);
    for (std::size_t i = 0; i < s.entries.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const double d = p.inner(p.restrict_to_unknowns(s.entries[i].radial),
                                 p.restrict_to_unknowns(s.entries[j].radial));
        CHECK(d == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-8).scale(1.0));
      }
    if (l == 0) {
      // constant ground state
      const auto& u = s.entries[0].radial;
      for (double x : u) CHECK(x == doctest::Approx(u[0]).epsilon(1e-8));
    }
  }
}

TEST_CASE("spectrum membership") {
  const WarpedManifold s = WarpedManifold::unit_sphere(2);
  const Grid g = make_grid(s, 1000);
  const Membership two = spectrum_contains(s, g, -2.0, 1e-3);
  CHECK(two.contains);
  CHECK(two.nearest == doctest::Approx(-2.0).epsilon(1e-4));
  const Membership three = spectrum_contains(s, g, -3.0, 1e-3);
  CHECK_FALSE(three.contains);
  CHECK(three.gap == doctest::Approx(1.0).epsilon(1e-3));
  const WarpedManifold m = WarpedManifold::unit_sphere(3, cosine(0.7));
  CHECK(spectrum_contains(m, make_grid(m, 300), 0.0, 1e-6).contains);
}

TEST_CASE("non-positive K_eff raises a warning") {
  const WarpedManifold s = WarpedManifold::unit_sphere(2, cosine(-1.5));
  const FirstEigen e = first_nonzero_eigenvalue(s, make_grid(s, 400));
  CHECK(e.lambda > 0.0);
  CHECK_FALSE(e.warnings.empty());
}

TEST_CASE("solves are deterministic") {
  const WarpedManifold s = WarpedManifold::unit_sphere(3, cosine(0.3));
  const Grid g = make_grid(s, 500);
  const FirstEigen a = first_nonzero_eigenvalue(s, g);
  const FirstEigen b = first_nonzero_eigenvalue(s, g);
  CHECK(a.lambda == b.lambda);
  CHECK(a.radial == b.radial);
}
