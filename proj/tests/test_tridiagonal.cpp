#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "belab/tridiagonal.hpp"

using namespace belab;

namespace {

SymmetricTridiagonal random_matrix(std::size_t n, bool cyclic, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymmetricTridiagonal a;
  for (std::size_t i = 0; i < n; ++i) a.diag.push_back(4.0 * u(gen));
  for (std::size_t i = 0; i + 1 < n; ++i) a.off.push_back(u(gen));
  a.cyclic = cyclic;
  if (cyclic) a.corner = u(gen);
  return a;
}

Eigen::VectorXd dense_eigenvalues(const SymmetricTridiagonal& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = a.diag[i];
  for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = a.off[i];
  if (a.cyclic) {
    m(0, n - 1) += a.corner;
    m(n - 1, 0) += a.corner;
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly)
      .eigenvalues();
}

}  // namespace

TEST_CASE("second-difference matrix has the analytic spectrum") {
  const std::size_t n = 200;
  SymmetricTridiagonal a{std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0), 0.0,
                         false};
  for (std::size_t k = 0; k < 10; ++k) {
    const double exact = 2.0 - 2.0 * std::cos((k + 1) * std::numbers::pi / (n + 1));
    CHECK(kth_eigenvalue(a, k) == doctest::Approx(exact).epsilon(1e-13));
  }
  const auto pairs = smallest_eigenpairs(a, 5);
  for (std::size_t k = 0; k < 5; ++k) {
    const double exact = 2.0 - 2.0 * std::cos((k + 1) * std::numbers::pi / (n + 1));
    CHECK(pairs[k].value == doctest::Approx(exact).epsilon(1e-12));
    // v_j = sin(j (k+1) pi / (n+1)) up to sign and scale
    double dot = 0.0, nrm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double s = std::sin((j + 1.0) * (k + 1) * std::numbers::pi / (n + 1));
      dot += s * pairs[k].vector[j];
      nrm += s * s;
    }
    CHECK(std::abs(dot) / std::sqrt(nrm) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("circulant second difference has double eigenvalues") {
  const std::size_t n = 64;
  SymmetricTridiagonal a{std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0), -1.0,
                         true};
  const auto pairs = smallest_eigenpairs(a, 7);
  CHECK(std::abs(pairs[0].value) < 1e-13);
  for (std::size_t k = 1; k <= 3; ++k) {
    const double exact = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n);
    CHECK(pairs[2 * k - 1].value == doctest::Approx(exact).epsilon(1e-12));
    CHECK(pairs[2 * k].value == doctest::Approx(exact).epsilon(1e-12));
  }
  // the repeated eigenvalues still get an orthonormal basis
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double d = 0.0;
      for (std::size_t r = 0; r < n; ++r) d += pairs[i].vector[r] * pairs[j].vector[r];
      CHECK(d == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
    }
}

TEST_CASE("random matrices agree with a dense symmetric eigensolver") {
  for (bool cyclic : {false, true}) {
    for (std::uint32_t seed = 1; seed <= 6; ++seed) {
      const SymmetricTridiagonal a = random_matrix(40 + 7 * seed, cyclic, seed);
      const Eigen::VectorXd ref = dense_eigenvalues(a);
      const auto pairs = smallest_eigenpairs(a, 8);
      for (std::size_t k = 0; k < 8; ++k) {
        CHECK(pairs[k].value == doctest::Approx(ref[k]).epsilon(1e-11));
        CHECK(kth_eigenvalue(a, k) == doctest::Approx(ref[k]).epsilon(1e-11));
        std::vector<double> y(a.size());
        a.multiply(pairs[k].vector, y);
        double res = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          const double e = y[i] - pairs[k].value * pairs[k].vector[i];
          res += e * e;
        }
        CHECK(std::sqrt(res) < 1e-10);
      }
    }
  }
}

TEST_CASE("inertia count matches the dense spectrum") {
  for (bool cyclic : {false, true}) {
    const SymmetricTridiagonal a = random_matrix(60, cyclic, 42);
    const Eigen::VectorXd ref = dense_eigenvalues(a);
    for (double sigma = -6.0; sigma <= 6.0; sigma += 0.37) {
      std::size_t expected = 0;
      for (Eigen::Index i = 0; i < ref.size(); ++i) expected += ref[i] < sigma;
      CHECK(count_below(a, sigma) == expected);
    }
  }
}

TEST_CASE("Gershgorin interval contains the spectrum") {
  const SymmetricTridiagonal a = random_matrix(50, true, 9);
  const auto [lo, hi] = a.gershgorin();
  const Eigen::VectorXd ref = dense_eigenvalues(a);
  CHECK(ref.minCoeff() >= lo);
  CHECK(ref.maxCoeff() <= hi);
  CHECK(a.norm_bound() >= std::max(std::abs(lo), std::abs(hi)));
}

TEST_CASE("results are deterministic") {
  const SymmetricTridiagonal a = random_matrix(80, false, 3);
  const auto p = smallest_eigenpairs(a, 4);
  const auto q = smallest_eigenpairs(a, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(p[k].value == q[k].value);
    CHECK(p[k].vector == q[k].vector);
  }
}
