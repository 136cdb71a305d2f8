#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace belab {

/// Real symmetric tridiagonal matrix. When `cyclic` is set, `corner` couples
/// the first and last rows (the periodic Jacobi matrices of a circle).
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] = A(i, i + 1)
  double corner = 0.0;      // A(0, n - 1) when cyclic
  bool cyclic = false;

  std::size_t size() const noexcept { return diag.size(); }
  /// Gershgorin interval [lower, upper] containing the spectrum.
  std::pair<double, double> gershgorin() const;
  /// max(|lower|, |upper|) of the Gershgorin interval.
  double norm_bound() const;
  void multiply(std::span<const double> x, std::span<double> y) const;
};

/// Number of eigenvalues strictly below sigma (Sylvester inertia of A - sigma I).
/// O(n) for both the plain and the cyclic case.
std::size_t count_below(const SymmetricTridiagonal& a, double sigma);

struct EigenPair {
  double value = 0.0;          // Rayleigh quotient of `vector`
  std::vector<double> vector;  // unit Euclidean norm
  double residual = 0.0;       // ||A x - value x||_2
};

struct EigenOptions {
  int max_inverse_iterations = 30;
  /// Convergence when residual <= residual_factor * eps * ||A||.
  double residual_factor = 1e3;
  std::uint32_t seed = 0x5eed;
};

/// The `count` smallest eigenvalues of `a` in ascending order with
/// eigenvectors. Values by Sturm bisection, vectors by inverse iteration
/// with Gram-Schmidt against every previously accepted vector (so repeated
/// eigenvalues get an orthonormal basis). Throws SolverError when a vector
/// fails to converge.
std::vector<EigenPair> smallest_eigenpairs(const SymmetricTridiagonal& a,
                                           std::size_t count,
                                           const EigenOptions& options = {});

/// k-th smallest eigenvalue (0-based) by bisection.
double kth_eigenvalue(const SymmetricTridiagonal& a, std::size_t k);

}  // namespace belab
