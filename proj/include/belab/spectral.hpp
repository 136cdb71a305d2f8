#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "belab/geometry.hpp"
#include "belab/tridiagonal.hpp"

namespace belab {

enum class Boundary { regular, dirichlet, periodic };

std::string to_string(Boundary b);

/// Radial part of the drift Laplacian for one angular mode l,
///   u'' + ((n-1) w'/w - phi') u' - l(l+n-2)/w^2 u = (1/rho)(rho u')' - V u,
/// with rho = w^{n-1} e^{-phi}, discretised in flux form with half-node
/// coefficients. `stiffness` is symmetric and `mass` diagonal, so
/// Delta_phi u ~ mass^{-1} stiffness u and the operator is self-adjoint in
/// <u, v> = sum_i mass_i u_i v_i.
struct SpectralProblem {
  WarpedManifold model;
  Grid grid;
  int mode = 0;
  Boundary left = Boundary::regular;
  Boundary right = Boundary::regular;
  std::vector<std::size_t> unknowns;  // grid index of each unknown
  std::vector<double> mass;
  SymmetricTridiagonal stiffness;

  std::size_t size() const noexcept { return unknowns.size(); }
  /// (Delta_phi u) at the unknowns for u given at the unknowns.
  std::vector<double> apply(std::span<const double> u) const;
  double inner(std::span<const double> u, std::span<const double> v) const;
  /// Norm bound of the symmetrised operator; the natural eigenvalue scale.
  double scale() const;
  /// Restrict grid samples to the unknowns.
  std::vector<double> restrict_to_unknowns(std::span<const double> samples) const;
  /// Extend unknown values to the whole grid (Dirichlet nodes are zero).
  std::vector<double> extend_to_grid(std::span<const double> u) const;
};

struct AssemblyOptions {
  /// Pole condition override; by default regular for l = 0, Dirichlet else.
  std::optional<Boundary> pole_condition;
};

SpectralProblem assemble(const WarpedManifold& model, const Grid& grid,
                         int mode, const AssemblyOptions& options = {});

struct SpectralEntry {
  double eigenvalue = 0.0;  // mu <= 0 with Delta_phi u = mu u
  int mode = 0;
  std::vector<double> radial;  // samples on the full grid, mass-orthonormal
  double residual = 0.0;       // ||S y - mu y|| of the symmetrised problem
};

struct Spectrum {
  std::vector<double> nodes;
  std::vector<SpectralEntry> entries;  // sorted by |mu|, then by mode
  double scale = 0.0;
};

/// The `count` eigenvalues of smallest magnitude with eigenfunctions.
Spectrum solve_eigen(const SpectralProblem& problem, std::size_t count);

/// Merge several spectra, keeping the |mu| ordering.
Spectrum merge(std::vector<Spectrum> parts);

struct FirstEigenOptions {
  int max_mode = 2;
  bool error_estimate = true;  // Richardson comparison against N/2
};

struct FirstEigen {
  double lambda = 0.0;  // > 0 with Delta_phi u = -lambda u
  int mode = 0;
  std::vector<double> radial;
  double error_estimate = 0.0;
  SpectralProblem problem;
  std::vector<double> per_mode;  // lambda candidate for l = 0..max_mode
  std::vector<std::string> warnings;
};

FirstEigen first_nonzero_eigenvalue(const WarpedManifold& model,
                                    const Grid& grid,
                                    const FirstEigenOptions& options = {});

/// Same, restricted to one angular mode.
FirstEigen first_nonzero_in_mode(const WarpedManifold& model, const Grid& grid,
                                 int mode, bool error_estimate = true);

struct Membership {
  bool contains = false;
  double nearest = 0.0;
  double gap = 0.0;
};

/// Whether some eigenvalue (modes 0..max_mode, `per_mode` each) lies within
/// tol * max(1, |target|) of `target`.
Membership spectrum_contains(const WarpedManifold& model, const Grid& grid,
                             double target, double tol, int max_mode = 2,
                             std::size_t per_mode = 4);

}  // namespace belab
