#pragma once

#include <string>

#include "belab/geometry.hpp"
#include "belab/spectral.hpp"

namespace belab {

/// A proposed gradient shrinking soliton Ric - gamma g + Hess f = 0 on a
/// rotationally symmetric model, f radial.
struct SolitonCandidate {
  WarpedManifold model;
  Profile potential;
  double gamma = 1.0;

  /// Throws PoleRegularityError when f'(pole) != 0, DomainError when
  /// gamma <= 0.
  void validate(double tolerance = 1e-6) const;
};

struct SolitonResidual {
  double radial = 0.0;      // sup |Ric_rr - gamma + f''|
  double tangential = 0.0;  // sup |Ric_tan - gamma + f' w'/w|
};

SolitonResidual soliton_residual(const SolitonCandidate& c, const Grid& grid);

struct PotentialShift {
  double shift = 0.0;
  Profile potential;  // f + shift, with int (f + shift) e^{-(f + shift)} dV = 0
};

PotentialShift normalize_f(const SolitonCandidate& c, const Grid& grid);

/// Residuals of the identities every shrinking soliton satisfies.
struct HamiltonLedger {
  double bianchi = 0.0;           // sup |grad R - 2 Ric(grad f)|
  double constancy_stddev = 0.0;  // stddev of R - 2 gamma f + |grad f|^2
  double trace = 0.0;             // sup |R - n gamma + Delta f|
};

HamiltonLedger hamilton_identities(const SolitonCandidate& c, const Grid& grid);

struct EigenfunctionIdentity {
  double residual = 0.0;  // sup |Delta_f f + 2 gamma f| after normalize_f
  double shift = 0.0;
  bool vacuous = false;   // f constant: membership says nothing about f
  Membership membership;
  std::string note;
};

/// Checks that the normalized potential is an eigenfunction of the drift
/// Laplacian with density f and eigenvalue -2 gamma, and whether -2 gamma
/// appears in the computed spectrum.
EigenfunctionIdentity eigenfunction_identity(const SolitonCandidate& c,
                                             const Grid& grid,
                                             double membership_tol = 1e-3);

}  // namespace belab
