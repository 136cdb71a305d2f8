#include "belab/soliton.hpp"

#include <algorithm>
#include <cmath>

#include "belab/errors.hpp"

namespace belab {

namespace {

// Scalar curvature at r, reflected evenly across the poles.
double scalar_curvature(const WarpedManifold& m, double r, double window) {
  if (m.topology() == Topology::circle) return 0.0;
  const double L = m.length();
  if (r < 0.0) r = -r;
  if (r > L) r = 2.0 * L - r;
  const double n = m.dimension();
  const WarpRatios q = warp_ratios(m, r, window);
  return -2.0 * (n - 1.0) * q.wpp_over_w + (n - 1.0) * (n - 2.0) * q.defect_over_w2;
}

}  // namespace

void SolitonCandidate::validate(double tolerance) const {
  if (!(gamma > 0.0)) throw DomainError("shrinking soliton needs gamma > 0");
  model.validate(tolerance);
  const Jet f0 = potential(0.0);
  const Jet fl = potential(model.length());
  if (model.topology() == Topology::circle) {
    if (std::abs(f0.value - fl.value) > tolerance || std::abs(f0.d1 - fl.d1) > tolerance)
      throw PoleRegularityError("soliton potential is not periodic");
    return;
  }
  if (std::abs(f0.d1) > tolerance || std::abs(fl.d1) > tolerance)
    throw PoleRegularityError("soliton potential has a non-zero gradient at a pole");
}

SolitonResidual soliton_residual(const SolitonCandidate& c, const Grid& grid) {
  c.validate();
  const CurvatureProfile k = curvature(c.model.with_density(c.potential), grid);
  SolitonResidual out;
  for (std::size_t i = 0; i < k.radius.size(); ++i) {
    out.radial = std::max(out.radial, std::abs(k.be_rr[i] - c.gamma));
    if (!k.be_tan.empty())
      out.tangential = std::max(out.tangential, std::abs(k.be_tan[i] - c.gamma));
  }
  return out;
}

PotentialShift normalize_f(const SolitonCandidate& c, const Grid& grid) {
  // int (f + s) e^{-(f+s)} dV = e^{-s} (int f e^{-f} dV + s int e^{-f} dV).
  const std::vector<double> q = weighted_measure(c.model.with_density(c.potential), grid);
  double mass = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    mass += q[i];
    moment += q[i] * c.potential.value(grid.nodes[i]);
  }
  if (!(mass > 0.0)) throw DegenerateInputError("weighted volume is zero");
  const double shift = -moment / mass;
  return {shift, c.potential.shifted(shift)};
}

HamiltonLedger hamilton_identities(const SolitonCandidate& c, const Grid& grid) {
  c.validate();
  const WarpedManifold& m = c.model;
  const CurvatureProfile k = curvature(m, grid);
  const double window = pole_window(grid);
  // Fixed difference step keeps rounding in R from being amplified by 1/h.
  const double step = std::max(grid.spacing, m.length() / 1000.0);
  const double n = m.dimension();
  HamiltonLedger out;
  std::vector<double> constancy(k.radius.size());
  for (std::size_t i = 0; i < k.radius.size(); ++i) {
    const double r = k.radius[i];
    const Jet f = c.potential(r);
    double dr_scalar = 0.0;
    if (!grid.periodic)
      dr_scalar = (scalar_curvature(m, r + step, window) -
                   scalar_curvature(m, r - step, window)) /
                  (2.0 * step);
    out.bianchi = std::max(out.bianchi, std::abs(dr_scalar - 2.0 * k.ric_rr[i] * f.d1));
    constancy[i] = k.scalar[i] - 2.0 * c.gamma * f.value + f.d1 * f.d1;
    const double laplacian =
        f.d2 + (n - 1.0) * radial_drift_ratio(m, c.potential, r, window);
    out.trace = std::max(out.trace, std::abs(k.scalar[i] - n * c.gamma + laplacian));
  }
  double mean = 0.0;
  for (double v : constancy) mean += v;
  mean /= static_cast<double>(constancy.size());
  double var = 0.0;
  for (double v : constancy) var += (v - mean) * (v - mean);
  out.constancy_stddev = std::sqrt(var / static_cast<double>(constancy.size()));
  return out;
}

EigenfunctionIdentity eigenfunction_identity(const SolitonCandidate& c,
                                             const Grid& grid,
                                             double membership_tol) {
  c.validate();
  const PotentialShift ps = normalize_f(c, grid);
  const WarpedManifold& m = c.model;
  const double window = pole_window(grid);
  const double n = m.dimension();
  EigenfunctionIdentity out;
  out.shift = ps.shift;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.nodes[i];
    const Jet f = ps.potential(r);
    const double laplacian =
        f.d2 + (m.topology() == Topology::circle
                    ? 0.0
                    : (n - 1.0) * radial_drift_ratio(m, ps.potential, r, window));
    const double drift = laplacian - f.d1 * f.d1;
    out.residual = std::max(out.residual, std::abs(drift + 2.0 * c.gamma * f.value));
    if (i == 0) lo = hi = f.value;
    lo = std::min(lo, f.value);
    hi = std::max(hi, f.value);
  }
  out.vacuous = hi - lo <= 1e-14 * std::max(1.0, std::abs(hi));
  out.membership = spectrum_contains(m.with_density(ps.potential), grid,
                                     -2.0 * c.gamma, membership_tol);
  if (out.vacuous)
    out.note = "f is constant: membership of -2 gamma is not witnessed by f; "
               "the residual test is the binding one";
  else if (out.membership.contains && out.residual > membership_tol)
    out.note = "-2 gamma is in the spectrum but f is not its eigenfunction";
  return out;
}

}  // namespace belab
