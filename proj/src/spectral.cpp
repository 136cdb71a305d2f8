#include "belab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "belab/errors.hpp"

namespace belab {

std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::regular: return "regular";
    case Boundary::dirichlet: return "dirichlet";
    case Boundary::periodic: return "periodic";
  }
  return "?";
}

namespace {

// Density rho = w^{n-1} e^{-phi} of the radial measure.
double radial_density(const WarpedManifold& m, double r) {
  if (m.topology() == Topology::circle) {
    const double L = m.length();
    double x = std::fmod(r, L);
    if (x < 0.0) x += L;
    return std::exp(-m.density().value(x));
  }
  const double w = std::max(m.warp().value(r), 0.0);
  return std::pow(w, m.dimension() - 1) * std::exp(-m.density().value(r));
}

// Four-point Gauss-Legendre on [a, b].
template <class F>
double gauss4(F&& f, double a, double b) {
  static constexpr double x[4] = {-0.8611363115940526, -0.3399810435848563,
                                  0.3399810435848563, 0.8611363115940526};
  static constexpr double w[4] = {0.3478548451374538, 0.6521451548625461,
                                  0.6521451548625461, 0.3478548451374538};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += w[k] * f(mid + half * x[k]);
  return s * half;
}

}  // namespace

std::vector<double> SpectralProblem::apply(std::span<const double> u) const {
  std::vector<double> y(u.size());
  stiffness.multiply(u, y);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] /= mass[i];
  return y;
}

double SpectralProblem::inner(std::span<const double> u,
                              std::span<const double> v) const {
  double s = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) s += mass[i] * u[i] * v[i];
  return s;
}

double SpectralProblem::scale() const {
  // Gershgorin bound of M^{-1/2} A M^{-1/2}.
  const std::size_t n = size();
  double g = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mi = std::sqrt(mass[i]);
    double row = std::abs(stiffness.diag[i]) / (mi * mi);
    if (i > 0) row += std::abs(stiffness.off[i - 1]) / (mi * std::sqrt(mass[i - 1]));
    if (i + 1 < n) row += std::abs(stiffness.off[i]) / (mi * std::sqrt(mass[i + 1]));
    if (stiffness.cyclic && (i == 0 || i + 1 == n))
      row += std::abs(stiffness.corner) / std::sqrt(mass.front() * mass.back());
    g = std::max(g, row);
  }
  return g;
}

std::vector<double> SpectralProblem::restrict_to_unknowns(
    std::span<const double> samples) const {
  std::vector<double> u(unknowns.size());
  for (std::size_t i = 0; i < unknowns.size(); ++i) u[i] = samples[unknowns[i]];
  return u;
}

std::vector<double> SpectralProblem::extend_to_grid(
    std::span<const double> u) const {
  std::vector<double> full(grid.size(), 0.0);
  for (std::size_t i = 0; i < unknowns.size(); ++i) full[unknowns[i]] = u[i];
  return full;
}

SpectralProblem assemble(const WarpedManifold& model, const Grid& grid,
                         int mode, const AssemblyOptions& options) {
  if (mode < 0) throw AssemblyError("angular mode must be >= 0");
  model.validate();
  SpectralProblem p{model, grid, mode, Boundary::regular, Boundary::regular,
                    {}, {}, {}};
  const double h = grid.spacing;
  const std::size_t m = grid.size();
  auto rho = [&](double r) { return radial_density(model, r); };

  if (grid.periodic) {
    p.left = p.right = Boundary::periodic;
    p.unknowns.resize(m);
    p.mass.resize(m);
    p.stiffness.diag.assign(m, 0.0);
    p.stiffness.off.assign(m - 1, 0.0);
    p.stiffness.cyclic = true;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = grid.nodes[i];
      p.unknowns[i] = i;
      p.mass[i] = gauss4(rho, r - 0.5 * h, r + 0.5 * h);
      const double flux = rho(r + 0.5 * h) / h;
      p.stiffness.diag[i] -= flux;
      if (i + 1 < m) {
        p.stiffness.diag[i + 1] -= flux;
        p.stiffness.off[i] = flux;
      } else {
        p.stiffness.diag[0] -= flux;
        p.stiffness.corner = flux;
      }
    }
    return p;
  }

  const Boundary pole = options.pole_condition.value_or(
      mode == 0 ? Boundary::regular : Boundary::dirichlet);
  if (pole == Boundary::periodic)
    throw AssemblyError("periodic condition requires circle topology");
  if (pole == Boundary::regular && mode > 0)
    throw AssemblyError(
        "angular potential l(l+n-2)/w^2 is unbounded at a pole; mode " +
        std::to_string(mode) + " needs a Dirichlet pole condition");
  p.left = p.right = pole;

  const double n = model.dimension();
  const double potential = mode * (mode + n - 2.0);
  const std::size_t first = pole == Boundary::dirichlet ? 1 : 0;
  const std::size_t last = pole == Boundary::dirichlet ? m - 2 : m - 1;
  const std::size_t count = last - first + 1;
  p.unknowns.resize(count);
  p.mass.resize(count);
  p.stiffness.diag.assign(count, 0.0);
  p.stiffness.off.assign(count - 1, 0.0);

  const double L = model.length();
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = first + k;
    const double r = grid.nodes[i];
    p.unknowns[k] = i;
    const double a = std::max(0.0, r - 0.5 * h);
    const double b = std::min(L, r + 0.5 * h);
    p.mass[k] = gauss4(rho, a, b);
    if (!(p.mass[k] > 0.0))
      throw AssemblyError("non-positive control-volume mass at r = " +
                          std::to_string(r));
    double diag = 0.0;
    if (i > 0) diag -= rho(r - 0.5 * h) / h;
    if (i + 1 < m) diag -= rho(r + 0.5 * h) / h;
    if (potential > 0.0) {
      const double w = model.warp().value(r);
      const double v = potential / (w * w);
      if (!std::isfinite(v))
        throw AssemblyError("angular potential overflow at r = " +
                            std::to_string(r));
      diag -= p.mass[k] * v;
    }
    p.stiffness.diag[k] = diag;
    if (k + 1 < count) p.stiffness.off[k] = rho(r + 0.5 * h) / h;
  }
  return p;
}

Spectrum solve_eigen(const SpectralProblem& problem, std::size_t count) {
  if (count < 1) throw DomainError("eigenvalue count must be >= 1");
  const std::size_t n = problem.size();
  count = std::min(count, n);
  // S = -M^{-1/2} A M^{-1/2} is positive semidefinite.
  SymmetricTridiagonal s;
  s.cyclic = problem.stiffness.cyclic;
  s.diag.resize(n);
  s.off.resize(n > 0 ? n - 1 : 0);
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(problem.mass[i]);
  for (std::size_t i = 0; i < n; ++i)
    s.diag[i] = -problem.stiffness.diag[i] / (root[i] * root[i]);
  for (std::size_t i = 0; i + 1 < n; ++i)
    s.off[i] = -problem.stiffness.off[i] / (root[i] * root[i + 1]);
  if (s.cyclic) s.corner = -problem.stiffness.corner / (root.front() * root.back());

  const auto pairs = smallest_eigenpairs(s, count);
  Spectrum out;
  out.nodes = problem.grid.nodes;
  out.scale = s.norm_bound();
  for (const EigenPair& pr : pairs) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = pr.vector[i] / root[i];
    out.entries.push_back({-pr.value, problem.mode, problem.extend_to_grid(u),
                           pr.residual});
  }
  return out;
}

Spectrum merge(std::vector<Spectrum> parts) {
  Spectrum out;
  for (Spectrum& part : parts) {
    if (out.nodes.empty()) out.nodes = part.nodes;
    out.scale = std::max(out.scale, part.scale);
    for (SpectralEntry& e : part.entries) out.entries.push_back(std::move(e));
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const SpectralEntry& a, const SpectralEntry& b) {
                     if (std::abs(a.eigenvalue) != std::abs(b.eigenvalue))
                       return std::abs(a.eigenvalue) < std::abs(b.eigenvalue);
                     return a.mode < b.mode;
                   });
  return out;
}

namespace {

// Index of the first non-zero eigenvalue within one mode's spectrum: the
// constants occupy index 0 when the pole condition is regular or periodic.
std::size_t nonzero_index(const SpectralProblem& p) {
  return p.left == Boundary::dirichlet ? 0 : 1;
}

struct ModeSolution {
  double lambda;
  std::vector<double> radial;
  SpectralProblem problem;
};

ModeSolution solve_mode(const WarpedManifold& model, const Grid& grid,
                        int mode) {
  SpectralProblem p = assemble(model, grid, mode);
  const std::size_t idx = nonzero_index(p);
  Spectrum s = solve_eigen(p, idx + 1);
  SpectralEntry& e = s.entries.at(idx);
  return {-e.eigenvalue, std::move(e.radial), std::move(p)};
}

double coarse_lambda(const WarpedManifold& model, const Grid& grid, int mode) {
  const std::size_t half = grid.cells() / 2;
  if (half < 8) return std::numeric_limits<double>::quiet_NaN();
  return solve_mode(model, make_grid(model, half), mode).lambda;
}

void attach_diagnostics(FirstEigen& out, const WarpedManifold& model,
                        const Grid& grid, bool error_estimate) {
  if (error_estimate) {
    const double coarse = coarse_lambda(model, grid, out.mode);
    if (std::isfinite(coarse))
      out.error_estimate = std::abs(out.lambda - coarse) / 3.0;
  }
  if (!(out.lambda > out.error_estimate)) {
    std::ostringstream os;
    os << "ambiguous: spectral gap " << out.lambda
       << " is below the discretization error estimate " << out.error_estimate;
    out.warnings.push_back(os.str());
  }
  if (model.dimension() >= 2) {
    const RicciBound k = be_ricci_lower_bound(model, grid);
    if (k.flagged) out.warnings.push_back("K_eff <= 0: " + k.reason);
  }
}

}  // namespace

FirstEigen first_nonzero_in_mode(const WarpedManifold& model, const Grid& grid,
                                 int mode, bool error_estimate) {
  if (model.topology() == Topology::circle) mode = 0;
  ModeSolution s = solve_mode(model, grid, mode);
  FirstEigen out{s.lambda, mode, std::move(s.radial), 0.0, std::move(s.problem),
                 {s.lambda}, {}};
  attach_diagnostics(out, model, grid, error_estimate);
  return out;
}

FirstEigen first_nonzero_eigenvalue(const WarpedManifold& model,
                                    const Grid& grid,
                                    const FirstEigenOptions& options) {
  if (options.max_mode < 0) throw DomainError("max_mode must be >= 0");
  // On the circle the angular index does not enter the operator.
  const int max_mode =
      model.topology() == Topology::circle ? 0 : options.max_mode;
  std::optional<ModeSolution> best;
  int best_mode = 0;
  std::vector<double> per_mode;
  for (int l = 0; l <= max_mode; ++l) {
    ModeSolution s = solve_mode(model, grid, l);
    per_mode.push_back(s.lambda);
    if (!best || s.lambda < best->lambda) {
      best_mode = l;
      best = std::move(s);
    }
  }
  FirstEigen out{best->lambda, best_mode, std::move(best->radial), 0.0,
                 std::move(best->problem), std::move(per_mode), {}};
  attach_diagnostics(out, model, grid, options.error_estimate);
  return out;
}

Membership spectrum_contains(const WarpedManifold& model, const Grid& grid,
                             double target, double tol, int max_mode,
                             std::size_t per_mode) {
  if (!(tol > 0.0)) throw DomainError("membership tolerance must be positive");
  const int top = model.topology() == Topology::circle ? 0 : max_mode;
  std::vector<Spectrum> parts;
  for (int l = 0; l <= top; ++l)
    parts.push_back(solve_eigen(assemble(model, grid, l), per_mode));
  const Spectrum all = merge(std::move(parts));
  Membership out;
  out.gap = std::numeric_limits<double>::infinity();
  for (const SpectralEntry& e : all.entries) {
    const double gap = std::abs(e.eigenvalue - target);
    if (gap < out.gap) {
      out.gap = gap;
      out.nearest = e.eigenvalue;
    }
  }
  out.contains = out.gap <= tol * std::max(1.0, std::abs(target));
  return out;
}

}  // namespace belab
