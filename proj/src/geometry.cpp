#include "belab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "belab/errors.hpp"

namespace belab {

std::string to_string(Topology t) {
  return t == Topology::circle ? "circle" : "interval-sphere";
}

WarpedManifold::WarpedManifold(Topology t, int n, double length, Profile warp,
                               Profile density)
    : topology_(t),
      n_(n),
      length_(length),
      warp_(std::move(warp)),
      density_(std::move(density)) {}

WarpedManifold WarpedManifold::interval_sphere(int n, double length,
                                               Profile warp, Profile density) {
  if (n < 2) throw DomainError("interval-sphere dimension must be >= 2");
  if (!(length > 0.0) || !std::isfinite(length))
    throw DomainError("radial length must be positive and finite");
  return WarpedManifold(Topology::interval_sphere, n, length, std::move(warp),
                        std::move(density));
}

WarpedManifold WarpedManifold::circle(double circumference, Profile density) {
  if (!(circumference > 0.0) || !std::isfinite(circumference))
    throw DomainError("circumference must be positive and finite");
  return WarpedManifold(Topology::circle, 1, circumference, Profile(),
                        std::move(density));
}

WarpedManifold WarpedManifold::unit_sphere(int n, Profile density) {
  return interval_sphere(n, std::numbers::pi, Profile::sine(1.0),
                         std::move(density));
}

WarpedManifold WarpedManifold::with_density(Profile density) const {
  WarpedManifold m = *this;
  m.density_ = std::move(density);
  return m;
}

WarpedManifold WarpedManifold::rescaled(double c) const {
  if (!(c > 0.0)) throw DomainError("scale factor must be positive");
  WarpedManifold m = *this;
  m.length_ = c * length_;
  if (topology_ == Topology::interval_sphere)
    m.warp_ = warp_.stretched(c).scaled(c);
  m.density_ = density_.stretched(c);
  return m;
}

void WarpedManifold::validate(double tolerance) const {
  const Jet p0 = density_(0.0);
  const Jet pl = density_(length_);
  if (topology_ == Topology::circle) {
    if (std::abs(p0.value - pl.value) > tolerance ||
        std::abs(p0.d1 - pl.d1) > tolerance)
      throw PoleRegularityError("circle density is not periodic");
    return;
  }
  const Jet w0 = warp_(0.0);
  const Jet wl = warp_(length_);
  std::ostringstream os;
  if (std::abs(w0.value) > tolerance || std::abs(wl.value) > tolerance)
    os << "warp does not vanish at the poles (w(0) = " << w0.value
       << ", w(L) = " << wl.value << ")";
  else if (std::abs(w0.d1 - 1.0) > tolerance ||
           std::abs(wl.d1 + 1.0) > tolerance)
    os << "non-regular pole: w'(0) = " << w0.d1 << ", w'(L) = " << wl.d1;
  else if (std::abs(p0.d1) > tolerance || std::abs(pl.d1) > tolerance)
    os << "density gradient does not vanish at a pole: phi'(0) = " << p0.d1
       << ", phi'(L) = " << pl.d1;
  if (!os.str().empty()) throw PoleRegularityError(os.str());
}

double pole_window(const Grid& grid) { return 10.0 * grid.spacing; }

namespace {

struct PoleSite {
  bool inside = false;
  double pole = 0.0;
  double edge = 0.0;
  double s = 0.0;
};

PoleSite locate_pole(const WarpedManifold& model, double r, double window) {
  PoleSite site;
  if (model.topology() != Topology::interval_sphere || window <= 0.0)
    return site;
  const double L = model.length();
  window = std::min(window, 0.25 * L);
  if (r < window) {
    site = {true, 0.0, window, r};
  } else if (L - r < window) {
    site = {true, L, L - window, L - r};
  }
  if (site.inside) site.s /= window;
  return site;
}

double blend(double limit, double edge_value, double s_fraction) {
  return limit + (edge_value - limit) * s_fraction * s_fraction;
}

WarpRatios closed_form(const WarpedManifold& model, double r) {
  const Jet w = model.warp()(r);
  const Jet phi = model.density()(r);
  WarpRatios out;
  out.wpp_over_w = w.d2 / w.value;
  out.defect_over_w2 = (1.0 - w.d1 * w.d1) / (w.value * w.value);
  out.density_term = phi.d1 * w.d1 / w.value;
  return out;
}

}  // namespace

WarpRatios warp_ratios(const WarpedManifold& model, double r, double window) {
  if (model.topology() == Topology::circle) return {};
  const PoleSite site = locate_pole(model, r, window);
  if (!site.inside) return closed_form(model, r);
  // Smooth metrics have w odd and phi even in the distance to the pole, so
  // the ratios are even there: limit + O(s^2).
  const Jet w = model.warp()(site.pole);
  const Jet phi = model.density()(site.pole);
  const WarpRatios edge = closed_form(model, site.edge);
  WarpRatios out;
  out.wpp_over_w = blend(w.d3 / w.d1, edge.wpp_over_w, site.s);
  out.defect_over_w2 = blend(-w.d3 / w.d1, edge.defect_over_w2, site.s);
  out.density_term = blend(phi.d2, edge.density_term, site.s);
  return out;
}

double radial_drift_ratio(const WarpedManifold& model, const Profile& g,
                          double r, double window) {
  if (model.topology() == Topology::circle) return 0.0;
  auto closed = [&](double x) {
    const Jet w = model.warp()(x);
    return g(x).d1 * w.d1 / w.value;
  };
  const PoleSite site = locate_pole(model, r, window);
  if (!site.inside) return closed(r);
  return blend(g(site.pole).d2, closed(site.edge), site.s);
}

Grid make_grid(const WarpedManifold& model, std::size_t cells) {
  if (cells < 8) throw DomainError("grid needs at least 8 cells");
  Grid g;
  g.periodic = model.topology() == Topology::circle;
  g.spacing = model.length() / static_cast<double>(cells);
  const std::size_t count = g.periodic ? cells : cells + 1;
  g.nodes.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    g.nodes[i] = g.spacing * static_cast<double>(i);
  if (!g.periodic) g.nodes.back() = model.length();
  g.weights = weighted_measure(model, g);
  return g;
}

CurvatureProfile curvature(const WarpedManifold& model, const Grid& grid) {
  model.validate();
  CurvatureProfile out;
  out.radius = grid.nodes;
  const std::size_t m = grid.size();
  out.ric_rr.resize(m);
  out.be_rr.resize(m);
  out.scalar.resize(m);
  if (model.topology() == Topology::circle) {
    for (std::size_t i = 0; i < m; ++i) {
      out.ric_rr[i] = 0.0;
      out.be_rr[i] = model.density()(grid.nodes[i]).d2;
      out.scalar[i] = 0.0;
    }
    return out;
  }
  out.ric_tan.resize(m);
  out.be_tan.resize(m);
  const double n = model.dimension();
  const double window = pole_window(grid);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = grid.nodes[i];
    if (i > 0 && i + 1 < m && !(model.warp().value(r) > 0.0))
      throw DomainError("warp profile must be positive inside (0, L)");
    const WarpRatios q = warp_ratios(model, r, window);
    out.ric_rr[i] = -(n - 1.0) * q.wpp_over_w;
    out.ric_tan[i] = -q.wpp_over_w + (n - 2.0) * q.defect_over_w2;
    out.scalar[i] = -2.0 * (n - 1.0) * q.wpp_over_w +
                    (n - 1.0) * (n - 2.0) * q.defect_over_w2;
    out.be_rr[i] = out.ric_rr[i] + model.density()(r).d2;
    out.be_tan[i] = out.ric_tan[i] + q.density_term;
  }
  return out;
}

RicciBound be_ricci_lower_bound(const WarpedManifold& model,
                                const Grid& grid) {
  const CurvatureProfile c = curvature(model, grid);
  RicciBound out;
  out.min_ricci = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.radius.size(); ++i) {
    double v = c.be_rr[i];
    if (!c.be_tan.empty()) v = std::min(v, c.be_tan[i]);
    if (v < out.min_ricci) {
      out.min_ricci = v;
      out.radius = c.radius[i];
    }
  }
  if (model.dimension() < 2) {
    out.k_eff = std::numeric_limits<double>::quiet_NaN();
    out.flagged = true;
    out.reason = "dimension 1: (n - 1) K is undefined";
    return out;
  }
  out.k_eff = out.min_ricci / (model.dimension() - 1.0);
  if (!(out.k_eff > 0.0)) {
    out.flagged = true;
    out.reason = "Bakry-Emery Ricci curvature is not positive";
  }
  return out;
}

double diameter(const WarpedManifold& model) {
  return model.topology() == Topology::circle ? 0.5 * model.length()
                                              : model.length();
}

double unit_sphere_area(int k) {
  const double half = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

std::vector<double> weighted_measure(const WarpedManifold& model,
                                     const Grid& grid) {
  const std::size_t m = grid.size();
  std::vector<double> q(m);
  const double h = grid.spacing;
  if (grid.periodic) {
    // Periodic trapezoid rule: spectrally accurate for smooth densities.
    for (std::size_t i = 0; i < m; ++i)
      q[i] = h * std::exp(-model.density().value(grid.nodes[i]));
    return q;
  }
  const int n = model.dimension();
  const double area = unit_sphere_area(n - 1);
  // Fourth-order end-corrected trapezoid weights.
  static constexpr double kEnd[4] = {17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0,
                                     49.0 / 48.0};
  for (std::size_t i = 0; i < m; ++i) {
    const double r = grid.nodes[i];
    const double w = model.warp().value(r);
    const double rho = std::pow(std::max(w, 0.0), n - 1) *
                       std::exp(-model.density().value(r));
    double coef = 1.0;
    if (i < 4) coef = kEnd[i];
    if (m - 1 - i < 4) coef = kEnd[m - 1 - i];
    q[i] = area * h * coef * rho;
  }
  return q;
}

}  // namespace belab
