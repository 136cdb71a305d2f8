#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "belab/profile.hpp"

namespace belab {

enum class Topology { interval_sphere, circle };

std::string to_string(Topology t);

/// Compact rotationally symmetric manifold with density e^{-phi} dV.
///
/// interval_sphere: metric dr^2 + w(r)^2 g_{S^{n-1}} on [0, L], closed up
/// at both poles. circle: a closed curve of circumference L (dimension 1,
/// no warp).
class WarpedManifold {
 public:
  static WarpedManifold interval_sphere(int n, double length, Profile warp,
                                        Profile density = Profile());
  static WarpedManifold circle(double circumference,
                               Profile density = Profile());
  /// Unit-radius S^n, optionally with a radial density.
  static WarpedManifold unit_sphere(int n, Profile density = Profile());

  Topology topology() const noexcept { return topology_; }
  int dimension() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  const Profile& warp() const noexcept { return warp_; }
  const Profile& density() const noexcept { return density_; }

  WarpedManifold with_density(Profile density) const;
  /// The manifold with metric c^2 g: lengths scale by c, curvature by 1/c^2.
  WarpedManifold rescaled(double c) const;

  /// Throws PoleRegularityError when the poles (or the circle's period)
  /// are not smooth to `tolerance`.
  void validate(double tolerance = 1e-6) const;

 private:
  WarpedManifold(Topology t, int n, double length, Profile warp,
                 Profile density);

  Topology topology_;
  int n_;
  double length_;
  Profile warp_;
  Profile density_;
};

/// Uniform nodes on [0, L] (N + 1 nodes) or on the circle (N nodes,
/// periodic) together with quadrature weights for the weighted measure.
struct Grid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double spacing = 0.0;
  bool periodic = false;

  std::size_t size() const noexcept { return nodes.size(); }
  /// Number of cells N.
  std::size_t cells() const noexcept {
    return periodic ? nodes.size() : nodes.size() - 1;
  }
};

Grid make_grid(const WarpedManifold& model, std::size_t cells);

/// Sampled curvature. For the circle the tangential components are empty.
struct CurvatureProfile {
  std::vector<double> radius;
  std::vector<double> ric_rr;
  std::vector<double> ric_tan;
  std::vector<double> be_rr;
  std::vector<double> be_tan;
  std::vector<double> scalar;
};

/// Point values of the singular ratios of a warped product at radius r,
/// with pole limits blended in within `window` of either pole.
struct WarpRatios {
  double wpp_over_w = 0.0;        // w''/w
  double defect_over_w2 = 0.0;    // (1 - w'^2)/w^2
  double density_term = 0.0;      // phi' w'/w
};

WarpRatios warp_ratios(const WarpedManifold& model, double r, double window);

/// Ratio g'(r) w'(r)/w(r) for an arbitrary radial g, blended at the poles.
double radial_drift_ratio(const WarpedManifold& model, const Profile& g,
                          double r, double window);

/// Width of the pole series window on a grid.
double pole_window(const Grid& grid);

CurvatureProfile curvature(const WarpedManifold& model, const Grid& grid);

struct RicciBound {
  double k_eff = 0.0;     // min eigenvalue of Ric_phi divided by (n - 1)
  double min_ricci = 0.0; // min eigenvalue of Ric_phi itself
  double radius = 0.0;    // where the minimum is attained
  bool flagged = false;   // true when k_eff <= 0 or undefined (n = 1)
  std::string reason;
};

RicciBound be_ricci_lower_bound(const WarpedManifold& model, const Grid& grid);

double diameter(const WarpedManifold& model);

/// Quadrature weights q_i with sum_i q_i u(r_i) ~ int_M u e^{-phi} dV.
std::vector<double> weighted_measure(const WarpedManifold& model,
                                     const Grid& grid);

/// Area of the unit sphere S^{k}.
double unit_sphere_area(int k);

}  // namespace belab
