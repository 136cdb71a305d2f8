#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "belab/spectral.hpp"
#include "belab/test_functions.hpp"

namespace belab {

/// Point samples of a function on the manifold and of its squared gradient.
struct ManifoldSamples {
  std::vector<double> value;
  std::vector<double> grad_sq;
};

/// Samples the full eigenfunction R(r) Y_l(theta) on a (radius x polar
/// angle) lattice, Y_l the zonal harmonic of degree l on S^{n-1}. Mode 0 and
/// the circle need no angular lattice.
ManifoldSamples sample_eigenfunction(const FirstEigen& eig,
                                     int angular_samples = 65);

struct NormalizeParams {
  int n = 2;         // dimension, enters alpha = (n - 1) K / 2
  double k_ricci = 0.0;  // the K of Ric_phi >= (n - 1) K g
  double b = 1.01;
};

/// v = (u - (1-k)/2) / ((1+k)/2) after fixing the sign of u and scaling it
/// to max 1, min -k, so that max v = 1, min v = -1 and
/// Delta_phi v = -lambda (v + a).
struct NormalizedEigenfunction {
  ManifoldSamples v;
  double lambda = 0.0;
  double k = 1.0;
  double a = 0.0;
  double b = 1.01;
  double c = 0.0;
  double alpha = 0.0;
  double delta = 0.0;
  /// u_normalized = sign * u / peak; v = (u_normalized - offset) / scale.
  double sign = 1.0;
  double peak = 1.0;
  double offset = 0.0;
  double scale = 1.0;
  /// ||Delta_phi v + lambda (v + a)|| / (lambda ||v + a||) in the discrete
  /// weighted L2 norm, when the discrete operator is available.
  std::optional<double> identity_residual;
};

NormalizedEigenfunction normalize(const ManifoldSamples& u, double lambda,
                                  const NormalizeParams& params);

/// Samples, normalizes, and checks Delta_phi v = -lambda (v + a) with the
/// discrete operator the eigenfunction came from.
NormalizedEigenfunction normalize(const FirstEigen& eig,
                                  const NormalizeParams& params,
                                  int angular_samples = 65);

struct GradientEstimate {
  double max_ratio = 0.0;  // max |grad v|^2 / (b^2 - v^2)
  double limit = 0.0;      // lambda (1 + a)
  double margin = 0.0;     // limit - max_ratio
  std::size_t argmax = 0;
};

GradientEstimate gradient_estimate_margin(const NormalizedEigenfunction& v);

struct ZBin {
  double t_lo = 0.0;
  double t_hi = 0.0;
  bool present = false;
  double value = 0.0;    // max of |grad v|^2 / (lambda (b^2 - v^2)) in bin
  double t_at_max = 0.0; // level t = arcsin(v/b) of the maximizing sample
};

struct ZProfile {
  double half_width = 0.0;
  std::vector<ZBin> bins;
  std::size_t present_count() const;
};

ZProfile compute_Z(const NormalizedEigenfunction& v, std::size_t bins = 200);

struct DominanceReport {
  double min_margin = 0.0;  // min over present bins of z - Z
  double t_at_min = 0.0;
  std::size_t bins_checked = 0;
  bool dominated = false;   // min_margin >= 0
};

/// z evaluated at each bin's maximizing level t.
DominanceReport barrier_dominance_check(const ZProfile& z_profile,
                                        const std::function<double(double)>& z);
/// z given per bin, aligned with z_profile.bins (absent bins ignored).
DominanceReport barrier_dominance_check(const ZProfile& z_profile,
                                        std::span<const double> z_at_bins);

struct TestEstimate {
  double full = 0.0;  // right side of the touching-point inequality
  bool monotone_applicable = false;
  double monotone = 0.0;
  bool symmetric_applicable = false;
  double symmetric = 0.0;
};

/// Right-hand side of the maximum-principle inequality at a touching point
/// t0 for a barrier with value/derivatives `z`; the simplified forms are
/// tagged applicable only when their side conditions hold at t0.
TestEstimate test_estimate_residual(const TestJet& z, double t0, double a,
                                    double b, double delta);

struct LengthLedger {
  double sqrt_lambda_d = 0.0;          // sqrt(lambda) d
  double inverse_root_integral = 0.0;  // int dt / sqrt(z)
  double holder_bound = 0.0;           // (pi^3 / int z)^{1/2}
  double z_integral = 0.0;             // int z over [-pi/2, pi/2]
  double path_margin = 0.0;            // sqrt_lambda_d - inverse_root_integral
  double holder_margin = 0.0;          // inverse_root_integral - holder_bound
  double lambda_lower = 0.0;           // pi^3 / (d^2 int z)
  double lambda_margin = 0.0;          // lambda - lambda_lower
};

LengthLedger length_integral_check(double lambda, double d,
                                   const std::function<double(double)>& z);
LengthLedger length_integral_check(double lambda, double d,
                                   const BarrierFamily& z);

}  // namespace belab
