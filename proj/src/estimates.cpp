#include "belab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gegenbauer.hpp>

#include "belab/errors.hpp"

namespace belab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Zonal {
  double value;
  double dtheta;
};

// Zonal spherical harmonic of degree l on S^{n-1} as a function of the
// polar angle.
Zonal zonal_harmonic(int n, int l, double theta) {
  if (l == 0) return {1.0, 0.0};
  if (n == 2) return {std::cos(l * theta), -l * std::sin(l * theta)};
  const double alpha = 0.5 * (n - 2);
  const double x = std::cos(theta);
  const unsigned deg = static_cast<unsigned>(l);
  return {boost::math::gegenbauer(deg, alpha, x),
          -std::sin(theta) * boost::math::gegenbauer_prime(deg, alpha, x)};
}

std::vector<double> radial_derivative(const FirstEigen& eig) {
  const Grid& g = eig.problem.grid;
  const std::vector<double>& u = eig.radial;
  const std::size_t m = u.size();
  const double h = g.spacing;
  std::vector<double> du(m);
  for (std::size_t i = 1; i + 1 < m; ++i) du[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
  if (g.periodic) {
    du[0] = (u[1] - u[m - 1]) / (2.0 * h);
    du[m - 1] = (u[0] - u[m - 2]) / (2.0 * h);
  } else if (eig.problem.left == Boundary::regular) {
    // Radial functions of mode 0 are even about each pole.
    du[0] = 0.0;
    du[m - 1] = 0.0;
  } else {
    du[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    du[m - 1] = (3.0 * u[m - 1] - 4.0 * u[m - 2] + u[m - 3]) / (2.0 * h);
  }
  return du;
}

}  // namespace

ManifoldSamples sample_eigenfunction(const FirstEigen& eig,
                                     int angular_samples) {
  const SpectralProblem& p = eig.problem;
  const std::vector<double>& radial = eig.radial;
  const std::vector<double> dr = radial_derivative(eig);
  ManifoldSamples out;
  const std::size_t m = radial.size();
  if (eig.mode == 0 || p.model.topology() == Topology::circle) {
    out.value = radial;
    out.grad_sq.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.grad_sq[i] = dr[i] * dr[i];
    return out;
  }
  if (angular_samples < 3) throw DomainError("need >= 3 angular samples");
  const int n = p.model.dimension();
  const std::size_t j_count = static_cast<std::size_t>(angular_samples);
  std::vector<Zonal> y(j_count);
  for (std::size_t j = 0; j < j_count; ++j)
    y[j] = zonal_harmonic(n, eig.mode, kPi * j / (j_count - 1.0));
  out.value.reserve(m * j_count);
  out.grad_sq.reserve(m * j_count);
  for (std::size_t i = 0; i < m; ++i) {
    const Jet w = p.model.warp()(p.grid.nodes[i]);
    // R/w at a pole is R'/w' since R vanishes there for l >= 1.
    const double over_w =
        (i == 0 || i + 1 == m) ? dr[i] / w.d1 : radial[i] / w.value;
    for (std::size_t j = 0; j < j_count; ++j) {
      const double a = dr[i] * y[j].value;
      const double b = over_w * y[j].dtheta;
      out.value.push_back(radial[i] * y[j].value);
      out.grad_sq.push_back(a * a + b * b);
    }
  }
  return out;
}

NormalizedEigenfunction normalize(const ManifoldSamples& u, double lambda,
                                  const NormalizeParams& params) {
  if (!(lambda > 0.0)) throw DomainError("normalize needs lambda > 0");
  if (!(params.b > 1.0)) throw DomainError("normalize needs b > 1");
  if (u.value.empty() || u.value.size() != u.grad_sq.size())
    throw DegenerateInputError("eigenfunction samples are empty or ragged");
  const auto [lo_it, hi_it] = std::minmax_element(u.value.begin(), u.value.end());
  double hi = *hi_it;
  double lo = *lo_it;
  const double span = std::max(std::abs(hi), std::abs(lo));
  if (!(hi - lo > 1e-14 * span) || !(span > 0.0))
    throw DegenerateInputError("eigenfunction is constant");

  NormalizedEigenfunction out;
  out.lambda = lambda;
  out.b = params.b;
  if (-lo > hi) {
    out.sign = -1.0;
    std::swap(hi, lo);
    hi = -hi;
    lo = -lo;
  }
  if (!(hi > 0.0)) throw DegenerateInputError("eigenfunction has no positive part");
  out.peak = hi;
  out.k = std::clamp(-lo / hi, 0.0, 1.0);
  out.offset = 0.5 * (1.0 - out.k);
  out.scale = 0.5 * (1.0 + out.k);
  out.a = (1.0 - out.k) / (1.0 + out.k);
  out.c = out.a / out.b;
  out.alpha = 0.5 * (params.n - 1) * params.k_ricci;
  out.delta = out.alpha / lambda;

  const double gscale = 1.0 / (out.peak * out.scale);
  out.v.value.resize(u.value.size());
  out.v.grad_sq.resize(u.value.size());
  for (std::size_t i = 0; i < u.value.size(); ++i) {
    const double un = out.sign * u.value[i] / out.peak;
    out.v.value[i] = std::clamp((un - out.offset) / out.scale, -1.0, 1.0);
    out.v.grad_sq[i] = u.grad_sq[i] * gscale * gscale;
  }
  return out;
}

NormalizedEigenfunction normalize(const FirstEigen& eig,
                                  const NormalizeParams& params,
                                  int angular_samples) {
  NormalizedEigenfunction out =
      normalize(sample_eigenfunction(eig, angular_samples), eig.lambda, params);
  const SpectralProblem& p = eig.problem;
  const std::vector<double> r = p.restrict_to_unknowns(eig.radial);
  // Mass-weighted norms: pole masses scale like h^n, so a pointwise residual
  // of M^{-1} A v would amplify rounding there.
  double res = 0.0, ref = 0.0;
  if (eig.mode == 0 || p.model.topology() == Topology::circle) {
    std::vector<double> v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      v[i] = (out.sign * r[i] / out.peak - out.offset) / out.scale;
    const std::vector<double> lv = p.apply(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double e = lv[i] + eig.lambda * (v[i] + out.a);
      res += p.mass[i] * e * e;
      ref += p.mass[i] * (v[i] + out.a) * (v[i] + out.a);
    }
  } else {
    // Constants are harmonic, so the identity reduces to the radial
    // eigen-equation.
    const std::vector<double> lr = p.apply(r);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double e = lr[i] + eig.lambda * r[i];
      res += p.mass[i] * e * e;
      ref += p.mass[i] * r[i] * r[i];
    }
  }
  const double worst = ref > 0.0 ? std::sqrt(res / ref) : 0.0;
  out.identity_residual = worst / eig.lambda;
  return out;
}

GradientEstimate gradient_estimate_margin(const NormalizedEigenfunction& v) {
  GradientEstimate out;
  const double b2 = v.b * v.b;
  for (std::size_t i = 0; i < v.v.value.size(); ++i) {
    const double x = v.v.value[i];
    const double ratio = v.v.grad_sq[i] / (b2 - x * x);
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.argmax = i;
    }
  }
  out.limit = v.lambda * (1.0 + v.a);
  out.margin = out.limit - out.max_ratio;
  return out;
}

std::size_t ZProfile::present_count() const {
  return static_cast<std::size_t>(std::count_if(
      bins.begin(), bins.end(), [](const ZBin& b) { return b.present; }));
}

ZProfile compute_Z(const NormalizedEigenfunction& v, std::size_t bins) {
  if (bins == 0) throw DomainError("compute_Z needs at least one bin");
  ZProfile out;
  out.half_width = std::asin(1.0 / v.b);
  const double width = 2.0 * out.half_width / static_cast<double>(bins);
  out.bins.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    out.bins[k].t_lo = -out.half_width + width * k;
    out.bins[k].t_hi = out.bins[k].t_lo + width;
  }
  const double b2 = v.b * v.b;
  for (std::size_t i = 0; i < v.v.value.size(); ++i) {
    const double x = v.v.value[i];
    const double t = std::asin(x / v.b);
    const auto k = std::min<std::size_t>(
        bins - 1,
        static_cast<std::size_t>(std::max(0.0, (t + out.half_width) / width)));
    const double z = v.v.grad_sq[i] / (v.lambda * (b2 - x * x));
    ZBin& bin = out.bins[k];
    if (!bin.present || z > bin.value) {
      bin.present = true;
      bin.value = z;
      bin.t_at_max = t;
    }
  }
  if (out.present_count() == 0)
    throw DegenerateInputError("all level-set bins are empty");
  return out;
}

DominanceReport barrier_dominance_check(const ZProfile& z_profile,
                                        const std::function<double(double)>& z) {
  std::vector<double> at(z_profile.bins.size(), 0.0);
  for (std::size_t k = 0; k < at.size(); ++k)
    if (z_profile.bins[k].present) at[k] = z(z_profile.bins[k].t_at_max);
  return barrier_dominance_check(z_profile, at);
}

DominanceReport barrier_dominance_check(const ZProfile& z_profile,
                                        std::span<const double> z_at_bins) {
  if (z_at_bins.size() != z_profile.bins.size())
    throw DomainError("barrier samples do not match the Z bins");
  DominanceReport out;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < z_at_bins.size(); ++k) {
    const ZBin& bin = z_profile.bins[k];
    if (!bin.present) continue;
    ++out.bins_checked;
    const double margin = z_at_bins[k] - bin.value;
    if (margin < out.min_margin) {
      out.min_margin = margin;
      out.t_at_min = bin.t_at_max;
    }
  }
  out.dominated = out.bins_checked > 0 && out.min_margin >= 0.0;
  return out;
}

TestEstimate test_estimate_residual(const TestJet& z, double t0, double a,
                                    double b, double delta) {
  if (!(z.value > 0.0))
    throw HypothesisError("touching-point estimate needs z(t0) > 0");
  const double c = a / b;
  const double ct = std::cos(t0);
  const double st = std::sin(t0);
  const double common =
      0.5 * z.d2 * ct * ct - z.d1 * ct * st - z.value + 1.0 - 2.0 * delta * ct * ct;
  TestEstimate out;
  out.monotone = common + c * st;
  out.full = out.monotone - z.d1 / (4.0 * z.value) * ct *
                            (z.d1 * ct - 2.0 * z.value * st + 2.0 * st + 2.0 * c);
  out.monotone_applicable =
      z.d1 >= 0.0 && 1.0 - c <= z.value && z.value <= 1.0 + a;
  out.symmetric = common;
  out.symmetric_applicable = a == 0.0 && z.d1 * st >= 0.0 && z.value <= 1.0;
  return out;
}

LengthLedger length_integral_check(double lambda, double d,
                                   const std::function<double(double)>& z) {
  if (!(d > 0.0)) throw DomainError("length check needs a positive diameter");
  if (!(lambda > 0.0)) throw DomainError("length check needs lambda > 0");
  using boost::math::quadrature::gauss_kronrod;
  auto positive = [&](double t) {
    const double v = z(t);
    if (!(v > 0.0)) throw HypothesisError("barrier must stay positive");
    return v;
  };
  LengthLedger out;
  const double lo = -0.5 * kPi;
  const double hi = 0.5 * kPi;
  out.z_integral = gauss_kronrod<double, 61>::integrate(positive, lo, hi, 15, 1e-14);
  out.inverse_root_integral = gauss_kronrod<double, 61>::integrate(
      [&](double t) { return 1.0 / std::sqrt(positive(t)); }, lo, hi, 15, 1e-14);
  out.sqrt_lambda_d = std::sqrt(lambda) * d;
  out.holder_bound = std::sqrt(kPi * kPi * kPi / out.z_integral);
  out.path_margin = out.sqrt_lambda_d - out.inverse_root_integral;
  out.holder_margin = out.inverse_root_integral - out.holder_bound;
  out.lambda_lower = kPi * kPi * kPi / (d * d * out.z_integral);
  out.lambda_margin = lambda - out.lambda_lower;
  return out;
}

LengthLedger length_integral_check(double lambda, double d,
                                   const BarrierFamily& z) {
  return length_integral_check(lambda, d,
                               [&z](double t) { return z(t).value; });
}

}  // namespace belab
