#include "belab/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "belab/errors.hpp"

namespace belab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double guard_pivot(double q, double pivmin) {
  return std::abs(q) < pivmin ? -pivmin : q;
}

double pivot_floor(const SymmetricTridiagonal& a) {
  double m = std::abs(a.corner) * std::abs(a.corner);
  for (double e : a.off) m = std::max(m, e * e);
  return std::max(std::numeric_limits<double>::min(),
                  std::numeric_limits<double>::min() * m);
}

// Gaussian elimination with partial pivoting for (A - sigma I) x = rhs on the
// non-cyclic part of `a`, with diagonal overrides at the two ends. The LU
// factorisation follows the LAPACK gttrf layout.
class ShiftedTridiagonalSolver {
 public:
  ShiftedTridiagonalSolver(const SymmetricTridiagonal& a, double sigma,
                           double first_shift, double last_shift)
      : n_(a.size()), dl_(a.off), d_(a.diag), du_(a.off), du2_(n_, 0.0),
        pivot_(n_, 0) {
    for (double& v : d_) v -= sigma;
    d_.front() -= first_shift;
    d_.back() -= last_shift;
    const double tiny = kEps * std::max(a.norm_bound(), 1.0);
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      pivot_[i] = i;
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        pivot_[i] = i + 1;
      }
    }
    for (double& v : d_)
      if (v == 0.0) v = tiny;
  }

  void solve(std::vector<double>& x) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (pivot_[i] == i) {
        x[i + 1] -= dl_[i] * x[i];
      } else {
        const double temp = x[i];
        x[i] = x[i + 1];
        x[i + 1] = temp - dl_[i] * x[i];
      }
    }
    x[n_ - 1] /= d_[n_ - 1];
    if (n_ > 1) x[n_ - 2] = (x[n_ - 2] - du_[n_ - 2] * x[n_ - 1]) / d_[n_ - 2];
    for (std::size_t k = n_ >= 2 ? n_ - 2 : 0; k-- > 0;)
      x[k] = (x[k] - du_[k] * x[k + 1] - du2_[k] * x[k + 2]) / d_[k];
  }

 private:
  std::size_t n_;
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<std::size_t> pivot_;
};

// Solves (A - sigma I) x = rhs, using Sherman-Morrison for the corner terms.
class ShiftedSolver {
 public:
  ShiftedSolver(const SymmetricTridiagonal& a, double sigma) : a_(a) {
    if (!a.cyclic) {
      plain_.emplace(a, sigma, 0.0, 0.0);
      return;
    }
    gamma_ = -(a.diag.front() - sigma);
    if (gamma_ == 0.0) gamma_ = -std::max(a.norm_bound(), 1.0);
    plain_.emplace(a, sigma, gamma_, a.corner * a.corner / gamma_);
    correction_.assign(a.size(), 0.0);
    correction_.front() = gamma_;
    correction_.back() = a.corner;
    plain_->solve(correction_);
    denom_ = 1.0 + correction_.front() + a.corner / gamma_ * correction_.back();
    const double tiny = kEps * kEps;
    if (std::abs(denom_) < tiny) denom_ = denom_ < 0.0 ? -tiny : tiny;
  }

  void solve(std::vector<double>& x) const {
    plain_->solve(x);
    if (!a_.cyclic) return;
    const double vy = x.front() + a_.corner / gamma_ * x.back();
    const double f = vy / denom_;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= f * correction_[i];
  }

 private:
  const SymmetricTridiagonal& a_;
  std::optional<ShiftedTridiagonalSolver> plain_;
  std::vector<double> correction_;
  double gamma_ = 0.0;
  double denom_ = 1.0;
};

double norm2(const std::vector<double>& x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

}  // namespace

std::pair<double, double> SymmetricTridiagonal::gershgorin() const {
  const std::size_t n = size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < n) radius += std::abs(off[i]);
    if (cyclic && (i == 0 || i + 1 == n)) radius += std::abs(corner);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  return {lo, hi};
}

double SymmetricTridiagonal::norm_bound() const {
  const auto [lo, hi] = gershgorin();
  return std::max(std::abs(lo), std::abs(hi));
}

void SymmetricTridiagonal::multiply(std::span<const double> x,
                                    std::span<double> y) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < n) s += off[i] * x[i + 1];
    y[i] = s;
  }
  if (cyclic && n > 2) {
    y[0] += corner * x[n - 1];
    y[n - 1] += corner * x[0];
  }
}

std::size_t count_below(const SymmetricTridiagonal& a, double sigma) {
  const std::size_t n = a.size();
  if (n == 0) return 0;
  const double pivmin = pivot_floor(a);
  std::size_t count = 0;
  if (!a.cyclic || n < 3) {
    double q = guard_pivot(a.diag[0] - sigma, pivmin);
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
      q = guard_pivot(a.diag[i] - sigma - a.off[i - 1] * a.off[i - 1] / q,
                      pivmin);
      if (q < 0.0) ++count;
    }
    return count;
  }
  // Symmetric elimination of the cyclic matrix: the only fill is in the last
  // column, carried in `fill`; `tail` accumulates the last pivot.
  double q = a.diag[0] - sigma;
  double fill = a.corner;
  double tail = a.diag[n - 1] - sigma;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    q = guard_pivot(q, pivmin);
    if (q < 0.0) ++count;
    double next_fill = (i + 2 == n - 1) ? a.off[n - 2] : 0.0;
    next_fill -= a.off[i] * fill / q;
    tail -= fill * fill / q;
    q = a.diag[i + 1] - sigma - a.off[i] * a.off[i] / q;
    fill = next_fill;
  }
  q = guard_pivot(q, pivmin);
  if (q < 0.0) ++count;
  tail = guard_pivot(tail - fill * fill / q, pivmin);
  if (tail < 0.0) ++count;
  return count;
}

double kth_eigenvalue(const SymmetricTridiagonal& a, std::size_t k) {
  if (k >= a.size()) throw DomainError("eigenvalue index out of range");
  auto [lo, hi] = a.gershgorin();
  const double scale = std::max(a.norm_bound(), std::numeric_limits<double>::min());
  lo -= kEps * scale;
  hi += kEps * scale;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * kEps * (std::abs(lo) + std::abs(hi)) + 0.5 * kEps * scale)
      break;
    if (count_below(a, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<EigenPair> smallest_eigenpairs(const SymmetricTridiagonal& a,
                                           std::size_t count,
                                           const EigenOptions& options) {
  const std::size_t n = a.size();
  if (count == 0) throw DomainError("eigenpair count must be >= 1");
  if (count > n) throw DomainError("more eigenpairs requested than rows");
  const double scale = std::max(a.norm_bound(), 1e-300);
  const double tolerance = options.residual_factor * kEps * scale;

  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<EigenPair> out;
  out.reserve(count);
  std::vector<double> ax(n);

  auto orthogonalize = [&](std::vector<double>& x) {
    for (int pass = 0; pass < 2; ++pass)
      for (const EigenPair& p : out) {
        const double proj =
            std::inner_product(x.begin(), x.end(), p.vector.begin(), 0.0);
        for (std::size_t i = 0; i < n; ++i) x[i] -= proj * p.vector[i];
      }
  };

  for (std::size_t k = 0; k < count; ++k) {
    const double value = kth_eigenvalue(a, k);
    const ShiftedSolver solver(a, value);
    std::vector<double> x(n);
    for (double& v : x) v = uniform(rng);
    orthogonalize(x);
    double residual = std::numeric_limits<double>::infinity();
    double rayleigh = value;
    bool converged = false;
    for (int it = 0; it < options.max_inverse_iterations; ++it) {
      const double nx = norm2(x);
      if (!(nx > 0.0) || !std::isfinite(nx)) {
        for (double& v : x) v = uniform(rng);
        orthogonalize(x);
        continue;
      }
      for (double& v : x) v /= nx;
      solver.solve(x);
      orthogonalize(x);
      const double ny = norm2(x);
      if (!(ny > 0.0) || !std::isfinite(ny)) continue;
      for (double& v : x) v /= ny;
      a.multiply(x, ax);
      rayleigh = std::inner_product(x.begin(), x.end(), ax.begin(), 0.0);
      double r2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = ax[i] - rayleigh * x[i];
        r2 += d * d;
      }
      residual = std::sqrt(r2);
      if (residual <= tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream os;
      os << "inverse iteration for eigenvalue #" << k << " (" << value
         << ") did not converge: residual " << residual << " > " << tolerance;
      throw SolverError(os.str(), residual);
    }
    // Deterministic sign: largest-magnitude component positive.
    const auto big = std::max_element(x.begin(), x.end(), [](double p, double q) {
      return std::abs(p) < std::abs(q);
    });
    if (*big < 0.0)
      for (double& v : x) v = -v;
    out.push_back({rayleigh, std::move(x), residual});
  }
  return out;
}

}  // namespace belab
