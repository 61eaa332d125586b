#include "nbvp/green_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nbvp {

void KernelSpec::validate() const {
  if (eps != Sign::minus && eps != Sign::plus) {
    throw std::invalid_argument("KernelSpec: eps must be +1 or -1");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("KernelSpec: omega must be positive, got " +
                                std::to_string(omega));
  }
  if (eps == Sign::plus && omega > std::numbers::pi / 2) {
    throw std::invalid_argument(
        "KernelSpec: eps=+1 requires omega <= pi/2 for a non-negative kernel, got " +
        std::to_string(omega));
  }
}

namespace {

// Both branches written through min/max so k(t,s) == k(s,t) bit for bit.
// At t == s the two branches coincide.
inline double kernel_unchecked(Sign eps, double omega, double scale, double t,
                               double s) noexcept {
  const double lo = std::min(t, s);
  const double hi = std::max(t, s);
  if (eps == Sign::minus) {
    return std::cosh(omega * (1.0 - hi)) * std::cosh(omega * lo) * scale;
  }
  return std::cos(omega * (1.0 - hi)) * std::cos(omega * lo) * scale;
}

inline double kernel_scale(const KernelSpec& spec) noexcept {
  return spec.eps == Sign::minus ? 1.0 / (spec.omega * std::sinh(spec.omega))
                                 : 1.0 / (spec.omega * std::sin(spec.omega));
}

}  // namespace

double kernel_value(const KernelSpec& spec, double t, double s) {
  spec.validate();
  if (!(t >= 0.0 && t <= 1.0) || !(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("kernel_value: arguments must lie in [0,1]");
  }
  return kernel_unchecked(spec.eps, spec.omega, kernel_scale(spec), t, s);
}

KernelMatrix assemble(const KernelSpec& spec, const Grid& grid) {
  spec.validate();
  const std::size_t n = grid.size();
  const auto t = grid.nodes();
  const double scale = kernel_scale(spec);

  KernelMatrix m;
  m.spec_ = spec;
  m.n_ = n;
  m.entries_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = kernel_unchecked(spec.eps, spec.omega, scale, t[i], t[j]);
      m.entries_[i * n + j] = v;
      m.entries_[j * n + i] = v;
    }
  }
  return m;
}

void KernelMatrix::integrate_against(const Grid& grid, std::span<const double> g,
                                     std::span<double> out) const {
  if (grid.size() != n_ || g.size() != n_ || out.size() != n_) {
    throw std::invalid_argument("KernelMatrix::integrate_against: size mismatch");
  }
  std::vector<double> wg(n_);
  const auto w = grid.weights();
  for (std::size_t j = 0; j < n_; ++j) wg[j] = w[j] * g[j];
  // Neumaier-compensated row sums. Plain summation leaves O(n eps) noise
  // that second differences of the result amplify by 1/h^2.
  for (std::size_t i = 0; i < n_; ++i) {
    const double* r = entries_.data() + i * n_;
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double term = r[j] * wg[j];
      const double next = sum + term;
      carry += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
      sum = next;
    }
    out[i] = sum + carry;
  }
}

std::vector<double> KernelMatrix::integrate_against(const Grid& grid,
                                                    std::span<const double> g) const {
  std::vector<double> out(n_);
  integrate_against(grid, g, out);
  return out;
}

}  // namespace nbvp
