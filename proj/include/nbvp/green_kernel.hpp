#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nbvp/grid.hpp"

namespace nbvp {

/// Sign of the second-derivative term in  eps*u'' + omega^2*u = g.
enum class Sign : int { minus = -1, plus = 1 };

constexpr double to_double(Sign s) noexcept { return static_cast<int>(s); }

/// Green's function parameters for the Neumann problem
///   eps*u'' + omega^2*u = g,  u'(0) = u'(1) = 0.
///
/// The kernel is non-negative for eps = -1 with any omega > 0, and for
/// eps = +1 with 0 < omega <= pi/2.
struct KernelSpec {
  Sign eps = Sign::minus;
  double omega = 1.0;

  /// Throws std::invalid_argument when omega is outside the admissible range.
  void validate() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

/// k(t,s). Throws std::invalid_argument for an invalid spec or t,s outside [0,1].
double kernel_value(const KernelSpec& spec, double t, double s);

/// Dense row-major discretization G_ij = k(t_i, t_j) on a grid.
class KernelMatrix {
 public:
  const KernelSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }

  /// out_i = sum_j w_j G_ij g_j, the Nystrom image of g.
  void integrate_against(const Grid& grid, std::span<const double> g,
                         std::span<double> out) const;
  std::vector<double> integrate_against(const Grid& grid,
                                        std::span<const double> g) const;

 private:
  friend KernelMatrix assemble(const KernelSpec& spec, const Grid& grid);

  KernelSpec spec_;
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

KernelMatrix assemble(const KernelSpec& spec, const Grid& grid);

}  // namespace nbvp
