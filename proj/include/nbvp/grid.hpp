#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nbvp {

/// A partition of [0,1] with composite trapezoidal weights.
///
/// Interior breakpoints are nodes of the grid and split it into segments. The
/// spacing is uniform inside every segment, and the trapezoid rule is applied
/// segment by segment, so a function that is smooth on each segment is
/// integrated to second order even when it has a kink at a breakpoint.
class Grid {
 public:
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  /// Node indices that start a segment, followed by n-1. Always contains 0
  /// and n-1; interior entries are the breakpoint indices.
  std::span<const std::size_t> segment_ends() const noexcept {
    return segment_ends_;
  }

  /// True if node i is a breakpoint node or a direct neighbour of one.
  bool near_breakpoint(std::size_t i) const noexcept;

  /// Largest spacing between consecutive nodes.
  double max_spacing() const noexcept;

 private:
  friend Grid make_grid(std::size_t n, std::span<const double> breakpoints);

  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> breakpoints_;
  std::vector<std::size_t> segment_ends_;
};

/// Builds an n-node grid containing every breakpoint as an exact node.
///
/// Each breakpoint b is assigned the index round(b (n-1)), so when the
/// uniform grid already contains b (for example 2/3 with 3 | n-1) the result
/// is the uniform grid with that node snapped to the exact value.
/// Throws std::invalid_argument if n < 3, a breakpoint is outside (0,1), or
/// n is too small to give every breakpoint its own interior node.
Grid make_grid(std::size_t n, std::span<const double> breakpoints = {});

/// Sum of w_i * samples_i.
double integrate(const Grid& grid, std::span<const double> samples);

/// max_i |samples_i|, the discrete sup-norm.
double sup_norm(std::span<const double> samples) noexcept;

}  // namespace nbvp
