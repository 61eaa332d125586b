#include "nbvp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nbvp {

Grid make_grid(std::size_t n, std::span<const double> breakpoints) {
  if (n < 3) {
    throw std::invalid_argument("make_grid: need at least 3 nodes, got " +
                                std::to_string(n));
  }
  std::vector<double> bps(breakpoints.begin(), breakpoints.end());
  for (double b : bps) {
    if (!(b > 0.0 && b < 1.0)) {
      throw std::invalid_argument("make_grid: breakpoint " + std::to_string(b) +
                                  " is not inside (0,1)");
    }
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  const std::size_t last = n - 1;
  std::vector<std::size_t> ends{0};
  for (double b : bps) {
    const auto k = static_cast<std::size_t>(std::llround(b * static_cast<double>(last)));
    if (k <= ends.back() || k >= last) {
      throw std::invalid_argument("make_grid: " + std::to_string(n) +
                                  " nodes cannot resolve breakpoint " +
                                  std::to_string(b));
    }
    ends.push_back(k);
  }
  ends.push_back(last);

  std::vector<double> anchors{0.0};
  anchors.insert(anchors.end(), bps.begin(), bps.end());
  anchors.push_back(1.0);

  Grid g;
  g.nodes_.assign(n, 0.0);
  g.weights_.assign(n, 0.0);
  for (std::size_t seg = 0; seg + 1 < ends.size(); ++seg) {
    const std::size_t i0 = ends[seg];
    const std::size_t i1 = ends[seg + 1];
    const double a = anchors[seg];
    const double b = anchors[seg + 1];
    const auto m = static_cast<double>(i1 - i0);
    const double h = (b - a) / m;
    for (std::size_t i = i0; i <= i1; ++i) {
      g.nodes_[i] = a + (b - a) * (static_cast<double>(i - i0) / m);
    }
    g.nodes_[i0] = a;
    g.nodes_[i1] = b;
    for (std::size_t i = i0; i < i1; ++i) {
      g.weights_[i] += 0.5 * h;
      g.weights_[i + 1] += 0.5 * h;
    }
  }
  g.breakpoints_ = std::move(bps);
  g.segment_ends_ = std::move(ends);
  return g;
}

bool Grid::near_breakpoint(std::size_t i) const noexcept {
  for (std::size_t s = 1; s + 1 < segment_ends_.size(); ++s) {
    const std::size_t k = segment_ends_[s];
    if (i + 1 >= k && i <= k + 1) return true;
  }
  return false;
}

double Grid::max_spacing() const noexcept {
  double h = 0.0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    h = std::max(h, nodes_[i] - nodes_[i - 1]);
  }
  return h;
}

double integrate(const Grid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) {
    throw std::invalid_argument("integrate: expected " + std::to_string(grid.size()) +
                                " samples, got " + std::to_string(samples.size()));
  }
  const auto w = grid.weights();
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double term = w[i] * samples[i];
    const double next = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
  }
  return sum + carry;
}

double sup_norm(std::span<const double> samples) noexcept {
  double m = 0.0;
  for (double v : samples) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace nbvp
