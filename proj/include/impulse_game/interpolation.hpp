#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace impulse_game {

// Piecewise cubic Hermite interpolant on a uniform grid. Node slopes are
// supplied by the caller (for ODE solutions: the right-hand side at the node).
class HermiteSeries {
 public:
  HermiteSeries() = default;
  HermiteSeries(double t0, double t1, std::vector<double> values,
                std::vector<double> slopes);

  struct Point {
    double value;
    double slope;
  };

  // Clamped to [t0, t1].
  Point operator()(double t) const;

  std::span<const double> values() const { return values_; }
  std::span<const double> slopes() const { return slopes_; }
  std::size_t size() const { return values_.size(); }

 private:
  double t0_ = 0.0;
  double t1_ = 0.0;
  double h_ = 0.0;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

std::vector<double> uniform_grid(double lo, double hi, std::size_t intervals);

}  // namespace impulse_game
