#include "impulse_game/interpolation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

namespace impulse_game {

HermiteSeries::HermiteSeries(double t0, double t1, std::vector<double> values,
                             std::vector<double> slopes)
    : t0_(t0), t1_(t1), values_(std::move(values)), slopes_(std::move(slopes)) {
  assert(values_.size() >= 2 && values_.size() == slopes_.size());
  h_ = (t1_ - t0_) / static_cast<double>(values_.size() - 1);
}

HermiteSeries::Point HermiteSeries::operator()(double t) const {
  const std::size_t last = values_.size() - 1;
  if (t <= t0_) return {values_.front(), slopes_.front()};
  if (t >= t1_) return {values_.back(), slopes_.back()};
  std::size_t k = static_cast<std::size_t>((t - t0_) / h_);
  k = std::min(k, last - 1);
  const double left = t0_ + static_cast<double>(k) * h_;
  const double s = (t - left) / h_;
  if (s == 0.0) return {values_[k], slopes_[k]};

  const double y0 = values_[k], y1 = values_[k + 1];
  const double m0 = slopes_[k] * h_, m1 = slopes_[k + 1] * h_;
  const double s2 = s * s, s3 = s2 * s;
  const double value = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
                       (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
  const double dvalue = (6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * m0 +
                        (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * m1;
  return {value, dvalue / h_};
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t intervals) {
  std::vector<double> grid(intervals + 1);
  const double h = (hi - lo) / static_cast<double>(intervals);
  for (std::size_t i = 0; i <= intervals; ++i) {
    grid[i] = lo + static_cast<double>(i) * h;
  }
  grid.back() = hi;
  return grid;
}

}  // namespace impulse_game
