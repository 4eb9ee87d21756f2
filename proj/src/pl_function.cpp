#include "discflux/pl_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace discflux {

PLFunction::PLFunction(std::vector<double> breakpoints,
                       std::vector<double> values, std::size_t dimension,
                       Extrapolation extrapolation)
    : x_(std::move(breakpoints)),
      y_(std::move(values)),
      dimension_(dimension),
      extrapolation_(extrapolation) {
  if (dimension_ == 0) {
    throw std::invalid_argument("PLFunction: dimension must be >= 1");
  }
  if (x_.size() < 2) {
    throw std::invalid_argument("PLFunction: need at least two breakpoints");
  }
  if (y_.size() != x_.size() * dimension_) {
    throw std::invalid_argument(
        "PLFunction: expected " + std::to_string(x_.size() * dimension_) +
        " values, got " + std::to_string(y_.size()));
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i])) {
      throw std::invalid_argument("PLFunction: non-finite breakpoint");
    }
    if (i > 0 && !(x_[i] > x_[i - 1])) {
      throw std::invalid_argument(
          "PLFunction: breakpoints must be strictly increasing (index " +
          std::to_string(i) + ")");
    }
  }
  for (double v : y_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("PLFunction: non-finite value");
    }
  }
}

std::size_t PLFunction::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double PLFunction::interpolate(std::size_t i, double x,
                               std::size_t component) const {
  const double x0 = x_[i];
  const double y0 = y_[i * dimension_ + component];
  if (x == x0) return y0;
  const double x1 = x_[i + 1];
  const double y1 = y_[(i + 1) * dimension_ + component];
  if (x == x1) return y1;
  return y0 + (y1 - y0) * ((x - x0) / (x1 - x0));
}

double PLFunction::eval(double x, std::size_t component) const {
  if (!contains(x)) {
    if (extrapolation_ == Extrapolation::kConstant && !std::isnan(x)) {
      return x < lo() ? value(0, component) : value(size() - 1, component);
    }
    throw std::out_of_range("PLFunction: x = " + std::to_string(x) +
                            " outside [" + std::to_string(lo()) + ", " +
                            std::to_string(hi()) + "]");
  }
  return interpolate(segment(x), x, component);
}

std::vector<double> PLFunction::eval_vector(double x) const {
  std::vector<double> out(dimension_);
  for (std::size_t c = 0; c < dimension_; ++c) out[c] = eval(x, c);
  return out;
}

double PLFunction::slope(std::size_t segment_index,
                         std::size_t component) const {
  const std::size_t i = segment_index;
  return (value(i + 1, component) - value(i, component)) / (x_[i + 1] - x_[i]);
}

double PLFunction::max_abs_slope(std::size_t component) const {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    best = std::max(best, std::abs(slope(i, component)));
  }
  return best;
}

double PLFunction::min_on(double a, double b, std::size_t component) const {
  if (a > b) std::swap(a, b);
  double best = std::min(eval(a, component), eval(b, component));
  auto first = std::upper_bound(x_.begin(), x_.end(), a);
  for (auto it = first; it != x_.end() && *it < b; ++it) {
    best = std::min(best, y_[static_cast<std::size_t>(it - x_.begin()) *
                                 dimension_ +
                             component]);
  }
  return best;
}

double PLFunction::max_on(double a, double b, std::size_t component) const {
  if (a > b) std::swap(a, b);
  double best = std::max(eval(a, component), eval(b, component));
  auto first = std::upper_bound(x_.begin(), x_.end(), a);
  for (auto it = first; it != x_.end() && *it < b; ++it) {
    best = std::max(best, y_[static_cast<std::size_t>(it - x_.begin()) *
                                 dimension_ +
                             component]);
  }
  return best;
}

}  // namespace discflux
