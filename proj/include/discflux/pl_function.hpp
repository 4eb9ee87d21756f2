#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace discflux {

/// Piecewise-linear map from a strictly increasing breakpoint grid into R^n.
///
/// Values are stored row-major: value(i) is the n-vector at breakpoint i.
/// Evaluation at a breakpoint returns the stored value bit-exactly. Outside
/// [lo(), hi()] evaluation throws unless constant extrapolation was enabled.
class PLFunction {
 public:
  enum class Extrapolation { kNone, kConstant };

  PLFunction() = default;
  PLFunction(std::vector<double> breakpoints, std::vector<double> values,
             std::size_t dimension = 1,
             Extrapolation extrapolation = Extrapolation::kNone);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return x_.size(); }
  bool empty() const { return x_.empty(); }
  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  bool contains(double x) const { return x >= lo() && x <= hi(); }
  Extrapolation extrapolation() const { return extrapolation_; }

  std::span<const double> breakpoints() const { return x_; }
  double breakpoint(std::size_t i) const { return x_[i]; }
  std::span<const double> value(std::size_t i) const {
    return {y_.data() + i * dimension_, dimension_};
  }
  double value(std::size_t i, std::size_t component) const {
    return y_[i * dimension_ + component];
  }
  std::span<const double> values() const { return y_; }

  /// Index i of the segment [x_i, x_{i+1}] holding x; x == x_i maps to i
  /// (the last breakpoint maps to the last segment).
  std::size_t segment(double x) const;

  double eval(double x, std::size_t component = 0) const;
  /// eval() with the segment already known (x must lie in it).
  double eval_in_segment(std::size_t i, double x,
                         std::size_t component = 0) const {
    return interpolate(i, x, component);
  }
  std::vector<double> eval_vector(double x) const;
  double operator()(double x) const { return eval(x, 0); }

  double slope(std::size_t segment_index, std::size_t component = 0) const;
  /// max over segments of |slope| in the given component.
  double max_abs_slope(std::size_t component = 0) const;

  /// Exact extrema of one component over [a, b] (breakpoints inside plus
  /// the two endpoints).
  double min_on(double a, double b, std::size_t component = 0) const;
  double max_on(double a, double b, std::size_t component = 0) const;

  bool operator==(const PLFunction&) const = default;

 private:
  double interpolate(std::size_t i, double x, std::size_t component) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::size_t dimension_ = 1;
  Extrapolation extrapolation_ = Extrapolation::kNone;
};

/// Samples a scalar closed form at `samples` uniformly spaced nodes on [lo, hi].
template <typename F>
PLFunction sample_scalar(F&& f, double lo, double hi, std::size_t samples) {
  std::vector<double> x(samples), y(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    x[i] = i + 1 == samples ? hi : lo + (hi - lo) * static_cast<double>(i) /
                                         static_cast<double>(samples - 1);
    y[i] = f(x[i]);
  }
  return PLFunction(std::move(x), std::move(y));
}

}  // namespace discflux
