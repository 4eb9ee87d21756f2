#include "discflux/flux_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace discflux {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> negated(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x = -x;
  return out;
}

}  // namespace

bool JumpPoint::degenerate() const { return left == point && point == right; }

JumpFlux make_jump_flux(std::size_t dimension, StateRange range,
                        std::vector<JumpPoint> jumps,
                        std::vector<PLFunction> pieces) {
  if (dimension == 0) {
    throw std::invalid_argument("flux: dimension must be >= 1");
  }
  if (!(range.lo < range.hi) || !std::isfinite(range.lo) ||
      !std::isfinite(range.hi)) {
    throw std::invalid_argument("flux: state_range must satisfy lo < hi");
  }
  if (pieces.size() != jumps.size() + 1) {
    throw std::invalid_argument("flux: expected " +
                                std::to_string(jumps.size() + 1) +
                                " pieces for " + std::to_string(jumps.size()) +
                                " jumps, got " + std::to_string(pieces.size()));
  }
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    const JumpPoint& j = jumps[k];
    if (j.left.size() != dimension || j.point.size() != dimension ||
        j.right.size() != dimension) {
      throw std::invalid_argument("flux: jump " + std::to_string(k) +
                                  " has wrong dimension");
    }
    if (!(j.location > range.lo && j.location < range.hi)) {
      throw std::invalid_argument("flux: jump at " + fmt(j.location) +
                                  " outside the open state range");
    }
    if (k > 0 && !(j.location > jumps[k - 1].location)) {
      throw std::invalid_argument(
          "flux: jump locations must be strictly increasing (" +
          fmt(jumps[k - 1].location) + ", " + fmt(j.location) + ")");
    }
  }
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const PLFunction& p = pieces[k];
    if (p.dimension() != dimension) {
      throw std::invalid_argument("flux: piece " + std::to_string(k) +
                                  " has wrong dimension");
    }
    const double lo = k == 0 ? range.lo : jumps[k - 1].location;
    const double hi = k == jumps.size() ? range.hi : jumps[k].location;
    if (p.lo() != lo || p.hi() != hi) {
      throw std::invalid_argument("flux: piece " + std::to_string(k) +
                                  " must span [" + fmt(lo) + ", " + fmt(hi) +
                                  "], got [" + fmt(p.lo()) + ", " +
                                  fmt(p.hi()) + "]");
    }
    auto first = p.value(0);
    auto last = p.value(p.size() - 1);
    if (k > 0 && !std::equal(first.begin(), first.end(),
                             jumps[k - 1].right.begin())) {
      throw std::invalid_argument("flux: piece " + std::to_string(k) +
                                  " start value differs from right limit at " +
                                  fmt(lo));
    }
    if (k < jumps.size() &&
        !std::equal(last.begin(), last.end(), jumps[k].left.begin())) {
      throw std::invalid_argument("flux: piece " + std::to_string(k) +
                                  " end value differs from left limit at " +
                                  fmt(hi));
    }
  }

  JumpFlux f;
  f.dimension_ = dimension;
  f.range_ = range;
  f.pieces_.push_back(std::move(pieces[0]));
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    if (jumps[k].degenerate()) {
      f.warnings_.push_back("dropped degenerate jump at u = " +
                            fmt(jumps[k].location));
      // Continuous across the dropped point: merge the neighbouring pieces.
      const PLFunction& a = f.pieces_.back();
      const PLFunction& b = pieces[k + 1];
      std::vector<double> x(a.breakpoints().begin(), a.breakpoints().end());
      std::vector<double> y(a.values().begin(), a.values().end());
      x.insert(x.end(), b.breakpoints().begin() + 1, b.breakpoints().end());
      y.insert(y.end(), b.values().begin() + static_cast<long>(dimension),
               b.values().end());
      f.pieces_.back() = PLFunction(std::move(x), std::move(y), dimension);
      continue;
    }
    f.jumps_.push_back(std::move(jumps[k]));
    f.pieces_.push_back(std::move(pieces[k + 1]));
  }
  return f;
}

std::size_t JumpFlux::piece_index(double u) const {
  auto it = std::upper_bound(
      jumps_.begin(), jumps_.end(), u,
      [](double x, const JumpPoint& j) { return x < j.location; });
  return static_cast<std::size_t>(it - jumps_.begin());
}

double JumpFlux::eval(double u, Side side, std::size_t component) const {
  if (!range_.contains(u)) {
    throw std::out_of_range("flux: u = " + fmt(u) + " outside state range [" +
                            fmt(range_.lo) + ", " + fmt(range_.hi) + "]");
  }
  const std::size_t k = piece_index(u);
  if (k > 0 && jumps_[k - 1].location == u) {
    const JumpPoint& j = jumps_[k - 1];
    switch (side) {
      case Side::kLeft:
        return j.left[component];
      case Side::kPoint:
        return j.point[component];
      case Side::kRight:
        return j.right[component];
    }
  }
  return pieces_[k].eval(u, component);
}

std::vector<double> JumpFlux::eval_sided(double u, Side side) const {
  std::vector<double> out(dimension_);
  for (std::size_t c = 0; c < dimension_; ++c) out[c] = eval(u, side, c);
  return out;
}

std::vector<double> JumpFlux::discontinuity_set() const {
  std::vector<double> out;
  out.reserve(jumps_.size());
  for (const JumpPoint& j : jumps_) out.push_back(j.location);
  return out;
}

JumpFlux heaviside_flux(StateRange range, double point_value) {
  return make_jump_flux(
      1, range, {JumpPoint{0.0, {0.0}, {point_value}, {1.0}}},
      {PLFunction({range.lo, 0.0}, {0.0, 0.0}),
       PLFunction({0.0, range.hi}, {1.0, 1.0})});
}

JumpFlux indicator_flux(StateRange range) {
  return make_jump_flux(1, range, {JumpPoint{0.0, {0.0}, {1.0}, {0.0}}},
                        {PLFunction({range.lo, 0.0}, {0.0, 0.0}),
                         PLFunction({0.0, range.hi}, {0.0, 0.0})});
}

JumpFlux sampled_flux(const std::function<double(double)>& f, StateRange range,
                      std::size_t samples) {
  if (samples < 2) {
    throw std::invalid_argument("flux: need at least two samples");
  }
  return make_jump_flux(1, range, {},
                        {sample_scalar(f, range.lo, range.hi, samples)});
}

JumpFlux burgers_flux(StateRange range, std::size_t samples) {
  return sampled_flux([](double u) { return 0.5 * u * u; }, range, samples);
}

JumpFlux linear_flux(StateRange range, double speed) {
  return make_jump_flux(
      1, range, {},
      {PLFunction({range.lo, range.hi}, {speed * range.lo, speed * range.hi})});
}

JumpFlux mirror_flux(const JumpFlux& f) {
  const std::size_t n = f.dimension();
  std::vector<JumpPoint> jumps;
  for (auto it = f.jumps().rbegin(); it != f.jumps().rend(); ++it) {
    jumps.push_back(JumpPoint{-it->location, negated(it->right),
                              negated(it->point), negated(it->left)});
  }
  std::vector<PLFunction> pieces;
  for (auto it = f.pieces().rbegin(); it != f.pieces().rend(); ++it) {
    const std::size_t m = it->size();
    std::vector<double> x(m), y(m * n);
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = -it->breakpoint(m - 1 - i);
      for (std::size_t c = 0; c < n; ++c) y[i * n + c] = -it->value(m - 1 - i, c);
    }
    pieces.emplace_back(std::move(x), std::move(y), n);
  }
  return make_jump_flux(n, StateRange{-f.state_range().hi, -f.state_range().lo},
                        std::move(jumps), std::move(pieces));
}

}  // namespace discflux
