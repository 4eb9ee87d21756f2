#include "discflux/parametrizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace discflux {

double WeightAssignment::total() const {
  return std::accumulate(h.begin(), h.end(), 0.0);
}

WeightAssignment WeightAssignment::dyadic(std::size_t count) {
  WeightAssignment w;
  w.h.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    w.h[k] = std::ldexp(1.0, -static_cast<int>(k + 1));
  }
  return w;
}

namespace {

void check_weights(const JumpFlux& f, const WeightAssignment& w) {
  if (w.h.size() != f.jumps().size()) {
    throw std::invalid_argument(
        "parametrization: " + std::to_string(f.jumps().size()) +
        " jumps but " + std::to_string(w.h.size()) + " weights");
  }
  for (double h : w.h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw std::invalid_argument("parametrization: weights must be positive");
    }
  }
}

}  // namespace

double AlphaMap::operator()(double u) const {
  double shift = 0.0;
  for (std::size_t k = 0; k < gaps.size() && gaps[k].u < u; ++k) {
    shift += weights[k];
  }
  return u + shift;
}

AlphaMap build_alpha(const JumpFlux& f, const WeightAssignment& w) {
  check_weights(f, w);
  AlphaMap alpha;
  alpha.weights = w.h;
  double shift = 0.0;
  for (std::size_t k = 0; k < f.jumps().size(); ++k) {
    const double u = f.jumps()[k].location;
    const double minus = u + shift;
    alpha.gaps.push_back({u, minus, minus + w.h[k]});
    shift += w.h[k];
  }
  return alpha;
}

Parametrization::Parametrization(PLFunction b, PLFunction g,
                                 std::vector<Plateau> plateaus,
                                 WeightAssignment weights, double theta,
                                 StateRange state_range)
    : b_(std::move(b)),
      g_(std::move(g)),
      plateaus_(std::move(plateaus)),
      weights_(std::move(weights)),
      theta_(theta),
      state_range_(state_range) {
  if (b_.dimension() != 1 ||
      !std::equal(b_.breakpoints().begin(), b_.breakpoints().end(),
                  g_.breakpoints().begin(), g_.breakpoints().end())) {
    throw std::invalid_argument(
        "parametrization: b must be scalar and share g's breakpoints");
  }
}

Parametrization build_parametrization(const JumpFlux& f,
                                      const WeightAssignment& w,
                                      double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("parametrization: theta must lie in (0, 1)");
  }
  const AlphaMap alpha = build_alpha(f, w);
  const std::size_t n = f.dimension();
  const auto& jumps = f.jumps();
  const auto& pieces = f.pieces();

  std::vector<double> v, bv, gv;
  std::vector<Plateau> plateaus;
  auto push = [&](double vi, double ui, std::span<const double> gi) {
    v.push_back(vi);
    bv.push_back(ui);
    gv.insert(gv.end(), gi.begin(), gi.end());
  };

  double shift = 0.0;  // sum of h_j over jumps below piece k
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const PLFunction& piece = pieces[k];
    if (k > 0) shift += w.h[k - 1];
    for (std::size_t i = 0; i < piece.size(); ++i) {
      const double u = piece.breakpoint(i);
      if (k > 0 && i == 0) {
        // Node b_k: already emitted with the plateau of jump k-1.
        continue;
      }
      if (k < jumps.size() && i + 1 == piece.size()) {
        const AlphaMap::Gap& gap = alpha.gaps[k];
        const JumpPoint& j = jumps[k];
        const double a = gap.minus;
        const double b = gap.plus;
        const double c = a + theta * (b - a);
        push(a, u, j.left);
        push(c, u, j.point);
        push(b, u, j.right);
        plateaus.push_back({a, c, b, u, w.h[k]});
        continue;
      }
      push(u + shift, u, piece.value(i));
    }
  }

  PLFunction b_fn(v, std::move(bv));
  return Parametrization(std::move(b_fn), PLFunction(std::move(v), std::move(gv), n),
                         std::move(plateaus), w, theta, f.state_range());
}

Parametrization build_parametrization(const JumpFlux& f, double theta) {
  return build_parametrization(f, WeightAssignment::dyadic(f.jumps().size()),
                               theta);
}

Parametrization mirror_parametrization(const Parametrization& p) {
  const std::size_t m = p.b().size();
  const std::size_t n = p.dimension();
  std::vector<double> v(m), bv(m), gv(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t src = m - 1 - i;
    v[i] = -p.b().breakpoint(src);
    bv[i] = -p.b().value(src, 0);
    for (std::size_t c = 0; c < n; ++c) gv[i * n + c] = -p.g().value(src, c);
  }
  std::vector<Plateau> plateaus;
  for (auto it = p.plateaus().rbegin(); it != p.plateaus().rend(); ++it) {
    plateaus.push_back({-it->b, -it->c, -it->a, -it->u, it->width});
  }
  WeightAssignment w{{p.weights().h.rbegin(), p.weights().h.rend()}};
  PLFunction b_fn(v, std::move(bv));
  return Parametrization(
      std::move(b_fn), PLFunction(std::move(v), std::move(gv), n),
      std::move(plateaus), std::move(w), 1.0 - p.theta(),
      StateRange{-p.state_range().hi, -p.state_range().lo});
}

namespace {

using Point = std::vector<double>;

std::vector<Point> curve_points(const Parametrization& p) {
  std::vector<Point> pts(p.b().size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i].push_back(p.b().value(i, 0));
    auto g = p.g().value(i);
    pts[i].insert(pts[i].end(), g.begin(), g.end());
  }
  return pts;
}

double point_segment_distance(const Point& x, const Point& a, const Point& b) {
  double ee = 0.0, de = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = b[i] - a[i];
    ee += e * e;
    de += (x[i] - a[i]) * e;
  }
  const double t = ee > 0.0 ? std::clamp(de / ee, 0.0, 1.0) : 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = a[i] + t * (b[i] - a[i]) - x[i];
    d2 += r * r;
  }
  return std::sqrt(d2);
}

double point_polyline_distance(const Point& x, const std::vector<Point>& line) {
  double best = INFINITY;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    best = std::min(best, point_segment_distance(x, line[i], line[i + 1]));
    if (best == 0.0) break;
  }
  return best;
}

double directed_distance(const std::vector<Point>& from,
                         const std::vector<Point>& to, std::size_t samples) {
  double worst = 0.0;
  Point x(from.front().size());
  for (std::size_t i = 0; i + 1 < from.size(); ++i) {
    for (std::size_t s = 0; s < samples; ++s) {
      if (s == 0) {
        x = from[i];
      } else {
        const double t = static_cast<double>(s) / static_cast<double>(samples);
        for (std::size_t c = 0; c < x.size(); ++c) {
          x[c] = from[i][c] + t * (from[i + 1][c] - from[i][c]);
        }
      }
      worst = std::max(worst, point_polyline_distance(x, to));
    }
  }
  return std::max(worst, point_polyline_distance(from.back(), to));
}

}  // namespace

double graph_distance(const Parametrization& p, const Parametrization& q,
                      std::size_t samples_per_segment) {
  if (p.dimension() != q.dimension()) {
    throw std::invalid_argument("graph_distance: dimension mismatch");
  }
  const auto a = curve_points(p);
  const auto b = curve_points(q);
  if (a == b) return 0.0;
  const std::size_t s = std::max<std::size_t>(samples_per_segment, 1);
  return std::max(directed_distance(a, b, s), directed_distance(b, a, s));
}

bool graphs_equivalent(const Parametrization& p, const Parametrization& q,
                       double tol) {
  return graph_distance(p, q) <= tol;
}

}  // namespace discflux
