#pragma once

#include <cstddef>
#include <vector>

#include "discflux/flux_model.hpp"
#include "discflux/pl_function.hpp"

namespace discflux {

/// Positive plateau widths h_k, one per jump in index order.
struct WeightAssignment {
  std::vector<double> h;

  double total() const;
  /// h_k = 2^-k, k = 1..count.
  static WeightAssignment dyadic(std::size_t count);
};

/// The strictly increasing map alpha(u) = u + sum_{u_k < u} h_k, described
/// by its jumps: at u_k it leaps from alpha(u_k-) to alpha(u_k+).
struct AlphaMap {
  struct Gap {
    double u;
    double minus;  // alpha(u_k-)
    double plus;   // alpha(u_k+)
  };
  std::vector<Gap> gaps;
  std::vector<double> weights;

  /// alpha(u); at a jump this is the left limit (the mass at u_k is not
  /// counted in (-inf, u)).
  double operator()(double u) const;
};

AlphaMap build_alpha(const JumpFlux& f, const WeightAssignment& w);

/// Interval [a, b] of the v-axis on which b(v) == u, with interior node c.
struct Plateau {
  double a;
  double c;
  double b;
  double u;
  double width;
};

/// Continuous parametrization (b, g) of the multivalued flux graph: b is
/// non-decreasing and 1-Lipschitz, g traces phi off the plateaus and the
/// chain left -> point -> right on each plateau.
class Parametrization {
 public:
  Parametrization(PLFunction b, PLFunction g, std::vector<Plateau> plateaus,
                  WeightAssignment weights, double theta,
                  StateRange state_range);

  const PLFunction& b() const { return b_; }
  const PLFunction& g() const { return g_; }
  const std::vector<Plateau>& plateaus() const { return plateaus_; }
  const WeightAssignment& weights() const { return weights_; }
  double theta() const { return theta_; }
  std::size_t dimension() const { return g_.dimension(); }
  const StateRange& state_range() const { return state_range_; }
  double v_lo() const { return b_.lo(); }
  double v_hi() const { return b_.hi(); }

 private:
  PLFunction b_;
  PLFunction g_;
  std::vector<Plateau> plateaus_;
  WeightAssignment weights_;
  double theta_;
  StateRange state_range_;
};

Parametrization build_parametrization(const JumpFlux& f,
                                      const WeightAssignment& w,
                                      double theta = 0.5);
/// Same, with the default weights h_k = 2^-k.
Parametrization build_parametrization(const JumpFlux& f, double theta = 0.5);

/// u = -b(-v), g~(v) = -g(-v): the parametrization of the flux -phi(-u)
/// obtained by reflecting (b, g).
Parametrization mirror_parametrization(const Parametrization& p);

/// Symmetric Hausdorff distance between the curves {(b(v), g(v))} in
/// R^{1+n}. Each segment is sampled at `samples_per_segment` points and
/// measured against the other polyline exactly.
double graph_distance(const Parametrization& p, const Parametrization& q,
                      std::size_t samples_per_segment = 64);

bool graphs_equivalent(const Parametrization& p, const Parametrization& q,
                       double tol);

}  // namespace discflux
