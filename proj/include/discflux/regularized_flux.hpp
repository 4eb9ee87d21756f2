#pragma once

#include <cstddef>

#include "discflux/parametrizer.hpp"
#include "discflux/pl_function.hpp"

namespace discflux {

/// Strictly increasing b_r(v) = b(v) + v/r and the continuous flux
/// phi_r(u) = g(b_r^{-1}(u)), both materialized on the same node set:
/// phi_r's breakpoints are u_j = b_r(v_j) and its values are g(v_j).
class RegularizedFlux {
 public:
  RegularizedFlux(double r, PLFunction b_r, PLFunction phi_r);

  double r() const { return r_; }
  const PLFunction& b_r() const { return b_r_; }
  const PLFunction& phi_r() const { return phi_r_; }
  /// First component of phi_r; the finite-volume solver is scalar.
  const PLFunction& scalar_flux() const { return scalar_; }
  double lipschitz() const { return lipschitz_; }
  double u_lo() const { return phi_r_.lo(); }
  double u_hi() const { return phi_r_.hi(); }

 private:
  double r_;
  PLFunction b_r_;
  PLFunction phi_r_;
  PLFunction scalar_;
  double lipschitz_;
};

/// Throws std::invalid_argument unless r >= 1. When b_r does not reach the
/// ends of the declared state range, the node set is extended by one node
/// per side on which b continues with unit slope and g stays constant.
RegularizedFlux regularize(const Parametrization& p, double r);

/// Exact inverse of b_r by segment lookup; throws std::out_of_range outside
/// [b_r(v_lo), b_r(v_hi)].
double invert_br(const RegularizedFlux& rf, double u);

/// max over segments of |d phi_r / du| (first component).
double lipschitz_bound(const RegularizedFlux& rf);

}  // namespace discflux
