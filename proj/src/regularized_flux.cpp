#include "discflux/regularized_flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace discflux {

namespace {

PLFunction first_component(const PLFunction& f) {
  if (f.dimension() == 1) return f;
  std::vector<double> x(f.breakpoints().begin(), f.breakpoints().end());
  std::vector<double> y(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) y[i] = f.value(i, 0);
  return PLFunction(std::move(x), std::move(y));
}

}  // namespace

RegularizedFlux::RegularizedFlux(double r, PLFunction b_r, PLFunction phi_r)
    : r_(r),
      b_r_(std::move(b_r)),
      phi_r_(std::move(phi_r)),
      scalar_(first_component(phi_r_)),
      lipschitz_(scalar_.max_abs_slope()) {}

RegularizedFlux regularize(const Parametrization& p, double r) {
  if (!(r >= 1.0) || !std::isfinite(r)) {
    throw std::invalid_argument("regularize: r must be >= 1");
  }
  const PLFunction& b = p.b();
  const PLFunction& g = p.g();
  const std::size_t n = g.dimension();
  const StateRange range = p.state_range();

  std::vector<double> v(b.breakpoints().begin(), b.breakpoints().end());
  std::vector<double> bv(b.values().begin(), b.values().end());
  std::vector<double> gv(g.values().begin(), g.values().end());

  // b continues with slope 1 beyond the v-range; solve b(v) + v/r = u_end.
  if (bv.front() + v.front() / r > range.lo) {
    const double vn = (range.lo - bv.front() + v.front()) / (1.0 + 1.0 / r);
    v.insert(v.begin(), vn);
    bv.insert(bv.begin(), bv.front() + (vn - v[1]));
    gv.insert(gv.begin(), gv.begin(), gv.begin() + static_cast<long>(n));
  }
  if (bv.back() + v.back() / r < range.hi) {
    const double vn = (range.hi - bv.back() + v.back()) / (1.0 + 1.0 / r);
    bv.push_back(bv.back() + (vn - v.back()));
    v.push_back(vn);
    gv.insert(gv.end(), gv.end() - static_cast<long>(n), gv.end());
  }

  std::vector<double> u(v.size()), br(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    br[j] = bv[j] + v[j] / r;
    u[j] = br[j];
  }
  return RegularizedFlux(r, PLFunction(std::move(v), std::move(br)),
                         PLFunction(std::move(u), std::move(gv), n));
}

double invert_br(const RegularizedFlux& rf, double u) {
  const PLFunction& phi = rf.phi_r();
  if (!phi.contains(u)) {
    throw std::out_of_range("invert_br: u = " + std::to_string(u) +
                            " outside [" + std::to_string(phi.lo()) + ", " +
                            std::to_string(phi.hi()) + "]");
  }
  // phi_r's breakpoints are b_r(v_j); map back through the same segment.
  const std::size_t i = phi.segment(u);
  const double u0 = phi.breakpoint(i);
  const double u1 = phi.breakpoint(i + 1);
  const double v0 = rf.b_r().breakpoint(i);
  const double v1 = rf.b_r().breakpoint(i + 1);
  if (u == u0) return v0;
  if (u == u1) return v1;
  return v0 + (v1 - v0) * ((u - u0) / (u1 - u0));
}

double lipschitz_bound(const RegularizedFlux& rf) { return rf.lipschitz(); }

}  // namespace discflux
