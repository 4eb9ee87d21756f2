#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "discflux/pl_function.hpp"

namespace discflux {

struct Boundary {
  enum class Kind { kPeriodic, kConstant };
  Kind kind = Kind::kPeriodic;
  // Ghost-cell states for Kind::kConstant.
  double left = 0.0;
  double right = 0.0;

  static Boundary periodic() { return {}; }
  static Boundary constant(double left, double right) {
    return {Kind::kConstant, left, right};
  }
  bool is_periodic() const { return kind == Kind::kPeriodic; }
  bool operator==(const Boundary&) const = default;
};

/// Cell averages on a uniform grid of [x_lo, x_hi] at time t.
class GridSolution {
 public:
  GridSolution(double x_lo, double x_hi, std::vector<double> u, double t = 0.0,
               Boundary boundary = Boundary::periodic());

  /// Cell averages of f, by 3-point Gauss-Legendre on 4 sub-cells per cell.
  static GridSolution from_function(const std::function<double(double)>& f,
                                    double x_lo, double x_hi, std::size_t cells,
                                    Boundary boundary = Boundary::periodic());

  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  std::size_t cells() const { return u_.size(); }
  double dx() const { return (x_hi_ - x_lo_) / static_cast<double>(u_.size()); }
  double x_center(std::size_t j) const {
    return x_lo_ + (static_cast<double>(j) + 0.5) * dx();
  }
  double time() const { return t_; }
  const Boundary& boundary() const { return boundary_; }
  std::span<const double> values() const { return u_; }
  double operator[](std::size_t j) const { return u_[j]; }

  double min() const;
  double max() const;
  /// sum_j u_j dx
  double mass() const;

  /// Same grid and boundary, new values and time.
  GridSolution with_values(std::vector<double> u, double t) const;
  GridSolution with_boundary(Boundary boundary) const;
  bool same_grid(const GridSolution& other) const;

 private:
  double x_lo_;
  double x_hi_;
  std::vector<double> u_;
  double t_;
  Boundary boundary_;
};

enum class FluxKind { kGodunov, kEngquistOsher };

struct SchemeParams {
  double cfl = 0.9;
  FluxKind flux = FluxKind::kGodunov;
};

/// Monotone two-point flux for the scalar PL flux phi. Godunov takes the
/// exact min (uL <= uR) or max (uL > uR) of phi over the interval;
/// Engquist-Osher integrates |phi'| exactly over the PL segments.
double numerical_flux(const PLFunction& phi, double u_left, double u_right,
                      FluxKind kind);

/// cfl * dx / L with L the largest |slope| of phi; +inf for constant phi.
double stable_dt(const GridSolution& s, const PLFunction& phi,
                 const SchemeParams& params);

/// One forward-Euler conservative update with the given dt. Throws
/// std::domain_error when L * dt / dx exceeds params.cfl.
GridSolution step(const GridSolution& s, const PLFunction& phi,
                  const SchemeParams& params, double dt);
GridSolution step(const GridSolution& s, const PLFunction& phi,
                  const SchemeParams& params);

/// Advances s0 to t_end with the largest stable dt, landing exactly on every
/// snapshot time in (s0.time, t_end]. Returns the snapshots in time order
/// (a snapshot equal to s0.time returns s0) followed by the state at t_end
/// unless t_end was itself requested.
std::vector<GridSolution> run(const GridSolution& s0, const PLFunction& phi,
                              const SchemeParams& params, double t_end,
                              std::span<const double> snapshot_times = {});

/// Largest positive part over cells of the discrete Kruzhkov residual
///   (|u_j' - k| - |u_j - k|)/dt + (Q_{j+1/2} - Q_{j-1/2})/dx,
/// Q(a, b) = F(a v k, b v k) - F(a ^ k, b ^ k), for the step prev -> next.
double entropy_residual(const GridSolution& prev, const GridSolution& next,
                        const PLFunction& phi, double k,
                        FluxKind kind = FluxKind::kGodunov);

}  // namespace discflux
