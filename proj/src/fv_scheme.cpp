#include "discflux/fv_scheme.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace discflux {

GridSolution::GridSolution(double x_lo, double x_hi, std::vector<double> u,
                           double t, Boundary boundary)
    : x_lo_(x_lo), x_hi_(x_hi), u_(std::move(u)), t_(t), boundary_(boundary) {
  if (!(x_hi_ > x_lo_)) {
    throw std::invalid_argument("grid: need x_hi > x_lo");
  }
  if (u_.size() < 2) {
    throw std::invalid_argument("grid: need at least two cells");
  }
  if (!(t_ >= 0.0)) {
    throw std::invalid_argument("grid: time must be >= 0");
  }
}

GridSolution GridSolution::from_function(const std::function<double(double)>& f,
                                         double x_lo, double x_hi,
                                         std::size_t cells, Boundary boundary) {
  if (cells < 2) throw std::invalid_argument("grid: need at least two cells");
  static constexpr std::array<double, 3> kNodes = {-0.7745966692414834, 0.0,
                                                   0.7745966692414834};
  static constexpr std::array<double, 3> kWeights = {5.0 / 9.0, 8.0 / 9.0,
                                                     5.0 / 9.0};
  constexpr int kSub = 4;
  const double dx = (x_hi - x_lo) / static_cast<double>(cells);
  std::vector<double> u(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const double left = x_lo + static_cast<double>(j) * dx;
    double acc = 0.0;
    for (int s = 0; s < kSub; ++s) {
      const double mid = left + (s + 0.5) * dx / kSub;
      for (std::size_t q = 0; q < kNodes.size(); ++q) {
        acc += kWeights[q] * f(mid + 0.5 * dx / kSub * kNodes[q]);
      }
    }
    u[j] = acc / (2.0 * kSub);
  }
  return GridSolution(x_lo, x_hi, std::move(u), 0.0, boundary);
}

double GridSolution::min() const { return *std::min_element(u_.begin(), u_.end()); }
double GridSolution::max() const { return *std::max_element(u_.begin(), u_.end()); }

double GridSolution::mass() const {
  double acc = 0.0;
  for (double v : u_) acc += v;
  return acc * dx();
}

GridSolution GridSolution::with_values(std::vector<double> u, double t) const {
  if (u.size() != u_.size()) {
    throw std::invalid_argument("grid: cell count mismatch");
  }
  return GridSolution(x_lo_, x_hi_, std::move(u), t, boundary_);
}

GridSolution GridSolution::with_boundary(Boundary boundary) const {
  return GridSolution(x_lo_, x_hi_, u_, t_, boundary);
}

bool GridSolution::same_grid(const GridSolution& other) const {
  return x_lo_ == other.x_lo_ && x_hi_ == other.x_hi_ &&
         u_.size() == other.u_.size() && boundary_ == other.boundary_;
}

namespace {

void check_state(const PLFunction& phi, double u) {
  if (!phi.contains(u)) {
    throw std::out_of_range("numerical flux: state " + std::to_string(u) +
                            " outside flux range [" + std::to_string(phi.lo()) +
                            ", " + std::to_string(phi.hi()) + "]");
  }
}

double godunov(const PLFunction& phi, double a, double b) {
  if (a <= b) return phi.min_on(a, b);
  return phi.max_on(b, a);
}

/// Integral of |phi'| over [lo, hi], lo <= hi.
double variation(const PLFunction& phi, double lo, double hi) {
  const std::size_t first = phi.segment(lo);
  const std::size_t last = phi.segment(hi);
  if (first == last) return std::abs(phi(hi) - phi(lo));
  double acc = std::abs(phi.value(first + 1, 0) - phi(lo));
  for (std::size_t i = first + 1; i < last; ++i) {
    acc += std::abs(phi.value(i + 1, 0) - phi.value(i, 0));
  }
  return acc + std::abs(phi(hi) - phi.value(last, 0));
}

double engquist_osher(const PLFunction& phi, double a, double b) {
  const double avg = 0.5 * (phi(a) + phi(b));
  if (a <= b) return avg - 0.5 * variation(phi, a, b);
  return avg + 0.5 * variation(phi, b, a);
}

double flux_value(const PLFunction& phi, double a, double b, FluxKind kind) {
  return kind == FluxKind::kGodunov ? godunov(phi, a, b)
                                    : engquist_osher(phi, a, b);
}

double ghost_left(const GridSolution& s, std::span<const double> u) {
  return s.boundary().is_periodic() ? u.back() : s.boundary().left;
}

double ghost_right(const GridSolution& s, std::span<const double> u) {
  return s.boundary().is_periodic() ? u.front() : s.boundary().right;
}

// A state with its flux segment and flux value, computed once per cell per
// step instead of once per face evaluation.
struct Located {
  double u;
  double f;
  std::size_t seg;
};

Located locate(const PLFunction& phi, double u) {
  check_state(phi, u);
  const std::size_t seg = phi.segment(u);
  return {u, phi.eval_in_segment(seg, u), seg};
}

// Same extrema and variation as godunov()/engquist_osher(), reusing the
// located segments.
double godunov_located(const PLFunction& phi, const Located& a,
                       const Located& b) {
  const auto x = phi.breakpoints();
  if (a.u <= b.u) {
    double best = std::min(a.f, b.f);
    for (std::size_t i = a.seg + 1; i < x.size() && x[i] < b.u; ++i) {
      best = std::min(best, phi.value(i, 0));
    }
    return best;
  }
  double best = std::max(a.f, b.f);
  for (std::size_t i = b.seg + 1; i < x.size() && x[i] < a.u; ++i) {
    best = std::max(best, phi.value(i, 0));
  }
  return best;
}

double variation_located(const PLFunction& phi, const Located& lo,
                         const Located& hi) {
  if (lo.seg == hi.seg) return std::abs(hi.f - lo.f);
  double acc = std::abs(phi.value(lo.seg + 1, 0) - lo.f);
  for (std::size_t i = lo.seg + 1; i < hi.seg; ++i) {
    acc += std::abs(phi.value(i + 1, 0) - phi.value(i, 0));
  }
  return acc + std::abs(hi.f - phi.value(hi.seg, 0));
}

double flux_located(const PLFunction& phi, const Located& a, const Located& b,
                    FluxKind kind) {
  if (kind == FluxKind::kGodunov) return godunov_located(phi, a, b);
  const double avg = 0.5 * (a.f + b.f);
  if (a.u <= b.u) return avg - 0.5 * variation_located(phi, a, b);
  return avg + 0.5 * variation_located(phi, b, a);
}

/// Face fluxes F_{j-1/2}, j = 0..J (J+1 values).
void face_fluxes(const GridSolution& s, std::span<const double> u,
                 const PLFunction& phi, FluxKind kind,
                 std::vector<double>& faces, std::vector<Located>& cells) {
  const std::size_t n = u.size();
  faces.resize(n + 1);
  cells.resize(n);
  for (std::size_t j = 0; j < n; ++j) cells[j] = locate(phi, u[j]);
  const Located gl = s.boundary().is_periodic() ? cells.back()
                                                : locate(phi, ghost_left(s, u));
  faces[0] = flux_located(phi, gl, cells[0], kind);
  for (std::size_t j = 1; j < n; ++j) {
    faces[j] = flux_located(phi, cells[j - 1], cells[j], kind);
  }
  faces[n] = s.boundary().is_periodic()
                 ? faces[0]
                 : flux_located(phi, cells[n - 1],
                                locate(phi, ghost_right(s, u)), kind);
}

void check_cfl(const GridSolution& s, const PLFunction& phi,
               const SchemeParams& params, double dt) {
  if (!(params.cfl > 0.0 && params.cfl <= 1.0)) {
    throw std::invalid_argument("scheme: cfl must lie in (0, 1]");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::domain_error("scheme: dt must be positive and finite");
  }
  const double courant = phi.max_abs_slope() * dt / s.dx();
  if (courant > params.cfl * (1.0 + 1e-12)) {
    throw std::domain_error("scheme: CFL violated (L*dt/dx = " +
                            std::to_string(courant) + " > " +
                            std::to_string(params.cfl) + ")");
  }
}

struct Workspace {
  std::vector<double> faces;
  std::vector<Located> cells;
};

void advance(const GridSolution& s, std::span<const double> u,
             std::vector<double>& out, Workspace& ws, const PLFunction& phi,
             FluxKind kind, double dt) {
  face_fluxes(s, u, phi, kind, ws.faces, ws.cells);
  const auto& faces = ws.faces;
  const double lambda = dt / s.dx();
  out.resize(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    out[j] = u[j] - lambda * (faces[j + 1] - faces[j]);
  }
}

}  // namespace

double numerical_flux(const PLFunction& phi, double u_left, double u_right,
                      FluxKind kind) {
  check_state(phi, u_left);
  check_state(phi, u_right);
  return flux_value(phi, u_left, u_right, kind);
}

double stable_dt(const GridSolution& s, const PLFunction& phi,
                 const SchemeParams& params) {
  const double lip = phi.max_abs_slope();
  if (lip == 0.0) return std::numeric_limits<double>::infinity();
  return params.cfl * s.dx() / lip;
}

GridSolution step(const GridSolution& s, const PLFunction& phi,
                  const SchemeParams& params, double dt) {
  check_cfl(s, phi, params, dt);
  std::vector<double> out;
  Workspace ws;
  advance(s, s.values(), out, ws, phi, params.flux, dt);
  return s.with_values(std::move(out), s.time() + dt);
}

GridSolution step(const GridSolution& s, const PLFunction& phi,
                  const SchemeParams& params) {
  double dt = stable_dt(s, phi, params);
  if (!std::isfinite(dt)) dt = 1.0;
  return step(s, phi, params, dt);
}

std::vector<GridSolution> run(const GridSolution& s0, const PLFunction& phi,
                              const SchemeParams& params, double t_end,
                              std::span<const double> snapshot_times) {
  if (!(t_end >= s0.time())) {
    throw std::invalid_argument("run: t_end must not precede the initial time");
  }
  std::vector<double> targets;
  for (double t : snapshot_times) {
    if (t < s0.time() || t > t_end) {
      throw std::invalid_argument("run: snapshot time " + std::to_string(t) +
                                  " outside [t0, t_end]");
    }
    targets.push_back(t);
  }
  targets.push_back(t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  std::vector<GridSolution> out;
  const double dt_max = stable_dt(s0, phi, params);
  if (!(params.cfl > 0.0 && params.cfl <= 1.0)) {
    throw std::invalid_argument("scheme: cfl must lie in (0, 1]");
  }
  std::vector<double> u(s0.values().begin(), s0.values().end());
  std::vector<double> next;
  Workspace ws;
  double t = s0.time();
  for (double target : targets) {
    while (t < target) {
      double dt = std::min(dt_max, target - t);
      // Land on the target instead of leaving a sliver step behind.
      const bool last = t + dt >= target || target - (t + dt) <= 1e-12 * dt;
      if (last) dt = target - t;
      advance(s0, u, next, ws, phi, params.flux, dt);
      u.swap(next);
      t = last ? target : t + dt;
    }
    out.push_back(s0.with_values(u, target));
  }
  return out;
}

double entropy_residual(const GridSolution& prev, const GridSolution& next,
                        const PLFunction& phi, double k, FluxKind kind) {
  if (!prev.same_grid(next)) {
    throw std::invalid_argument("entropy_residual: grids differ");
  }
  const double dt = next.time() - prev.time();
  if (!(dt > 0.0)) {
    throw std::invalid_argument("entropy_residual: next must follow prev");
  }
  const auto u = prev.values();
  const std::size_t n = u.size();
  auto q = [&](double a, double b) {
    return flux_value(phi, std::max(a, k), std::max(b, k), kind) -
           flux_value(phi, std::min(a, k), std::min(b, k), kind);
  };
  // The far-field flux at k must be representable too.
  const double kk = std::clamp(k, phi.lo(), phi.hi());
  if (kk != k) {
    throw std::out_of_range("entropy_residual: k outside flux range");
  }
  std::vector<double> faces(n + 1);
  faces[0] = q(ghost_left(prev, u), u[0]);
  for (std::size_t j = 1; j < n; ++j) faces[j] = q(u[j - 1], u[j]);
  faces[n] = prev.boundary().is_periodic() ? faces[0]
                                           : q(u[n - 1], ghost_right(prev, u));
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = (std::abs(next[j] - k) - std::abs(u[j] - k)) / dt +
                     (faces[j + 1] - faces[j]) / prev.dx();
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace discflux
