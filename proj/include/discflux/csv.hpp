#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "discflux/fv_scheme.hpp"
#include "discflux/parametrizer.hpp"
#include "discflux/regularized_flux.hpp"

namespace discflux {

/// %.17g: round-trips every double.
std::string format_double(double x);

/// "# discflux <version> config_hash=<hash>"
void write_provenance(std::ostream& out, const std::string& hash);

/// Columns v,b,g_1..g_n; with a regularization also b_r,phi_r_1..phi_r_n,
/// one row per node of b_r (which may extend b's grid at the ends).
void write_parametrization(std::ostream& out, const Parametrization& p,
                           const RegularizedFlux* rf, const std::string& hash);

struct Snapshot {
  std::string run_id;
  GridSolution solution;
};

/// Columns t,x_center,u, or run_id,t,x_center,u when `with_run_id`.
void write_snapshots_header(std::ostream& out, bool with_run_id);
void write_snapshot_rows(std::ostream& out, const GridSolution& s,
                         const std::string* run_id);

/// Reads either schema back. Each (run_id, t) group must list uniformly
/// spaced cell centers; the domain is reconstructed from them and the
/// boundary is left periodic.
std::vector<Snapshot> read_snapshots(std::istream& in);

/// Writes to path.tmp and renames, so a failed run leaves no partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace discflux
