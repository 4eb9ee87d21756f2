#include "discflux/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "discflux/version.hpp"

namespace discflux {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_provenance(std::ostream& out, const std::string& hash) {
  out << "# discflux " << kVersion << " config_hash=" << hash << '\n';
}

void write_parametrization(std::ostream& out, const Parametrization& p,
                           const RegularizedFlux* rf,
                           const std::string& hash) {
  const std::size_t n = p.dimension();
  write_provenance(out, hash);
  out << "v,b";
  for (std::size_t c = 1; c <= n; ++c) out << ",g_" << c;
  if (rf != nullptr) {
    out << ",b_r";
    for (std::size_t c = 1; c <= n; ++c) out << ",phi_r_" << c;
  }
  out << '\n';

  if (rf == nullptr) {
    for (std::size_t i = 0; i < p.b().size(); ++i) {
      out << format_double(p.b().breakpoint(i)) << ','
          << format_double(p.b().value(i, 0));
      for (std::size_t c = 0; c < n; ++c) {
        out << ',' << format_double(p.g().value(i, c));
      }
      out << '\n';
    }
    return;
  }
  const PLFunction& br = rf->b_r();
  for (std::size_t i = 0; i < br.size(); ++i) {
    const double v = br.breakpoint(i);
    // Padded end nodes lie outside b's grid; b continues with unit slope.
    double b;
    if (p.b().contains(v)) {
      b = p.b()(v);
    } else if (v < p.v_lo()) {
      b = p.b().value(0, 0) + (v - p.v_lo());
    } else {
      b = p.b().value(p.b().size() - 1, 0) + (v - p.v_hi());
    }
    out << format_double(v) << ',' << format_double(b);
    for (std::size_t c = 0; c < n; ++c) {
      out << ',' << format_double(rf->phi_r().value(i, c));
    }
    out << ',' << format_double(br.value(i, 0));
    for (std::size_t c = 0; c < n; ++c) {
      out << ',' << format_double(rf->phi_r().value(i, c));
    }
    out << '\n';
  }
}

void write_snapshots_header(std::ostream& out, bool with_run_id) {
  out << (with_run_id ? "run_id,t,x_center,u\n" : "t,x_center,u\n");
}

void write_snapshot_rows(std::ostream& out, const GridSolution& s,
                         const std::string* run_id) {
  const std::string t = format_double(s.time());
  for (std::size_t j = 0; j < s.cells(); ++j) {
    if (run_id != nullptr) out << *run_id << ',';
    out << t << ',' << format_double(s.x_center(j)) << ','
        << format_double(s[j]) << '\n';
  }
}

namespace {

double parse_number(const std::string& tok, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) +
                             ": invalid number '" + tok + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::vector<Snapshot> read_snapshots(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  std::vector<std::string> header;
  struct Group {
    std::string run_id;
    double t;
    std::vector<double> x, u;
  };
  std::vector<Group> groups;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split(line);
    if (header.empty()) {
      header = cols;
      if (header != std::vector<std::string>{"t", "x_center", "u"} &&
          header != std::vector<std::string>{"run_id", "t", "x_center", "u"}) {
        throw std::runtime_error(
            "csv: expected header t,x_center,u or run_id,t,x_center,u");
      }
      continue;
    }
    if (cols.size() != header.size()) {
      throw std::runtime_error("csv line " + std::to_string(number) +
                               ": expected " + std::to_string(header.size()) +
                               " columns");
    }
    const std::size_t o = header.size() == 4 ? 1 : 0;
    const std::string id = o ? cols[0] : std::string();
    const double t = parse_number(cols[o], number);
    if (groups.empty() || groups.back().run_id != id || groups.back().t != t) {
      groups.push_back({id, t, {}, {}});
    }
    groups.back().x.push_back(parse_number(cols[o + 1], number));
    groups.back().u.push_back(parse_number(cols[o + 2], number));
  }
  if (header.empty()) throw std::runtime_error("csv: missing header");

  std::vector<Snapshot> out;
  for (Group& g : groups) {
    if (g.x.size() < 2) {
      throw std::runtime_error("csv: snapshot at t = " + format_double(g.t) +
                               " has fewer than two cells");
    }
    const double dx = (g.x.back() - g.x.front()) /
                      static_cast<double>(g.x.size() - 1);
    for (std::size_t j = 1; j < g.x.size(); ++j) {
      if (std::abs(g.x[j] - g.x[j - 1] - dx) > 1e-9 * std::max(1.0, dx)) {
        throw std::runtime_error("csv: cell centers at t = " +
                                 format_double(g.t) + " are not uniform");
      }
    }
    out.push_back({g.run_id,
                   GridSolution(g.x.front() - dx / 2, g.x.back() + dx / 2,
                                std::move(g.u), g.t)});
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + tmp + "'");
    f << content;
    if (!f.flush()) throw std::runtime_error("write failed for '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace discflux
