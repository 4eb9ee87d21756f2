#include "discflux/config.hpp"

#include "discflux/regularized_flux.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace discflux {

ConfigError::ConfigError(const std::string& message, std::size_t line,
                         std::size_t column, std::string path)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) +
                                        ", column " + std::to_string(column) +
                                        ": " + message
                                  : message),
      line_(line),
      column_(column),
      path_(std::move(path)) {}

namespace {

// ---------------------------------------------------------------- syntax

struct Value {
  enum class Kind { kNumber, kString, kBool, kList };
  Kind kind = Kind::kNumber;
  double number = 0.0;
  std::string text;
  bool flag = false;
  std::vector<Value> list;
};

struct Entry {
  Value value;
  std::size_t line;
  std::size_t column;
};

struct Document {
  std::map<std::string, Entry> entries;
  std::map<std::string, std::size_t> arrays;
  std::set<std::string> sections;
};

bool is_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class LineParser {
 public:
  LineParser(const std::string& line, std::size_t number)
      : s_(line), line_(number) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(msg, line_, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  std::size_t column() const { return pos_ + 1; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  // Dotted key: segment(.segment)*
  std::string key() {
    skip_ws();
    std::string out;
    for (;;) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && is_key_char(s_[pos_])) ++pos_;
      if (pos_ == start) fail("expected a key");
      out.append(s_, start, pos_ - start);
      if (peek() != '.') break;
      out += '.';
      ++pos_;
    }
    return out;
  }

  Value value() {
    skip_ws();
    const char c = peek();
    if (c == '"') return string_value();
    if (c == '[') return list_value();
    if (c == '-' || c == '+' || c == '.' ||
        std::isdigit(static_cast<unsigned char>(c))) {
      return number_value();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && is_key_char(s_[pos_])) ++pos_;
      Value v;
      const std::string word = s_.substr(start, pos_ - start);
      if (word == "true" || word == "false") {
        v.kind = Value::Kind::kBool;
        v.flag = word == "true";
      } else {
        v.kind = Value::Kind::kString;
        v.text = word;
      }
      return v;
    }
    fail("expected a value");
  }

 private:
  Value string_value() {
    expect('"');
    Value v;
    v.kind = Value::Kind::kString;
    for (;;) {
      if (pos_ >= s_.size()) fail("unterminated string");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("unterminated escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': v.text += '\n'; break;
          case 't': v.text += '\t'; break;
          case '"': v.text += '"'; break;
          case '\\': v.text += '\\'; break;
          default: --pos_; fail("unknown escape");
        }
      } else {
        v.text += c;
      }
    }
    return v;
  }

  Value list_value() {
    expect('[');
    Value v;
    v.kind = Value::Kind::kList;
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return v;
    }
    for (;;) {
      v.list.push_back(value());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
        if (peek() == ']') {
          ++pos_;
          break;
        }
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        break;
      }
      fail("expected ',' or ']' in list");
    }
    return v;
  }

  Value number_value() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
            s_[pos_] == '.' || s_[pos_] == '-' || s_[pos_] == '+')) {
      ++pos_;
    }
    std::string tok = s_.substr(start, pos_ - start);
    // std::from_chars rejects a leading '+'.
    const char* first = tok.data() + (tok[0] == '+' ? 1 : 0);
    Value v;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v.number);
    if (ec != std::errc() || ptr != tok.data() + tok.size() ||
        !std::isfinite(v.number)) {
      pos_ = start;
      fail("invalid number '" + tok + "'");
    }
    return v;
  }

  const std::string& s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

Document parse_document(const std::string& text) {
  Document doc;
  std::string prefix;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    LineParser p(line, number);
    if (p.at_end()) continue;
    if (p.peek() == '[') {
      p.expect('[');
      const bool array = p.peek() == '[';
      if (array) p.expect('[');
      const std::string name = p.key();
      p.skip_ws();
      p.expect(']');
      if (array) p.expect(']');
      if (!p.at_end()) p.fail("unexpected text after section header");
      if (array) {
        const std::size_t index = doc.arrays[name]++;
        prefix = name + "[" + std::to_string(index) + "]";
      } else {
        if (!doc.sections.insert(name).second) {
          throw ConfigError("duplicate section [" + name + "]", number, 1);
        }
        prefix = name;
      }
      continue;
    }
    const std::size_t key_col = p.column();
    const std::string key = p.key();
    p.skip_ws();
    p.expect('=');
    const std::size_t value_col = p.column();
    Value v = p.value();
    if (!p.at_end()) p.fail("unexpected text after value");
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!doc.entries.emplace(path, Entry{std::move(v), number, value_col})
             .second) {
      throw ConfigError("duplicate key '" + path + "'", number, key_col, path);
    }
  }
  return doc;
}

// -------------------------------------------------------------- semantics

class Reader {
 public:
  explicit Reader(const Document& doc) : doc_(doc) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    auto it = doc_.entries.find(path);
    if (it != doc_.entries.end()) {
      throw ConfigError(path + ": " + msg, it->second.line, it->second.column,
                        path);
    }
    throw ConfigError(path + ": " + msg, 0, 0, path);
  }

  const Value* find(const std::string& path) {
    auto it = doc_.entries.find(path);
    if (it == doc_.entries.end()) return nullptr;
    used_.insert(path);
    return &it->second.value;
  }

  bool has(const std::string& path) const {
    return doc_.entries.count(path) > 0;
  }

  double number(const std::string& path, std::optional<double> fallback) {
    const Value* v = find(path);
    if (v == nullptr) {
      if (!fallback) fail(path, "required number is missing");
      return *fallback;
    }
    if (v->kind != Value::Kind::kNumber) fail(path, "expected a number");
    return v->number;
  }

  std::size_t count(const std::string& path, std::optional<std::size_t> fallback,
                    std::size_t min) {
    const double x = number(path, fallback ? std::optional<double>(
                                                 static_cast<double>(*fallback))
                                           : std::nullopt);
    if (x != std::floor(x) || x < static_cast<double>(min) || x > 1e12) {
      fail(path, "expected an integer >= " + std::to_string(min));
    }
    return static_cast<std::size_t>(x);
  }

  std::string text(const std::string& path,
                   std::optional<std::string> fallback) {
    const Value* v = find(path);
    if (v == nullptr) {
      if (!fallback) fail(path, "required value is missing");
      return *fallback;
    }
    if (v->kind != Value::Kind::kString) fail(path, "expected a string");
    return v->text;
  }

  bool flag(const std::string& path, bool fallback) {
    const Value* v = find(path);
    if (v == nullptr) return fallback;
    if (v->kind != Value::Kind::kBool) fail(path, "expected true or false");
    return v->flag;
  }

  /// A number or a list of numbers; nullopt when absent.
  std::optional<std::vector<double>> numbers(const std::string& path) {
    const Value* v = find(path);
    if (v == nullptr) return std::nullopt;
    if (v->kind == Value::Kind::kNumber) return std::vector<double>{v->number};
    if (v->kind != Value::Kind::kList) fail(path, "expected a list of numbers");
    std::vector<double> out;
    for (const Value& e : v->list) {
      if (e.kind != Value::Kind::kNumber) fail(path, "expected a list of numbers");
      out.push_back(e.number);
    }
    return out;
  }

  std::vector<double> numbers_required(const std::string& path) {
    auto v = numbers(path);
    if (!v) fail(path, "required list is missing");
    return *v;
  }

  std::size_t array_size(const std::string& name) const {
    auto it = doc_.arrays.find(name);
    return it == doc_.arrays.end() ? 0 : it->second;
  }

  void finish() const {
    for (const auto& [path, entry] : doc_.entries) {
      if (!used_.count(path)) {
        throw ConfigError("unknown key '" + path + "'", entry.line,
                          entry.column, path);
      }
    }
  }

 private:
  const Document& doc_;
  std::set<std::string> used_;
};

template <typename T>
T choose(Reader& rd, const std::string& path, const std::string& value,
         std::initializer_list<std::pair<const char*, T>> options) {
  std::string names;
  for (const auto& [name, t] : options) {
    if (value == name) return t;
    names += names.empty() ? name : std::string(", ") + name;
  }
  rd.fail(path, "'" + value + "' is not one of: " + names);
}

Window window_of(Reader& rd, const std::string& path,
                 const std::vector<double>& w) {
  if (w.size() != 2 || !(w[1] > w[0])) {
    rd.fail(path, "expected [lo, hi] with lo < hi");
  }
  return {w[0], w[1]};
}

void read_flux(Reader& rd, FluxConfig& f) {
  f.preset = rd.text("flux.preset", std::nullopt);
  const auto range = rd.numbers("flux.state_range");
  if (!range) rd.fail("flux.state_range", "required [lo, hi] is missing");
  if (range->size() != 2 || !((*range)[1] > (*range)[0])) {
    rd.fail("flux.state_range", "expected [lo, hi] with lo < hi");
  }
  f.state_range = {(*range)[0], (*range)[1]};
  choose<int>(rd, "flux.preset", f.preset,
              {{"heaviside", 0}, {"indicator", 1}, {"burgers", 2},
               {"linear", 3}, {"custom", 4}});
  if (f.preset == "heaviside") f.point = rd.number("flux.point", 1.0);
  if (f.preset == "burgers") f.samples = rd.count("flux.samples", 401, 2);
  if (f.preset == "linear") f.speed = rd.number("flux.speed", 1.0);
  if (f.preset != "custom") return;

  f.dimension = rd.count("flux.dimension", 1, 1);
  const std::size_t n = f.dimension;
  for (std::size_t k = 0; k < rd.array_size("flux.jump"); ++k) {
    const std::string base = "flux.jump[" + std::to_string(k) + "]";
    JumpPoint j;
    j.location = rd.number(base + ".location", std::nullopt);
    for (auto [name, dst] : {std::pair{"left", &j.left},
                             std::pair{"point", &j.point},
                             std::pair{"right", &j.right}}) {
      const std::string path = base + "." + name;
      *dst = rd.numbers_required(path);
      if (dst->size() != n) {
        rd.fail(path, "expected " + std::to_string(n) + " component(s)");
      }
    }
    f.jumps.push_back(std::move(j));
  }
  for (std::size_t k = 0; k < rd.array_size("flux.piece"); ++k) {
    const std::string base = "flux.piece[" + std::to_string(k) + "]";
    PieceTable t;
    t.breakpoints = rd.numbers_required(base + ".breakpoints");
    t.values = rd.numbers_required(base + ".values");
    if (t.values.size() != t.breakpoints.size() * n) {
      rd.fail(base + ".values", "expected " +
                                    std::to_string(t.breakpoints.size() * n) +
                                    " numbers (breakpoints x dimension)");
    }
    f.pieces.push_back(std::move(t));
  }
  if (f.pieces.size() != f.jumps.size() + 1) {
    rd.fail("flux.piece", "expected " + std::to_string(f.jumps.size() + 1) +
                              " [[flux.piece]] tables for " +
                              std::to_string(f.jumps.size()) + " jump(s)");
  }
}

void read_initial(Reader& rd, InitialConfig& c) {
  c.preset = rd.text("initial.preset", std::nullopt);
  choose<int>(rd, "initial.preset", c.preset,
              {{"example1", 0}, {"example2", 1}, {"heaviside_riemann", 2},
               {"sine", 3}, {"constant", 4}, {"custom_table", 5}});
  if (c.preset == "heaviside_riemann") {
    c.left = rd.number("initial.left", 0.0);
    c.right = rd.number("initial.right", 1.0);
    c.location = rd.number("initial.location", 0.0);
  } else if (c.preset == "sine") {
    c.mean = rd.number("initial.mean", 0.5);
    c.amplitude = rd.number("initial.amplitude", 0.4);
    c.wavenumber = rd.number("initial.wavenumber", 1.0);
  } else if (c.preset == "constant") {
    c.value = rd.number("initial.value", std::nullopt);
  } else if (c.preset == "custom_table") {
    c.x = rd.numbers_required("initial.x");
    c.u = rd.numbers_required("initial.u");
    if (c.x.size() < 2 || c.x.size() != c.u.size()) {
      rd.fail("initial.u", "expected as many values as initial.x (>= 2)");
    }
    for (std::size_t i = 1; i < c.x.size(); ++i) {
      if (!(c.x[i] > c.x[i - 1])) {
        rd.fail("initial.x", "must be strictly increasing");
      }
    }
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  const Document doc = parse_document(text);
  Reader rd(doc);
  ScenarioConfig c;

  read_flux(rd, c.flux);

  if (auto w = rd.numbers("parametrization.weights")) {
    for (double h : *w) {
      if (!(h > 0)) rd.fail("parametrization.weights", "weights must be > 0");
    }
    c.weights.h = *w;
  }
  c.theta = rd.number("parametrization.theta", 0.5);
  if (!(c.theta > 0 && c.theta < 1)) {
    rd.fail("parametrization.theta", "must lie in (0, 1)");
  }
  c.r = rd.number("regularization.r", 64.0);
  if (!(c.r >= 1)) rd.fail("regularization.r", "must be >= 1");

  c.domain.x_lo = rd.number("domain.x_lo", std::nullopt);
  c.domain.x_hi = rd.number("domain.x_hi", std::nullopt);
  if (!(c.domain.x_hi > c.domain.x_lo)) {
    rd.fail("domain.x_hi", "must exceed domain.x_lo");
  }
  c.domain.cells = rd.count("domain.cells", std::nullopt, 2);
  const std::string boundary = rd.text("domain.boundary", "constant");
  c.domain.periodic = choose<bool>(rd, "domain.boundary", boundary,
                                   {{"periodic", true}, {"constant", false}});
  if (!c.domain.periodic) {
    if (rd.has("domain.left")) c.domain.left = rd.number("domain.left", 0.0);
    if (rd.has("domain.right")) c.domain.right = rd.number("domain.right", 0.0);
  }

  read_initial(rd, c.initial);

  c.t_end = rd.number("times.t_end", 1.0);
  if (!(c.t_end >= 0)) rd.fail("times.t_end", "must be >= 0");
  if (auto s = rd.numbers("times.snapshots")) {
    for (double t : *s) {
      if (!(t >= 0 && t <= c.t_end)) {
        rd.fail("times.snapshots", "every time must lie in [0, t_end]");
      }
    }
    c.snapshots = *s;
  }

  c.scheme.cfl = rd.number("scheme.cfl", 0.9);
  if (!(c.scheme.cfl > 0 && c.scheme.cfl <= 1)) {
    rd.fail("scheme.cfl", "must lie in (0, 1]");
  }
  c.scheme.flux = choose<FluxKind>(
      rd, "scheme.flux", rd.text("scheme.flux", "godunov"),
      {{"godunov", FluxKind::kGodunov},
       {"engquist_osher", FluxKind::kEngquistOsher}});

  ExtremalParams& e = c.extremal;
  e.r0 = rd.number("extremal.r0", c.r);
  if (!(e.r0 >= 1)) rd.fail("extremal.r0", "must be >= 1");
  e.growth = rd.number("extremal.growth", 2.0);
  if (!(e.growth > 1)) rd.fail("extremal.growth", "must be > 1");
  e.tolerance = rd.number("extremal.tolerance", 1e-3);
  if (!(e.tolerance > 0)) rd.fail("extremal.tolerance", "must be > 0");
  e.max_iterations =
      static_cast<int>(rd.count("extremal.max_iterations", 6, 1));
  if (auto w = rd.numbers("extremal.window")) {
    e.window = window_of(rd, "extremal.window", *w);
  }
  e.slack = rd.number("extremal.slack", 1e-10);
  e.check_monotone = rd.flag("extremal.check_monotone", true);
  e.weights = c.weights;
  e.theta = c.theta;
  e.scheme = c.scheme;
  e.t_end = c.t_end;
  e.times = c.snapshots;

  if (rd.has("verify.oracle") || rd.has("verify.window") ||
      rd.has("verify.threshold")) {
    VerifyConfig v;
    v.oracle = rd.text("verify.oracle", std::nullopt);
    try {
      oracle_by_name(v.oracle);
    } catch (const std::invalid_argument& err) {
      rd.fail("verify.oracle", err.what());
    }
    if (auto w = rd.numbers("verify.window")) {
      v.window = window_of(rd, "verify.window", *w);
    }
    v.threshold = rd.number("verify.threshold", 0.05);
    c.verify = v;
  }

  rd.finish();

  // Cross-field checks that need the assembled flux.
  try {
    make_flux(c);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("flux: ") + err.what(), 0, 0, "flux");
  }
  if (!c.weights.h.empty() && c.weights.h.size() != make_flux(c).jumps().size()) {
    throw ConfigError("parametrization.weights: need one weight per jump", 0,
                      0, "parametrization.weights");
  }
  const GridSolution u0 = make_initial(c);
  if (!c.flux.state_range.contains(u0.min()) ||
      !c.flux.state_range.contains(u0.max())) {
    throw ConfigError("initial: data leaves flux.state_range", 0, 0, "initial");
  }
  if (!u0.boundary().is_periodic() &&
      (!c.flux.state_range.contains(u0.boundary().left) ||
       !c.flux.state_range.contains(u0.boundary().right))) {
    throw ConfigError("domain: boundary values leave flux.state_range", 0, 0,
                      "domain");
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

JumpFlux make_flux(const ScenarioConfig& c) {
  const FluxConfig& f = c.flux;
  if (f.preset == "heaviside") return heaviside_flux(f.state_range, f.point);
  if (f.preset == "indicator") return indicator_flux(f.state_range);
  if (f.preset == "burgers") return burgers_flux(f.state_range, f.samples);
  if (f.preset == "linear") return linear_flux(f.state_range, f.speed);
  std::vector<PLFunction> pieces;
  for (const PieceTable& t : f.pieces) {
    pieces.emplace_back(t.breakpoints, t.values, f.dimension);
  }
  return make_jump_flux(f.dimension, f.state_range, f.jumps, std::move(pieces));
}

std::function<double(double)> initial_function(const InitialConfig& c) {
  if (c.preset == "example1") {
    return [](double x) { return 1.0 / (1.0 + x * x); };
  }
  if (c.preset == "example2") {
    return [](double x) { return x >= 0 ? 1.0 : 0.0; };
  }
  if (c.preset == "heaviside_riemann") {
    return [=](double x) { return x < c.location ? c.left : c.right; };
  }
  if (c.preset == "sine") {
    return [=](double x) {
      return c.mean + c.amplitude * std::sin(2 * std::numbers::pi * c.wavenumber * x);
    };
  }
  if (c.preset == "constant") {
    return [v = c.value](double) { return v; };
  }
  if (c.preset == "custom_table") {
    PLFunction table(c.x, c.u, 1, PLFunction::Extrapolation::kConstant);
    return [table](double x) { return table(x); };
  }
  throw std::invalid_argument("unknown initial preset '" + c.preset + "'");
}

GridSolution make_initial(const ScenarioConfig& c) {
  const auto f = initial_function(c.initial);
  Boundary b = Boundary::periodic();
  if (!c.domain.periodic) {
    b = Boundary::constant(c.domain.left.value_or(f(c.domain.x_lo)),
                           c.domain.right.value_or(f(c.domain.x_hi)));
  }
  return GridSolution::from_function(f, c.domain.x_lo, c.domain.x_hi,
                                     c.domain.cells, b);
}

Parametrization make_parametrization(const ScenarioConfig& c) {
  const JumpFlux f = make_flux(c);
  if (c.weights.h.empty()) return build_parametrization(f, c.theta);
  return build_parametrization(f, c.weights, c.theta);
}

PLFunction solver_flux(const ScenarioConfig& c) {
  const JumpFlux f = make_flux(c);
  if (f.dimension() != 1) {
    throw std::invalid_argument("solver: flux must be scalar");
  }
  if (f.jumps().empty()) return f.pieces().front();
  return regularize(make_parametrization(c), c.r).scalar_flux();
}

std::vector<GridSolution> solve_scenario(const ScenarioConfig& c) {
  return run(make_initial(c), solver_flux(c), c.scheme, c.t_end, c.snapshots);
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace discflux
