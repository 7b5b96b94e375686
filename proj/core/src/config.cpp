#include "cwave/config.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cwave/io.hpp"

namespace cwave {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string tok;
  for (char ch : s) {
    if (ch == ' ' || ch == '\t' || ch == ',') {
      if (!tok.empty()) out.push_back(tok);
      tok.clear();
    } else {
      tok.push_back(ch);
    }
  }
  if (!tok.empty()) out.push_back(tok);
  return out;
}

double to_double(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("not a number at " + where + ": '" + s + "'");
  }
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("malformed section header at line " + std::to_string(lineno));
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("empty section name at line " + std::to_string(lineno));
      }
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
    if (section.empty()) {
      throw ConfigError("key outside any section at line " + std::to_string(lineno));
    }
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
  return parse_string(read_text_file(path));
}

bool Config::has_section(const std::string& section) const {
  return sections_.count(section) != 0;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) != 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  if (it == sections_.end() || it->second.count(key) == 0) {
    throw ConfigError("missing required key " + section + "." + key);
  }
  return it->second.at(key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return to_double(get(section, key), section + "." + key);
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int(const std::string& section, const std::string& key) const {
  const double v = get_double(section, key);
  const int i = int(v);
  if (double(i) != v) throw ConfigError("expected an integer at " + section + "." + key);
  return i;
}

int Config::get_int_or(const std::string& section, const std::string& key, int fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::uint64_t Config::get_seed_or(const std::string& section, const std::string& key,
                                  std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  const std::string s = get(section, key);
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("not a seed at " + section + "." + key + ": '" + s + "'");
  }
}

std::vector<double> Config::get_doubles(const std::string& section, const std::string& key) const {
  std::vector<double> out;
  for (const std::string& tok : split_tokens(get(section, key))) {
    out.push_back(to_double(tok, section + "." + key));
  }
  return out;
}

std::vector<std::string> Config::get_tokens(const std::string& section,
                                            const std::string& key) const {
  return split_tokens(get(section, key));
}

FieldSpec parse_field_spec(const std::vector<std::string>& tokens, const std::string& where) {
  if (tokens.empty()) throw ConfigError("empty field spec at " + where);
  FieldSpec spec;
  const std::string& kind = tokens[0];
  auto need = [&](std::size_t n) {
    if (tokens.size() != n) {
      throw ConfigError("wrong argument count for '" + kind + "' at " + where);
    }
  };
  if (kind == "constant") {
    need(2);
    spec.kind = FieldSpec::Kind::constant;
    spec.base = to_double(tokens[1], where);
  } else if (kind == "bump") {
    need(3);
    spec.kind = FieldSpec::Kind::bump;
    spec.base = to_double(tokens[1], where);
    spec.amplitude = to_double(tokens[2], where);
  } else if (kind == "sine") {
    if (tokens.size() != 3 && tokens.size() != 4) {
      throw ConfigError("wrong argument count for 'sine' at " + where);
    }
    spec.kind = FieldSpec::Kind::sine;
    spec.base = to_double(tokens[1], where);
    spec.amplitude = to_double(tokens[2], where);
    spec.mode = tokens.size() == 4 ? int(to_double(tokens[3], where)) : 1;
    if (spec.mode < 1) throw ConfigError("sine mode must be positive at " + where);
  } else if (kind == "file") {
    need(2);
    spec.kind = FieldSpec::Kind::file;
    spec.path = tokens[1];
  } else {
    throw ConfigError("unknown field preset '" + kind + "' at " + where);
  }
  return spec;
}

ScalarField FieldSpec::realize(const Grid& grid) const {
  switch (kind) {
    case Kind::constant:
      return constant_field(grid, base);
    case Kind::bump: {
      ScalarField out(grid.n_points());
      for (std::size_t p = 0; p < out.size(); ++p) {
        const auto x = grid.point(p);
        double b = 1.0;
        for (int a = 0; a < grid.dim; ++a) {
          const double s = (x[a] - grid.lo[a]) / (grid.hi[a] - grid.lo[a]);
          const double q = 4.0 * s * (1.0 - s);
          b *= q > 1e-12 ? std::exp(1.0 - 1.0 / q) : 0.0;
        }
        out[p] = base + amplitude * b;
      }
      return out;
    }
    case Kind::sine: {
      ScalarField out(grid.n_points());
      for (std::size_t p = 0; p < out.size(); ++p) {
        const auto x = grid.point(p);
        double s = 1.0;
        for (int a = 0; a < grid.dim; ++a) {
          const double len = grid.hi[a] - grid.lo[a];
          s *= std::sin(mode * std::numbers::pi * (x[a] - grid.lo[a]) / len);
        }
        out[p] = base + amplitude * s;
      }
      return out;
    }
    case Kind::file:
      return read_scalar_field(path, grid);
  }
  throw std::logic_error("unreachable");
}

CoefficientSet CoefficientsSpec::realize(const Grid& grid) const {
  CoefficientSet out;
  out.c = c.realize(grid);
  out.q1 = q1.realize(grid);
  out.q0 = q0.realize(grid);
  out.q.dim = grid.dim;
  for (int a = 0; a < grid.dim; ++a) out.q.comp[a] = q[std::size_t(a)].realize(grid);
  for (double v : out.c) {
    if (!(v > 0.0)) throw ConfigError("wave speed preset is not positive everywhere");
  }
  return out;
}

namespace {

CoefficientsSpec parse_coefficients(const Config& cfg, const std::string& section) {
  CoefficientsSpec spec;
  auto field = [&](const std::string& key, const std::string& fallback) {
    const std::vector<std::string> tokens =
        cfg.has(section, key) ? cfg.get_tokens(section, key) : split_tokens(fallback);
    return parse_field_spec(tokens, section + "." + key);
  };
  spec.c = field("c", "constant 1.0");
  spec.q1 = field("q1", "constant 0.0");
  spec.q0 = field("q0", "constant 0.0");
  spec.q[0] = field("qx", "constant 0.0");
  spec.q[1] = field("qy", "constant 0.0");
  spec.q[2] = field("qz", "constant 0.0");
  return spec;
}

}  // namespace

ExperimentConfig experiment_from_config(const Config& cfg) {
  ExperimentConfig ec;

  // Grid block.
  const std::vector<double> lo = cfg.get_doubles("grid", "lo");
  const std::vector<double> hi = cfg.get_doubles("grid", "hi");
  const std::vector<double> res = cfg.get_doubles("grid", "resolution");
  if (lo.size() != hi.size() || lo.size() != res.size() || (lo.size() != 2 && lo.size() != 3)) {
    throw ConfigError("grid.lo, grid.hi and grid.resolution must share length 2 or 3");
  }
  ec.grid.dim = int(lo.size());
  for (std::size_t a = 0; a < lo.size(); ++a) {
    ec.grid.lo[a] = lo[a];
    ec.grid.hi[a] = hi[a];
    ec.grid.npts[a] = int(res[a]);
  }
  ec.grid.dt = cfg.get_double("grid", "dt");
  ec.grid.horizon = cfg.get_double("grid", "horizon");
  ec.grid.cmax_hint = cfg.get_double_or("grid", "cmax_hint", 1.0);
  if (cfg.has("grid", "gamma1")) {
    for (const std::string& name : cfg.get_tokens("grid", "gamma1")) {
      ec.grid.gamma1_faces.push_back(face_id_from_name(name));
    }
  }

  // Geometry block.
  const std::vector<double> x0 = cfg.get_doubles("geometry", "x0");
  if (int(x0.size()) != ec.grid.dim) {
    throw ConfigError("geometry.x0 must have one coordinate per grid axis");
  }
  for (std::size_t a = 0; a < x0.size(); ++a) ec.geometry.x0[a] = x0[a];
  ec.geometry.rc = cfg.get_double_or("geometry", "rc", 0.9);
  ec.geometry.sigma = cfg.get_double_or("geometry", "sigma", 0.0);

  ec.truth = parse_coefficients(cfg, "coefficients");
  ec.guess = cfg.has_section("coefficients_guess") ? parse_coefficients(cfg, "coefficients_guess")
                                                   : parse_coefficients(cfg, "coefficients");

  // Family block.
  const std::string fam = cfg.get_or("family", "kind", "example1");
  if (fam == "example1") {
    ec.family.kind = FamilyKind::example1;
  } else if (fam == "example2") {
    ec.family.kind = FamilyKind::example2;
  } else if (fam == "example3") {
    ec.family.kind = FamilyKind::example3;
  } else if (fam == "solved") {
    ec.family.kind = FamilyKind::solved;
  } else {
    throw ConfigError("unknown family.kind '" + fam + "'");
  }
  ec.family.a = cfg.get_double_or("family", "a", -1.0);
  ec.family.pairs_kind = cfg.get_int_or("family", "pairs", 1);
  if (ec.family.pairs_kind < 1 || ec.family.pairs_kind > 3) {
    throw ConfigError("family.pairs must name a closed-form kind 1, 2 or 3");
  }
  const std::string h = cfg.get_or("family", "h", "traces");
  if (h == "traces") {
    ec.family.matched_boundary = true;
  } else if (h == "zero") {
    ec.family.matched_boundary = false;
  } else {
    throw ConfigError("family.h must be 'traces' or 'zero'");
  }

  // Inverse block.
  const std::string mode = cfg.get_or("inverse", "mode", "standard");
  if (mode == "standard") {
    ec.inverse.mode = InverseMode::standard;
  } else if (mode == "remark1") {
    ec.inverse.mode = InverseMode::remark1;
  } else {
    throw ConfigError("inverse.mode must be 'standard' or 'remark1'");
  }
  if (cfg.has("inverse", "r0")) ec.inverse.r0 = cfg.get_double("inverse", "r0");
  ec.inverse.ensemble = cfg.get_int_or("inverse", "ensemble", 10);
  ec.inverse.seed = cfg.get_seed_or("inverse", "seed", 1);
  ec.inverse.amplitude = cfg.get_double_or("inverse", "amplitude", 1.0);
  ec.inverse.modes = cfg.get_int_or("inverse", "modes", 4);

  // Carleman block.
  if (cfg.has("carleman", "tau")) ec.carleman.taus = cfg.get_doubles("carleman", "tau");
  ec.carleman.constants.eps = cfg.get_double_or("carleman", "eps", 1.0);
  ec.carleman.constants.beta = cfg.get_double_or("carleman", "beta", 1.0);
  ec.carleman.constants.c_t = cfg.get_double_or("carleman", "c_t", 1.0);
  ec.carleman.constants.big_c_t = cfg.get_double_or("carleman", "C_t", 1.0);
  ec.carleman.constants.c_1t = cfg.get_double_or("carleman", "C_1t", 1.0);

  ec.output_dir = cfg.get_or("output", "dir", "out");
  return ec;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return experiment_from_config(Config::parse_file(path));
}

}  // namespace cwave
