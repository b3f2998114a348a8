#include "tumordg/config.hpp"

#include <fstream>
#include <sstream>

#include "tumordg/presets.hpp"

namespace tumordg {

void RunConfig::validate() const {
  if (scheme != "dg" && scheme != "fe")
    throw ConfigError("config: scheme must be 'dg' or 'fe', got '" + scheme + "'");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0))
    throw ConfigError("config: domain rectangle is degenerate");
  if (nx < 1 || ny < 1) throw ConfigError("config: nx and ny must be >= 1");
  if (!(dt > 0.0)) throw ConfigError("config: dt must be > 0");
  if (!(t_end >= dt)) throw ConfigError("config: t_end must be >= dt");
  if (output_every < 1) throw ConfigError("config: output_every must be >= 1");
  if (output_dir.empty()) throw ConfigError("config: output_dir must not be empty");
  if (!is_ic_preset(ic)) throw ConfigError("config: unknown ic preset '" + ic + "'");
  try {
    params.validate();
    newton.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in value of '" + key + "'");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "cannot parse number for '" + key + "'");
  }
}

long parse_long(const std::string& v, int line, const std::string& key) {
  try {
    size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in value of '" + key + "'");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "cannot parse integer for '" + key + "'");
  }
}

}  // namespace

RunConfig load_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      continue;  // sections are cosmetic
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (value.empty()) fail(lineno, "empty value for '" + key + "'");

    if (key == "scheme") cfg.scheme = value;
    else if (key == "domain") {
      std::istringstream vs(value);
      if (!(vs >> cfg.domain.x0 >> cfg.domain.y0 >> cfg.domain.x1 >> cfg.domain.y1))
        fail(lineno, "domain expects 'x0 y0 x1 y1'");
      std::string rest;
      if (vs >> rest) fail(lineno, "domain expects exactly four numbers");
    }
    else if (key == "nx") cfg.nx = static_cast<int>(parse_long(value, lineno, key));
    else if (key == "ny") cfg.ny = static_cast<int>(parse_long(value, lineno, key));
    else if (key == "dt") cfg.dt = parse_double(value, lineno, key);
    else if (key == "t_end") cfg.t_end = parse_double(value, lineno, key);
    else if (key == "output_every") cfg.output_every = static_cast<int>(parse_long(value, lineno, key));
    else if (key == "max_steps") cfg.max_steps = parse_long(value, lineno, key);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "seed") cfg.seed = static_cast<unsigned long>(parse_long(value, lineno, key));
    else if (key == "eps") cfg.params.eps = parse_double(value, lineno, key);
    else if (key == "delta") cfg.params.delta = parse_double(value, lineno, key);
    else if (key == "chi0") cfg.params.chi0 = parse_double(value, lineno, key);
    else if (key == "p0") cfg.params.p0 = parse_double(value, lineno, key);
    else if (key == "cu") cfg.params.cu = parse_double(value, lineno, key);
    else if (key == "cn") cfg.params.cn = parse_double(value, lineno, key);
    else if (key == "mob_p") cfg.params.mob_p = static_cast<int>(parse_long(value, lineno, key));
    else if (key == "mob_q") cfg.params.mob_q = static_cast<int>(parse_long(value, lineno, key));
    else if (key == "prolif_r") cfg.params.prolif_r = static_cast<int>(parse_long(value, lineno, key));
    else if (key == "prolif_s") cfg.params.prolif_s = static_cast<int>(parse_long(value, lineno, key));
    else if (key == "newton_abs_tol") cfg.newton.abs_tol = parse_double(value, lineno, key);
    else if (key == "newton_rel_tol") cfg.newton.rel_tol = parse_double(value, lineno, key);
    else if (key == "newton_max_iters") cfg.newton.max_iters = static_cast<int>(parse_long(value, lineno, key));
    else if (key == "newton_damping_factor") cfg.newton.damping_factor = parse_double(value, lineno, key);
    else if (key == "newton_min_damping") cfg.newton.min_damping = parse_double(value, lineno, key);
    else if (key == "ic") cfg.ic = value;
    else if (key == "ic_u0") cfg.ic_u0 = parse_double(value, lineno, key);
    else if (key == "ic_n0") cfg.ic_n0 = parse_double(value, lineno, key);
    else fail(lineno, "unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

}  // namespace tumordg
