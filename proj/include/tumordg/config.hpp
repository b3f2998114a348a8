#pragma once

#include <stdexcept>
#include <string>

#include "tumordg/model.hpp"
#include "tumordg/newton.hpp"

namespace tumordg {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when the driver exhausts the time-step halving policy.
class SolverAbort : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string scheme = "dg";  // "dg" or "fe"
  Rect domain{-10.0, -10.0, 10.0, 10.0};
  int nx = 40;
  int ny = 40;
  double dt = 0.1;
  double t_end = 1.0;
  int output_every = 10;   // snapshot cadence in accepted steps
  long max_steps = -1;     // optional cap, -1 for unlimited
  ModelParams params;
  NewtonSettings newton;
  std::string ic = "three_tumors";
  double ic_u0 = 0.0;  // only for ic = constant
  double ic_n0 = 1.0;
  std::string output_dir = "out";
  unsigned long seed = 0;  // reserved; the model is deterministic

  void validate() const;  // throws ConfigError naming the offending field
};

/// Parses key=value text ('#' and ';' comments, optional cosmetic
/// [section] headers). Unknown keys and malformed lines raise ConfigError
/// with the line number; missing keys keep their defaults.
RunConfig load_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace tumordg
