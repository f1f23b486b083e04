#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "picard.hpp"
#include "stepper.hpp"

namespace ch6 {

// Flat key = value configuration, one entry per line, '#' starts a comment.
// Keys are dotted lowercase paths; later assignments win.
class KeyValues {
public:
  static KeyValues load(const std::string& path);
  static KeyValues from_string(const std::string& text);

  void set(const std::string& key, const std::string& value);
  const std::string* find(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

private:
  std::vector<std::pair<std::string, std::string>> items_;
  std::map<std::string, std::size_t> index_;
};

enum class InitFamily { Gaussian, BandRandom, Constant, SingleMode, FromFile };

struct InitialDataSpec {
  InitFamily family = InitFamily::Gaussian;
  double amplitude = 1e-2;
  double width = 0.0;      // Gaussian width; 0 means L/25
  int kmax = 4;            // BandRandom band limit (index units)
  double slope = 0.0;      // BandRandom spectral envelope exponent
  int mode = 1;            // SingleMode wavenumber index
  std::string path;        // FromFile snapshot
  bool zero_mean = true;
  double target_h2 = 0.0;  // rescale to this H^2 norm; <= 0 disables
};

// Fully validated run description.  Every field has a config key; unknown or
// malformed keys raise ConfigError with the offending key in the message.
struct RunConfig {
  std::string scenario = "smalldata";
  std::string out_dir = "out";
  std::uint64_t seed = 12345;

  int dim = 3;
  int n = 64;
  double length = 0.0;  // default 32 pi, set in the constructor

  PhysicalParams params;
  StepperConfig step;
  InitialDataSpec init;
  PicardConfig picard;
  DiagnosticsRequest diag;

  double t_end = 100.0;
  double cadence = 0.5;
  bool snapshots = false;

  int ineq_samples = 50;
  int ineq_band = 8;
  double ineq_slope = -1.0;
  std::vector<std::string> ineq_kinds;  // validated names; empty = all

  int equiv_samples = 100;
  double equiv_amplitude = 0.75;
  int equiv_kmax = 0;  // 0 = n/3
  double equiv_tol = 1e-10;

  RunConfig();
  static RunConfig from_kv(const KeyValues& kv);
  static const std::vector<std::string>& known_scenarios();
  static const std::vector<std::string>& known_ineq_kinds();

  // Canonical rendering of the resolved configuration (all keys, final
  // values); parsing it back reproduces this config.
  std::string resolved_text() const;
};

}  // namespace ch6
