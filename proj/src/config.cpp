#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "common.hpp"
#include "grid.hpp"

namespace ch6 {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_'))
      return false;
  }
  return true;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Typed access over the raw key/value list, tracking which keys were read so
// that leftovers can be reported with a suggestion.
class Reader {
public:
  explicit Reader(const KeyValues& kv) : kv_(kv) {}

  bool has(const std::string& key) {
    const std::string* v = kv_.find(key);
    if (v) used_.insert(key);
    return v != nullptr;
  }

  std::string get_string(const std::string& key, const std::string& def) {
    const std::string* v = kv_.find(key);
    if (!v) return def;
    used_.insert(key);
    return *v;
  }

  double get_double(const std::string& key, double def) {
    const std::string* v = kv_.find(key);
    if (!v) return def;
    used_.insert(key);
    return parse_double(key, *v);
  }

  int get_int(const std::string& key, int def) {
    const std::string* v = kv_.find(key);
    if (!v) return def;
    used_.insert(key);
    try {
      std::size_t pos = 0;
      long x = std::stol(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing characters");
      return static_cast<int>(x);
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': expected an integer, got '" + *v + "'");
    }
  }

  std::uint64_t get_u64(const std::string& key, std::uint64_t def) {
    const std::string* v = kv_.find(key);
    if (!v) return def;
    used_.insert(key);
    try {
      // stoull wraps negatives instead of rejecting them
      if (trim(*v).find('-') != std::string::npos) throw std::invalid_argument("negative");
      std::size_t pos = 0;
      unsigned long long x = std::stoull(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing characters");
      return static_cast<std::uint64_t>(x);
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" +
                        *v + "'");
    }
  }

  bool get_bool(const std::string& key, bool def) {
    const std::string* v = kv_.find(key);
    if (!v) return def;
    used_.insert(key);
    std::string s = lower(trim(*v));
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw ConfigError("config key '" + key + "': expected a boolean (true/false), got '" +
                      *v + "'");
  }

  // Value must be one of `choices`; the error message lists them.
  std::string get_choice(const std::string& key, const std::string& def,
                         const std::vector<std::string>& choices) {
    std::string v = lower(trim(get_string(key, def)));
    if (std::find(choices.begin(), choices.end(), v) != choices.end()) return v;
    std::string all;
    for (const auto& c : choices) {
      if (!all.empty()) all += ", ";
      all += c;
    }
    throw ConfigError("config key '" + key + "': unknown value '" + v + "' (one of: " +
                      all + ")");
  }

  double parse_double(const std::string& key, const std::string& raw) {
    try {
      std::size_t pos = 0;
      double x = std::stod(raw, &pos);
      if (pos != raw.size()) throw std::invalid_argument("trailing characters");
      if (!std::isfinite(x)) throw std::invalid_argument("not finite");
      return x;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': expected a number, got '" + raw + "'");
    }
  }

  // Every key that was set but never read is a mistake; suggest the closest
  // known key when the distance is small.
  void check_unknown(const std::vector<std::string>& known) const {
    for (const auto& [key, value] : kv_.items()) {
      (void)value;
      if (used_.count(key)) continue;
      std::string best;
      int best_d = 4;
      for (const auto& k : known) {
        int d = edit_distance(key, k);
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      std::string msg = "unknown config key '" + key + "'";
      if (!best.empty()) msg += " (did you mean '" + best + "'?)";
      throw ConfigError(msg);
    }
  }

private:
  const KeyValues& kv_;
  std::set<std::string> used_;
};

const std::vector<std::string>& all_keys() {
  static const std::vector<std::string> keys = {
      "scenario", "out", "seed",
      "grid.dim", "grid.n", "grid.length",
      "model.potential", "model.delta", "model.g0", "model.g2", "model.h0",
      "model.alpha", "model.mobility",
      "step.scheme", "step.dt", "step.cfl", "step.dealias", "step.oversample",
      "step.linear_only",
      "run.t_end", "run.cadence", "run.snapshots",
      "diag.max_grad_order", "diag.neg_s", "diag.neg_policy",
      "init.family", "init.amplitude", "init.width", "init.kmax", "init.slope",
      "init.mode", "init.path", "init.zero_mean", "init.target_h2",
      "picard.t1", "picard.jmax", "picard.inner_steps", "picard.dealias",
      "ineq.samples", "ineq.band", "ineq.slope", "ineq.kinds",
      "equiv.samples", "equiv.amplitude", "equiv.kmax", "equiv.tol",
  };
  return keys;
}

}  // namespace

KeyValues KeyValues::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return from_string(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

KeyValues KeyValues::from_string(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key))
      throw ConfigError("line " + std::to_string(lineno) + ": malformed key '" + key + "'");
    kv.set(key, value);
  }
  return kv;
}

void KeyValues::set(const std::string& key, const std::string& value) {
  auto it = index_.find(key);
  if (it != index_.end()) {
    items_[it->second].second = value;
    return;
  }
  index_[key] = items_.size();
  items_.emplace_back(key, value);
}

const std::string* KeyValues::find(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  return &items_[it->second].second;
}

RunConfig::RunConfig() { length = 32.0 * std::numbers::pi; }

const std::vector<std::string>& RunConfig::known_scenarios() {
  static const std::vector<std::string> s = {"equivalence", "smalldata", "decay3d",
                                             "contraction", "inequalities", "baseline"};
  return s;
}

const std::vector<std::string>& RunConfig::known_ineq_kinds() {
  static const std::vector<std::string> s = {
      "kato_ponce_commutator", "kato_ponce_product",  "gagliardo_nirenberg",
      "homogeneous_embedding", "agmon",               "hardy_littlewood_sobolev",
      "interpolation"};
  return s;
}

RunConfig RunConfig::from_kv(const KeyValues& kv) {
  RunConfig cfg;
  Reader r(kv);

  cfg.scenario = r.get_choice("scenario", cfg.scenario, known_scenarios());
  cfg.out_dir = r.get_string("out", cfg.out_dir);
  if (cfg.out_dir.empty()) throw ConfigError("config key 'out': must not be empty");
  cfg.seed = r.get_u64("seed", cfg.seed);

  cfg.dim = r.get_int("grid.dim", cfg.dim);
  cfg.n = r.get_int("grid.n", cfg.n);
  cfg.length = r.get_double("grid.length", cfg.length);
  Grid::create(cfg.dim, cfg.n, cfg.length);  // validates, result discarded

  std::string pot = r.get_choice("model.potential", "gompper_schick",
                                 {"gompper_schick", "pawlow_quartic"});
  double delta = r.get_double("model.delta", 1.0);
  double mobility = r.get_double("model.mobility", 1.0);
  double g0 = r.get_double("model.g0", 1.0);
  double g2 = r.get_double("model.g2", 1.0);
  double h0 = r.get_double("model.h0", 0.2);
  double alpha = r.get_double("model.alpha", 0.0);
  try {
    if (pot == "gompper_schick") {
      cfg.params = PhysicalParams::gompper_schick(delta, g0, g2, h0, mobility);
      cfg.params.alpha = alpha;  // carried, unused by this potential
    } else {
      cfg.params = PhysicalParams::pawlow_quartic(delta, alpha, mobility);
      cfg.params.g0 = g0;
      cfg.params.g2 = g2;
      cfg.params.h0 = h0;
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("model.*: ") + e.what());
  }

  std::string scheme = r.get_choice("step.scheme", "ifrk4", {"ifrk4", "ifeuler"});
  cfg.step.scheme = scheme == "ifrk4" ? Scheme::IFRK4 : Scheme::IFEuler;
  cfg.step.dt = r.get_double("step.dt", 0.0);
  cfg.step.cfl = r.get_double("step.cfl", 0.5);
  if (!(cfg.step.cfl > 0.0 && cfg.step.cfl <= 2.0))
    throw ConfigError("config key 'step.cfl': must lie in (0, 2]");
  cfg.step.dealias = r.get_bool("step.dealias", true);
  cfg.step.oversample = r.get_bool("step.oversample", false);
  cfg.step.linear_only = r.get_bool("step.linear_only", false);

  cfg.t_end = r.get_double("run.t_end", cfg.t_end);
  cfg.cadence = r.get_double("run.cadence", cfg.cadence);
  if (!(cfg.t_end > 0.0)) throw ConfigError("config key 'run.t_end': must be > 0");
  if (!(cfg.cadence > 0.0) || cfg.cadence > cfg.t_end)
    throw ConfigError("config key 'run.cadence': must lie in (0, run.t_end]");
  cfg.snapshots = r.get_bool("run.snapshots", false);

  cfg.diag.max_grad_order = r.get_int("diag.max_grad_order", 3);
  if (cfg.diag.max_grad_order < 0 || cfg.diag.max_grad_order > 8)
    throw ConfigError("config key 'diag.max_grad_order': must lie in [0, 8]");
  cfg.diag.neg_s = r.get_double("diag.neg_s", 0.5);
  if (!(cfg.diag.neg_s > 0.0))
    throw ConfigError("config key 'diag.neg_s': must be > 0");
  std::string pol = r.get_choice("diag.neg_policy", "project", {"project", "strict"});
  cfg.diag.neg_policy = pol == "strict" ? ZeroModePolicy::Strict : ZeroModePolicy::Project;

  std::string fam = r.get_choice(
      "init.family", "gaussian",
      {"gaussian", "band_random", "constant", "single_mode", "from_file"});
  if (fam == "gaussian") cfg.init.family = InitFamily::Gaussian;
  else if (fam == "band_random") cfg.init.family = InitFamily::BandRandom;
  else if (fam == "constant") cfg.init.family = InitFamily::Constant;
  else if (fam == "single_mode") cfg.init.family = InitFamily::SingleMode;
  else cfg.init.family = InitFamily::FromFile;
  cfg.init.amplitude = r.get_double("init.amplitude", cfg.init.amplitude);
  cfg.init.width = r.get_double("init.width", 0.0);
  if (cfg.init.width < 0.0) throw ConfigError("config key 'init.width': must be >= 0");
  cfg.init.kmax = r.get_int("init.kmax", cfg.init.kmax);
  // grid-dependent bounds only matter for the family that consumes the key
  if (cfg.init.family == InitFamily::BandRandom &&
      (cfg.init.kmax < 1 || cfg.init.kmax > cfg.n / 2 - 1))
    throw ConfigError("config key 'init.kmax': must lie in [1, n/2 - 1]");
  cfg.init.slope = r.get_double("init.slope", 0.0);
  cfg.init.mode = r.get_int("init.mode", 1);
  if (cfg.init.family == InitFamily::SingleMode &&
      (cfg.init.mode < 1 || cfg.init.mode > cfg.n / 2 - 1))
    throw ConfigError("config key 'init.mode': must lie in [1, n/2 - 1]");
  cfg.init.path = r.get_string("init.path", "");
  if (cfg.init.family == InitFamily::FromFile && cfg.init.path.empty())
    throw ConfigError("config key 'init.path': required when init.family = from_file");
  cfg.init.zero_mean = r.get_bool("init.zero_mean", true);
  cfg.init.target_h2 = r.get_double("init.target_h2", cfg.init.target_h2);

  cfg.picard.t1 = r.get_double("picard.t1", 0.1);
  if (!(cfg.picard.t1 > 0.0)) throw ConfigError("config key 'picard.t1': must be > 0");
  cfg.picard.jmax = r.get_int("picard.jmax", 6);
  if (cfg.picard.jmax < 1 || cfg.picard.jmax > 64)
    throw ConfigError("config key 'picard.jmax': must lie in [1, 64]");
  cfg.picard.inner_steps = r.get_int("picard.inner_steps", 128);
  if (cfg.picard.inner_steps < 1)
    throw ConfigError("config key 'picard.inner_steps': must be >= 1");
  cfg.picard.dealias = r.get_bool("picard.dealias", true);

  cfg.ineq_samples = r.get_int("ineq.samples", 50);
  if (cfg.ineq_samples < 1) throw ConfigError("config key 'ineq.samples': must be >= 1");
  cfg.ineq_band = r.get_int("ineq.band", 8);
  if (cfg.scenario == "inequalities" &&
      (cfg.ineq_band < 1 || cfg.ineq_band > cfg.n / 2 - 1))
    throw ConfigError("config key 'ineq.band': must lie in [1, n/2 - 1]");
  cfg.ineq_slope = r.get_double("ineq.slope", -1.0);
  std::string kinds = lower(trim(r.get_string("ineq.kinds", "all")));
  cfg.ineq_kinds.clear();
  if (kinds != "all" && !kinds.empty()) {
    std::istringstream ks(kinds);
    std::string item;
    while (std::getline(ks, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto& known = known_ineq_kinds();
      if (std::find(known.begin(), known.end(), item) == known.end()) {
        std::string all;
        for (const auto& k : known) {
          if (!all.empty()) all += ", ";
          all += k;
        }
        throw ConfigError("config key 'ineq.kinds': unknown kind '" + item +
                          "' (one of: " + all + ", or 'all')");
      }
      cfg.ineq_kinds.push_back(item);
    }
  }

  cfg.equiv_samples = r.get_int("equiv.samples", 100);
  if (cfg.equiv_samples < 1) throw ConfigError("config key 'equiv.samples': must be >= 1");
  cfg.equiv_amplitude = r.get_double("equiv.amplitude", 0.75);
  cfg.equiv_kmax = r.get_int("equiv.kmax", 0);
  if (cfg.scenario == "equivalence" &&
      (cfg.equiv_kmax < 0 || cfg.equiv_kmax > cfg.n / 2 - 1))
    throw ConfigError("config key 'equiv.kmax': must lie in [0, n/2 - 1] (0 = n/3)");
  cfg.equiv_tol = r.get_double("equiv.tol", 1e-10);
  if (!(cfg.equiv_tol > 0.0)) throw ConfigError("config key 'equiv.tol': must be > 0");

  r.check_unknown(all_keys());
  return cfg;
}

std::string RunConfig::resolved_text() const {
  std::ostringstream out;
  auto put = [&out](const std::string& key, const std::string& v) {
    out << key << " = " << v << "\n";
  };
  auto putd = [&put](const std::string& key, double v) { put(key, fmt_double(v)); };
  auto putb = [&put](const std::string& key, bool v) { put(key, v ? "true" : "false"); };

  put("scenario", scenario);
  put("out", out_dir);
  put("seed", std::to_string(seed));
  put("grid.dim", std::to_string(dim));
  put("grid.n", std::to_string(n));
  putd("grid.length", length);
  bool gs = params.potential == PotentialKind::GompperSchick;
  put("model.potential", gs ? "gompper_schick" : "pawlow_quartic");
  putd("model.delta", params.delta);
  putd("model.mobility", params.mobility);
  if (gs) {
    putd("model.g0", params.g0);
    putd("model.g2", params.g2);
    putd("model.h0", params.h0);
  } else {
    putd("model.alpha", params.alpha);
  }
  put("step.scheme", step.scheme == Scheme::IFRK4 ? "ifrk4" : "ifeuler");
  putd("step.dt", step.dt);
  putd("step.cfl", step.cfl);
  putb("step.dealias", step.dealias);
  putb("step.oversample", step.oversample);
  putb("step.linear_only", step.linear_only);
  putd("run.t_end", t_end);
  putd("run.cadence", cadence);
  putb("run.snapshots", snapshots);
  put("diag.max_grad_order", std::to_string(diag.max_grad_order));
  putd("diag.neg_s", diag.neg_s);
  put("diag.neg_policy",
      diag.neg_policy == ZeroModePolicy::Strict ? "strict" : "project");
  switch (init.family) {
    case InitFamily::Gaussian: put("init.family", "gaussian"); break;
    case InitFamily::BandRandom: put("init.family", "band_random"); break;
    case InitFamily::Constant: put("init.family", "constant"); break;
    case InitFamily::SingleMode: put("init.family", "single_mode"); break;
    case InitFamily::FromFile: put("init.family", "from_file"); break;
  }
  putd("init.amplitude", init.amplitude);
  putd("init.width", init.width);
  put("init.kmax", std::to_string(init.kmax));
  putd("init.slope", init.slope);
  put("init.mode", std::to_string(init.mode));
  if (!init.path.empty()) put("init.path", init.path);
  putb("init.zero_mean", init.zero_mean);
  putd("init.target_h2", init.target_h2);
  putd("picard.t1", picard.t1);
  put("picard.jmax", std::to_string(picard.jmax));
  put("picard.inner_steps", std::to_string(picard.inner_steps));
  putb("picard.dealias", picard.dealias);
  put("ineq.samples", std::to_string(ineq_samples));
  put("ineq.band", std::to_string(ineq_band));
  putd("ineq.slope", ineq_slope);
  if (ineq_kinds.empty()) {
    put("ineq.kinds", "all");
  } else {
    std::string all;
    for (const auto& k : ineq_kinds) {
      if (!all.empty()) all += ",";
      all += k;
    }
    put("ineq.kinds", all);
  }
  put("equiv.samples", std::to_string(equiv_samples));
  putd("equiv.amplitude", equiv_amplitude);
  put("equiv.kmax", std::to_string(equiv_kmax));
  putd("equiv.tol", equiv_tol);
  return out.str();
}

}  // namespace ch6
