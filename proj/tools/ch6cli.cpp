// Command line front end.  Everything goes through the public C interface of
// the shared library; this file must not include internal headers.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ch6/ch6.h"

namespace {

// Process exit codes: 0 checks passed, 1 a check failed, 2 usage or
// configuration problem, 3 blow-up.
int exit_for(int code) {
  if (code == CH6_OK) return 0;
  if (code == CH6_E_BLOWUP) return 3;
  return 2;
}

int report_error(int code) {
  std::cerr << "error: " << ch6_last_error() << "\n";
  return exit_for(code);
}

struct ConfigHandle {
  ch6_config* c = nullptr;
  ~ConfigHandle() { ch6_config_destroy(c); }
};

struct FieldHandle {
  ch6_field* f = nullptr;
  ~FieldHandle() { ch6_field_destroy(f); }
};

int load_config(const std::string& path, const std::vector<std::string>& sets,
                const std::string& scenario, const std::string& seed,
                ConfigHandle& out) {
  int rc = path.empty() ? ch6_config_create(&out.c)
                        : ch6_config_load(path.c_str(), &out.c);
  if (rc != CH6_OK) return rc;
  for (const auto& s : sets) {
    std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --set expects key=value, got '" << s << "'\n";
      return CH6_E_ARG;
    }
    std::string key = s.substr(0, eq);
    std::string value = s.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());
    rc = ch6_config_set(out.c, key.c_str(), value.c_str());
    if (rc != CH6_OK) return rc;
  }
  if (!scenario.empty()) {
    rc = ch6_config_set(out.c, "scenario", scenario.c_str());
    if (rc != CH6_OK) return rc;
  }
  if (!seed.empty()) {
    rc = ch6_config_set(out.c, "seed", seed.c_str());
    if (rc != CH6_OK) return rc;
  }
  return CH6_OK;
}

std::string config_value(const ch6_config* c, const char* key) {
  size_t needed = 0;
  if (ch6_config_get(c, key, nullptr, 0, &needed) != CH6_OK) return {};
  std::string v(needed, '\0');
  if (ch6_config_get(c, key, v.data(), v.size() + 1, nullptr) != CH6_OK) return {};
  return v;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& sets,
            const std::string& scenario, const std::string& seed,
            const std::string& out_dir) {
  ConfigHandle cfg;
  int rc = load_config(config_path, sets, scenario, seed, cfg);
  if (rc != CH6_OK) return report_error(rc);

  int scenario_exit = 0, passed = 0;
  rc = ch6_run_scenario(cfg.c, out_dir.empty() ? nullptr : out_dir.c_str(),
                        &scenario_exit, &passed);
  if (rc != CH6_OK) return report_error(rc);

  std::string dir = out_dir.empty() ? config_value(cfg.c, "out") : out_dir;
  std::ifstream summary(dir + "/summary.txt");
  if (summary) std::cout << summary.rdbuf();
  if (scenario_exit == 3) std::cerr << "error: the run blew up\n";
  else if (!passed) std::cerr << "one or more checks failed\n";
  return scenario_exit;
}

int cmd_check(const std::string& config_path, const std::vector<std::string>& sets,
              const std::string& scenario, const std::string& seed) {
  ConfigHandle cfg;
  int rc = load_config(config_path, sets, scenario, seed, cfg);
  if (rc != CH6_OK) return report_error(rc);
  rc = ch6_config_validate(cfg.c);
  if (rc != CH6_OK) return report_error(rc);
  size_t needed = 0;
  ch6_config_render(cfg.c, nullptr, 0, &needed);
  std::string text(needed, '\0');
  rc = ch6_config_render(cfg.c, text.data(), text.size() + 1, nullptr);
  if (rc != CH6_OK) return report_error(rc);
  std::cout << text;
  return 0;
}

int cmd_fit(const std::string& csv, const std::string& column, double t1, double t2) {
  double sigma = 0.0, r2 = 0.0;
  int samples = 0;
  int rc = ch6_fit_csv(csv.c_str(), column.c_str(), t1, t2, &sigma, &r2, &samples);
  if (rc != CH6_OK) return report_error(rc);
  std::printf("column = %s\nsigma_hat = %.17g\nr2 = %.17g\nsamples = %d\n",
              column.c_str(), sigma, r2, samples);
  return 0;
}

int cmd_ineq(const std::string& field_path, double l, double k, double s) {
  FieldHandle f;
  int rc = ch6_field_load(field_path.c_str(), &f.f);
  if (rc != CH6_OK) return report_error(rc);
  double ratio = 0.0;
  rc = ch6_interpolation_ratio(f.f, l, k, s, &ratio);
  if (rc != CH6_OK) return report_error(rc);
  std::printf("ratio = %.17g\nbound = 1\n", ratio);
  return ratio <= 1.0 + 1e-10 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sixth-order phase-field solver and verification harness"};
  app.set_version_flag("--version", std::string(ch6_version()));
  app.require_subcommand(1);

  std::string config_path, scenario, seed, out_dir;
  std::vector<std::string> sets;

  auto add_config_opts = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "configuration file");
    sub->add_option("-s,--set", sets, "override, key=value (repeatable)");
    sub->add_option("--scenario", scenario, "scenario name override");
    sub->add_option("--seed", seed, "seed override");
  };

  CLI::App* run = app.add_subcommand("run", "run a scenario and print its summary");
  add_config_opts(run);
  run->add_option("-o,--out", out_dir, "output directory override");

  CLI::App* check = app.add_subcommand("check", "validate and print the resolved config");
  add_config_opts(check);

  std::string csv, column = "gradL2_0";
  double t1 = 0.0, t2 = 1e300;
  CLI::App* fit = app.add_subcommand("fit", "fit a decay exponent to a CSV column");
  fit->add_option("--csv", csv, "diagnostics CSV file")->required();
  fit->add_option("--column", column, "column name (default gradL2_0)");
  fit->add_option("--t1", t1, "window start");
  fit->add_option("--t2", t2, "window end");

  std::string field_path;
  double il = 1.0, ik = 1.0, is = 0.5;
  CLI::App* ineq = app.add_subcommand("ineq", "interpolation ratio of a stored field");
  ineq->add_option("--field", field_path, "field snapshot file")->required();
  ineq->add_option("--l", il, "target derivative order");
  ineq->add_option("--k", ik, "order gap to the high norm");
  ineq->add_option("--s", is, "negative order");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, sets, scenario, seed, out_dir);
  if (check->parsed()) return cmd_check(config_path, sets, scenario, seed);
  if (fit->parsed()) return cmd_fit(csv, column, t1, t2);
  if (ineq->parsed()) return cmd_ineq(field_path, il, ik, is);
  return 2;
}
