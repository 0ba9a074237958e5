// qec-cadence: calibration, sweeps and self-checks for the QEC scheduling model.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "cadence/harness.hpp"

using namespace cadence;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kSimAbort = 2, kConfigErr = 3 };

struct Common {
  std::string config;
  int threads = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::uint64_t parse_seed(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos, 10);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(what) + " must be a decimal 64-bit integer");
  }
}

SweepConfig load(const Common& o) {
  if (o.config.empty()) throw ConfigError("--config is required");
  SweepConfig c = load_config(o.config);
  // --seed beats the environment, which beats the config file.
  if (o.seed)
    c.master_seed = *o.seed;
  else if (const char* env = std::getenv("QEC_CADENCE_SEED"))
    c.master_seed = parse_seed(env, "QEC_CADENCE_SEED");
  if (!o.out.empty()) c.output = o.out;
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
  if (!f) throw ConfigError("write failed: " + path);
}

int threads_of(const Common& o) { return o.threads > 0 ? o.threads : default_threads(); }

int cmd_calibrate(const Common& o) {
  SweepConfig c = load(o);
  CalibrationRecord rec;
  try {
    rec = calibrate(c.calibration_eps_g, calibration_options(c, threads_of(o)), c.normalization);
  } catch (const std::invalid_argument& e) {
    std::cerr << "warning: calibration rejected: " << e.what() << "\n";
    return kConfigErr;
  }
  for (const std::string& w : rec.warnings) std::cerr << "warning: " << w << "\n";
  std::string text = calibration_to_json(rec).dump(2) + "\n";
  emit(c.output, text);
  std::fprintf(c.output.empty() ? stderr : stdout, "slope_sd = %.4f  slope_co = %.4f  (%s)\n", rec.slope_sd,
               rec.slope_co, to_string(rec.normalization).c_str());
  return kOk;
}

int cmd_sweep(const Common& o) {
  SweepConfig c = load(o);
  int threads = threads_of(o);
  RateCoefficients k = resolve_coefficients(c, threads);
  std::vector<SweepRow> rows = run_sweep(c, k, threads);
  for (const SweepRow& r : rows)
    if (r.formula_clamped)
      std::cerr << "warning: formula clamped at eps_g=" << r.eps_g << " eps_a=" << r.eps_a << " m=" << r.m << "\n";
  emit(c.output, sweep_csv(rows));
  return kOk;
}

int cmd_mmin(const Common& o) {
  SweepConfig c = load(o);
  RateCoefficients k = resolve_coefficients(c, threads_of(o));
  std::vector<MminRow> rows = run_mmin(c, k);
  std::printf("%-10s %-6s %-10s %-6s %s\n", "eps_g", "eps_a", "d/c1", "m_min", "grid_argmin");
  for (const MminRow& r : rows)
    std::printf("%-10.3g %-6.3g %-10.4f %-6d %d\n", r.eps_g, r.eps_a, r.d_over_c1, r.m_min, r.grid_argmin);
  if (!c.output.empty()) emit(c.output, mmin_csv(rows));
  return kOk;
}

int cmd_check() {
  bool ok = true;
  for (const CheckResult& r : run_self_checks()) {
    std::printf("%s  %-36s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steane-code QEC scheduling: calibration, Monte Carlo sweeps and the second-order model"};
  app.require_subcommand(1);
  Common opts;
  std::string seed_text;

  auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* cfg = sub->add_option("--config", opts.config, "JSON config file");
    if (need_config) cfg->required();
    sub->add_option("--threads", opts.threads, "worker threads (default: hardware)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed_text, "master seed (overrides QEC_CADENCE_SEED and the config)");
    sub->add_option("--out", opts.out, "output path (overrides the config)");
  };
  auto* calibrate = app.add_subcommand("calibrate", "fit syndrome/omission rates from micro-simulations");
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo vs formula over the configured grid, as CSV");
  auto* mmin = app.add_subcommand("mmin", "optimal block size per eps_a");
  auto* check = app.add_subcommand("check", "run the self-check battery");
  add_common(calibrate, true);
  add_common(sweep, true);
  add_common(mmin, true);
  add_common(check, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigErr;
  }

  try {
    if (!seed_text.empty()) opts.seed = parse_seed(seed_text, "--seed");
    if (calibrate->parsed()) return cmd_calibrate(opts);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (mmin->parsed()) return cmd_mmin(opts);
    if (check->parsed()) return cmd_check();
  } catch (const SimulationAbort& e) {
    std::cerr << "simulation aborted: " << e.what() << "\n";
    return kSimAbort;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigErr;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigErr;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigErr;
  }
  return kOk;
}
