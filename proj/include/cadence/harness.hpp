#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cadence/abstract_model.hpp"
#include "cadence/ancilla.hpp"
#include "cadence/calibration.hpp"
#include "cadence/steane.hpp"

namespace cadence {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RateSource { kCalibrated, kExplicit, kReference };

struct SweepConfig {
  int N = 1000;
  std::vector<int> m = {1, 2, 4, 5, 8, 10, 20, 25, 100};
  std::vector<double> eps_g = {1e-4};
  std::vector<double> eps_a = {0.0};
  std::uint64_t shots = 100000;
  std::uint64_t master_seed = 1;
  std::string ancilla = "plus_encoder";
  bool include_meas_error = true;
  int retry_cap = kDefaultRetryCap;

  RateSource rate_source = RateSource::kCalibrated;
  RateCoefficients coefficients;      // used when rate_source is explicit
  std::string calibration_file;       // calibrated: load instead of re-running
  std::vector<double> calibration_eps_g = default_calibration_grid();
  std::uint64_t calibration_shots = 1000000;
  Normalization normalization = Normalization::kPerQubit;

  std::string output;

  void validate() const;
};

SweepConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SweepConfig& c);
SweepConfig load_config(const std::string& path);

nlohmann::json calibration_to_json(const CalibrationRecord& rec);
RateCoefficients coefficients_from_calibration_json(const nlohmann::json& j);

CalibrationOptions calibration_options(const SweepConfig& c, int threads);

// Resolves the rate source; runs a calibration when needed and none is on file.
RateCoefficients resolve_coefficients(const SweepConfig& c, int threads);

struct SweepRow {
  double eps_g;
  double eps_a;
  int m;
  int N;
  int B;
  std::uint64_t shots;
  std::uint64_t failures;
  double p_l_mc;
  double ci_low;
  double ci_high;
  double p_l_formula;
  double p_l_approx;
  std::uint64_t seed;
  bool formula_clamped;
};

inline constexpr const char* kSweepHeader =
    "eps_g,eps_a,m,N,B,shots,failures,p_l_mc,ci_low,ci_high,p_l_formula,p_l_approx,seed";

// Grid order: eps_g outermost, then eps_a, then m.
std::vector<SweepRow> run_sweep(const SweepConfig& c, const RateCoefficients& k, int threads);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct MminRow {
  double eps_g;
  double eps_a;
  double d_over_c1;
  int m_min;
  int grid_argmin;
};

std::vector<MminRow> run_mmin(const SweepConfig& c, const RateCoefficients& k);
std::string mmin_csv(const std::vector<MminRow>& rows);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct CheckInputs {
  CodeDefinition code = steane_code();
  std::vector<AncillaCircuit> circuits = {steane_plus_encoder(), steane_plus_verified(), steane_zero_verified()};
};

std::vector<CheckResult> run_self_checks(const CheckInputs& in = {});

std::string format_double(double x);

}  // namespace cadence
