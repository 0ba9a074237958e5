#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cadence/abstract_model.hpp"
#include "cadence/fault_sim.hpp"

namespace cadence {

// How the aggregate micro-simulation rates map to per-qubit model rates.
//   per_qubit: two-error rate / 6 partner qubits, single-error rate / 7 positions
//   spectator: both divided by the 6 spectator qubits
//   direct:    aggregate rates used as-is
enum class Normalization { kPerQubit, kSpectator, kDirect };

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);
std::pair<double, double> normalization_divisors(Normalization n);

struct CalibrationOptions {
  std::uint64_t shots = 1000000;  // per input position
  std::uint64_t seed = 0;
  std::string ancilla = "plus_encoder";
  bool include_meas_error = true;
  int retry_cap = kDefaultRetryCap;
  int threads = 1;
};

struct CalibrationPoint {
  double eps_g = 0.0;
  std::uint64_t shots = 0;  // per position
  double rate_two_out = 0.0;  // P(logical residual | one input error), mean over positions
  double rate_one_out = 0.0;  // P(exactly one output error | one input error)
  Interval ci_two, ci_one;
  std::array<std::uint64_t, kNumQubits> two_by_position{};
  std::array<std::uint64_t, kNumQubits> one_by_position{};
};

// One noisy QEC round per shot on data carrying a single X error, for each of
// the 7 positions. With `input_error = false` the data starts clean and every
// position slot runs the same clean experiment.
CalibrationPoint measure_point(double eps, std::uint64_t point_index, const CalibrationOptions& opts,
                               bool input_error = true);
double measure_second_error_rate(double eps, const CalibrationOptions& opts);
double measure_single_error_passthrough_rate(double eps, const CalibrationOptions& opts);

// Zero-intercept least squares: sum(xy) / sum(x^2).
double fit_linear(const std::vector<std::pair<double, double>>& points);

// Rates per unit eps_g; eps_a is supplied separately.
struct RateCoefficients {
  double s = 0.0;
  double o = 0.0;
  double c = 0.0;
  double d = 0.0;
};

RateCoefficients reference_coefficients();
AbstractRates rates_at(const RateCoefficients& k, double eps_g, double eps_a = 0.0);

struct CalibrationRecord {
  Normalization normalization = Normalization::kPerQubit;
  double slope_sd = 0.0;
  double slope_co = 0.0;
  double residual_sd = 0.0;
  double residual_co = 0.0;
  RateCoefficients coefficients;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::string ancilla;
  std::vector<CalibrationPoint> points;
  std::vector<AbstractRates> rates;  // one per grid point, eps_a = 0
  std::vector<std::string> warnings;
};

// eps_c = eps_d = 2 eps_g / 5 analytically; eps_s and eps_o from the slopes.
// Negative components are clamped to 0 with a warning.
void assemble_rates(CalibrationRecord& rec, const std::vector<double>& eps_g_grid);

CalibrationRecord calibrate(const std::vector<double>& eps_g_grid, const CalibrationOptions& opts,
                            Normalization norm = Normalization::kPerQubit);

std::vector<double> default_calibration_grid();

}  // namespace cadence
