#include "cadence/calibration.hpp"

#include <cmath>
#include <stdexcept>

namespace cadence {

std::string to_string(Normalization n) {
  switch (n) {
    case Normalization::kPerQubit:
      return "per_qubit";
    case Normalization::kSpectator:
      return "spectator";
    case Normalization::kDirect:
      return "direct";
  }
  return "?";
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "per_qubit") return Normalization::kPerQubit;
  if (s == "spectator") return Normalization::kSpectator;
  if (s == "direct") return Normalization::kDirect;
  throw std::invalid_argument("unknown normalization: " + s);
}

std::pair<double, double> normalization_divisors(Normalization n) {
  switch (n) {
    case Normalization::kPerQubit:
      return {6.0, 7.0};
    case Normalization::kSpectator:
      return {6.0, 6.0};
    case Normalization::kDirect:
      break;
  }
  return {1.0, 1.0};
}

CalibrationPoint measure_point(double eps, std::uint64_t point_index, const CalibrationOptions& opts,
                               bool input_error) {
  if (opts.shots == 0) throw std::invalid_argument("calibration shots must be positive");
  NoiseParams noise = make_noise(eps, opts.include_meas_error);
  FaultSimulator sim(ancilla_circuit_by_name(opts.ancilla), noise, opts.retry_cap);

  CalibrationPoint pt;
  pt.eps_g = noise.eps_g();
  pt.shots = opts.shots;
  const std::uint64_t chunks_per_pos = (opts.shots + kChunkSize - 1) / kChunkSize;
  const std::uint64_t total_chunks = chunks_per_pos * kNumQubits;
  std::vector<std::uint64_t> two(total_chunks), one(total_chunks);
  const std::uint64_t point_seed = derive_seed(opts.seed, point_index);

  parallel_chunks(total_chunks, opts.threads, [&](std::uint64_t job) {
    const int pos = static_cast<int>(job / chunks_per_pos);
    const std::uint64_t c = job % chunks_per_pos;
    Rng rng(derive_seed(derive_seed(point_seed, pos), c));
    SkipSampler sampler(sim, rng);
    const ErrorPattern input = input_error ? ErrorPattern::single(pos + 1) : ErrorPattern{};
    const std::uint64_t n = std::min(kChunkSize, opts.shots - c * kChunkSize);
    std::uint64_t k2 = 0, k1 = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      ErrorPattern out = sampler.qec_round(input);
      int w = out.weight();
      if (w == 1) ++k1;
      if (w >= 2 && apply_ideal_qec(out).logical) ++k2;
    }
    two[job] = k2;
    one[job] = k1;
  });

  std::uint64_t tot2 = 0, tot1 = 0;
  for (std::uint64_t job = 0; job < total_chunks; ++job) {
    pt.two_by_position[job / chunks_per_pos] += two[job];
    pt.one_by_position[job / chunks_per_pos] += one[job];
    tot2 += two[job];
    tot1 += one[job];
  }
  const std::uint64_t n = opts.shots * kNumQubits;
  pt.rate_two_out = static_cast<double>(tot2) / static_cast<double>(n);
  pt.rate_one_out = static_cast<double>(tot1) / static_cast<double>(n);
  pt.ci_two = wilson_interval(tot2, n);
  pt.ci_one = wilson_interval(tot1, n);
  return pt;
}

double measure_second_error_rate(double eps, const CalibrationOptions& opts) {
  return measure_point(eps, 0, opts).rate_two_out;
}

double measure_single_error_passthrough_rate(double eps, const CalibrationOptions& opts) {
  return measure_point(eps, 0, opts).rate_one_out;
}

double fit_linear(const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) throw std::invalid_argument("fit_linear needs at least one point");
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : points) {
    sxy += x * y;
    sxx += x * x;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_linear: all abscissae are zero");
  return sxy / sxx;
}

RateCoefficients reference_coefficients() { return {3.45, 0.61, 0.4, 0.4}; }

AbstractRates rates_at(const RateCoefficients& k, double eps_g, double eps_a) {
  AbstractRates r;
  r.eps_g = eps_g;
  r.eps_a = eps_a;
  r.eps_s = k.s * eps_g;
  r.eps_o = k.o * eps_g;
  r.eps_c = k.c * eps_g;
  r.eps_d = k.d * eps_g;
  r.validate();
  return r;
}

void assemble_rates(CalibrationRecord& rec, const std::vector<double>& eps_g_grid) {
  if (rec.slope_sd < 0.0 || rec.slope_co < 0.0) throw std::invalid_argument("calibration slopes must be nonnegative");
  // eps_c = eps_d = 2 eps_g / 5 from the CNOT fault classes.
  RateCoefficients k;
  k.c = 0.4;
  k.d = 0.4;
  k.s = rec.slope_sd - k.d;
  k.o = rec.slope_co - k.c;
  if (k.s < 0.0) {
    rec.warnings.push_back("eps_s clamped to 0 (slope_sd below eps_d coefficient)");
    k.s = 0.0;
  }
  if (k.o < 0.0) {
    rec.warnings.push_back("eps_o clamped to 0 (slope_co below eps_c coefficient)");
    k.o = 0.0;
  }
  rec.coefficients = k;
  rec.rates.clear();
  for (double eg : eps_g_grid) rec.rates.push_back(rates_at(k, eg, 0.0));
}

CalibrationRecord calibrate(const std::vector<double>& eps_g_grid, const CalibrationOptions& opts,
                            Normalization norm) {
  if (eps_g_grid.empty()) throw std::invalid_argument("calibration grid is empty");
  for (double eg : eps_g_grid)
    if (!(eg >= 0.0 && eg <= 2.0 / 3.0)) throw std::invalid_argument("calibration eps_g must lie in [0, 2/3]");

  CalibrationRecord rec;
  rec.normalization = norm;
  rec.shots = opts.shots;
  rec.seed = opts.seed;
  rec.ancilla = opts.ancilla;
  auto [div_two, div_one] = normalization_divisors(norm);

  std::vector<std::pair<double, double>> sd, co;
  for (std::size_t i = 0; i < eps_g_grid.size(); ++i) {
    CalibrationPoint pt = measure_point(1.5 * eps_g_grid[i], i, opts);
    pt.eps_g = eps_g_grid[i];
    sd.emplace_back(pt.eps_g, pt.rate_two_out / div_two);
    co.emplace_back(pt.eps_g, pt.rate_one_out / div_one);
    rec.points.push_back(pt);
  }
  rec.slope_sd = fit_linear(sd);
  rec.slope_co = fit_linear(co);
  for (auto [x, y] : sd) rec.residual_sd += (y - rec.slope_sd * x) * (y - rec.slope_sd * x);
  for (auto [x, y] : co) rec.residual_co += (y - rec.slope_co * x) * (y - rec.slope_co * x);
  rec.residual_sd = std::sqrt(rec.residual_sd);
  rec.residual_co = std::sqrt(rec.residual_co);
  assemble_rates(rec, eps_g_grid);
  return rec;
}

std::vector<double> default_calibration_grid() { return {1e-5, 5e-5, 1e-4, 5e-4, 1e-3}; }

}  // namespace cadence
