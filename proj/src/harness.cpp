#include "cadence/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace cadence {

using nlohmann::json;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

namespace {

std::string source_name(RateSource s) {
  switch (s) {
    case RateSource::kCalibrated:
      return "calibrated";
    case RateSource::kExplicit:
      return "explicit";
    case RateSource::kReference:
      return "reference";
  }
  return "?";
}

RateSource source_from_name(const std::string& s) {
  if (s == "calibrated") return RateSource::kCalibrated;
  if (s == "explicit") return RateSource::kExplicit;
  if (s == "reference") return RateSource::kReference;
  throw ConfigError("unknown rates.source: " + s);
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
  std::set<std::string> ok(known.begin(), known.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

json coeff_json(const RateCoefficients& k) { return {{"s", k.s}, {"o", k.o}, {"c", k.c}, {"d", k.d}}; }

RateCoefficients coeff_from(const json& j) {
  reject_unknown(j, {"s", "o", "c", "d"}, "coefficients");
  RateCoefficients k;
  k.s = j.at("s").get<double>();
  k.o = j.at("o").get<double>();
  k.c = j.at("c").get<double>();
  k.d = j.at("d").get<double>();
  return k;
}

}  // namespace

void SweepConfig::validate() const {
  if (N < 1) throw ConfigError("N must be positive");
  if (m.empty() || eps_g.empty() || eps_a.empty()) throw ConfigError("m, eps_g and eps_a lists must be nonempty");
  for (int x : m)
    if (x < 1 || N % x != 0) throw ConfigError("every m must be a positive divisor of N (got " + std::to_string(x) + ")");
  for (double x : eps_g)
    if (!(x >= 0.0 && x <= 2.0 / 3.0)) throw ConfigError("eps_g must lie in [0, 2/3]");
  for (double x : eps_a)
    if (!(x >= 0.0 && x < 1.0)) throw ConfigError("eps_a must lie in [0, 1)");
  if (shots < 1) throw ConfigError("shots must be positive");
  if (calibration_shots < 1) throw ConfigError("calibration.shots must be positive");
  if (calibration_eps_g.empty()) throw ConfigError("calibration.eps_g must be nonempty");
  if (retry_cap < 1) throw ConfigError("retry_cap must be positive");
  for (double x : {coefficients.s, coefficients.o, coefficients.c, coefficients.d})
    if (!(x >= 0.0)) throw ConfigError("rate coefficients must be nonnegative");
  try {
    if (ancilla_circuit_by_name(ancilla).target != LogicalState::kPlus)
      throw ConfigError("ancilla must prepare |+_L> for X-syndrome extraction");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SweepConfig config_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j,
                   {"N", "m", "eps_g", "eps_a", "shots", "master_seed", "ancilla", "include_meas_error", "retry_cap",
                    "rates", "calibration", "output"},
                   "config");
    SweepConfig c;
    c.N = j.value("N", c.N);
    c.m = j.value("m", c.m);
    c.eps_g = j.value("eps_g", c.eps_g);
    c.eps_a = j.value("eps_a", c.eps_a);
    if (j.contains("shots") && j.at("shots").is_number_integer() && j.at("shots").get<long long>() < 0)
      throw ConfigError("shots must be positive");
    c.shots = j.value("shots", c.shots);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.ancilla = j.value("ancilla", c.ancilla);
    c.include_meas_error = j.value("include_meas_error", c.include_meas_error);
    c.retry_cap = j.value("retry_cap", c.retry_cap);
    c.output = j.value("output", c.output);
    if (j.contains("rates")) {
      const json& r = j.at("rates");
      reject_unknown(r, {"source", "coefficients", "calibration_file"}, "rates");
      c.rate_source = source_from_name(r.value("source", source_name(c.rate_source)));
      if (r.contains("coefficients")) c.coefficients = coeff_from(r.at("coefficients"));
      c.calibration_file = r.value("calibration_file", c.calibration_file);
    }
    if (j.contains("calibration")) {
      const json& cal = j.at("calibration");
      reject_unknown(cal, {"eps_g", "shots", "normalization"}, "calibration");
      c.calibration_eps_g = cal.value("eps_g", c.calibration_eps_g);
      c.calibration_shots = cal.value("shots", c.calibration_shots);
      c.normalization = normalization_from_string(cal.value("normalization", to_string(c.normalization)));
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

json config_to_json(const SweepConfig& c) {
  json j;
  j["N"] = c.N;
  j["m"] = c.m;
  j["eps_g"] = c.eps_g;
  j["eps_a"] = c.eps_a;
  j["shots"] = c.shots;
  j["master_seed"] = c.master_seed;
  j["ancilla"] = c.ancilla;
  j["include_meas_error"] = c.include_meas_error;
  j["retry_cap"] = c.retry_cap;
  j["rates"] = {{"source", source_name(c.rate_source)},
                {"coefficients", coeff_json(c.coefficients)},
                {"calibration_file", c.calibration_file}};
  j["calibration"] = {
      {"eps_g", c.calibration_eps_g}, {"shots", c.calibration_shots}, {"normalization", to_string(c.normalization)}};
  j["output"] = c.output;
  return j;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

json calibration_to_json(const CalibrationRecord& rec) {
  json j;
  j["normalization"] = to_string(rec.normalization);
  j["ancilla"] = rec.ancilla;
  j["shots"] = rec.shots;
  j["master_seed"] = rec.seed;
  j["slope_sd"] = rec.slope_sd;
  j["slope_co"] = rec.slope_co;
  j["residual_sd"] = rec.residual_sd;
  j["residual_co"] = rec.residual_co;
  j["coefficients"] = coeff_json(rec.coefficients);
  json pts = json::array();
  for (std::size_t i = 0; i < rec.points.size(); ++i) {
    const CalibrationPoint& p = rec.points[i];
    const AbstractRates& r = rec.rates.at(i);
    pts.push_back({{"eps_g", p.eps_g},
                   {"rate_two_out", p.rate_two_out},
                   {"rate_two_out_ci", {p.ci_two.low, p.ci_two.high}},
                   {"rate_one_out", p.rate_one_out},
                   {"rate_one_out_ci", {p.ci_one.low, p.ci_one.high}},
                   {"two_out_by_position", p.two_by_position},
                   {"one_out_by_position", p.one_by_position},
                   {"eps_s", r.eps_s},
                   {"eps_o", r.eps_o},
                   {"eps_c", r.eps_c},
                   {"eps_d", r.eps_d}});
  }
  j["points"] = pts;
  j["warnings"] = rec.warnings;
  return j;
}

RateCoefficients coefficients_from_calibration_json(const json& j) {
  try {
    return coeff_from(j.at("coefficients"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("calibration record: ") + e.what());
  }
}

CalibrationOptions calibration_options(const SweepConfig& c, int threads) {
  CalibrationOptions o;
  o.shots = c.calibration_shots;
  o.seed = c.master_seed;
  o.ancilla = c.ancilla;
  o.include_meas_error = c.include_meas_error;
  o.retry_cap = c.retry_cap;
  o.threads = threads;
  return o;
}

RateCoefficients resolve_coefficients(const SweepConfig& c, int threads) {
  switch (c.rate_source) {
    case RateSource::kReference:
      return reference_coefficients();
    case RateSource::kExplicit:
      return c.coefficients;
    case RateSource::kCalibrated:
      break;
  }
  if (!c.calibration_file.empty()) {
    std::ifstream in(c.calibration_file);
    if (!in) throw ConfigError("cannot open calibration file: " + c.calibration_file);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError("calibration file: " + std::string(e.what()));
    }
    return coefficients_from_calibration_json(j);
  }
  return calibrate(c.calibration_eps_g, calibration_options(c, threads), c.normalization).coefficients;
}

std::vector<SweepRow> run_sweep(const SweepConfig& c, const RateCoefficients& k, int threads) {
  c.validate();
  std::vector<SweepRow> rows;
  std::uint64_t index = 0;
  for (double eg : c.eps_g) {
    for (double ea : c.eps_a) {
      AbstractRates r = rates_at(k, eg, ea);
      ApproxCoefficients ac = approx_coefficients(r, c.N);
      for (int m : c.m) {
        TrajectoryConfig t;
        t.schedule = {c.N, m};
        t.eps_a = ea;
        t.noise = make_noise(1.5 * eg, c.include_meas_error);
        t.shots = c.shots;
        t.seed = derive_seed(c.master_seed, index++);
        t.ancilla = c.ancilla;
        t.retry_cap = c.retry_cap;
        McEstimate est = estimate_pl_mc(t, threads);
        PlFormula f = pl_second_order(r, t.schedule);
        rows.push_back({eg, ea, m, c.N, t.schedule.B(), est.shots, est.failures, est.p_hat, est.ci.low, est.ci.high,
                        f.value, pl_approx(ac, m), t.seed, f.clamped});
      }
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_double(r.eps_g) << ',' << format_double(r.eps_a) << ',' << r.m << ',' << r.N << ',' << r.B << ','
        << r.shots << ',' << r.failures << ',' << format_double(r.p_l_mc) << ',' << format_double(r.ci_low) << ','
        << format_double(r.ci_high) << ',' << format_double(r.p_l_formula) << ',' << format_double(r.p_l_approx)
        << ',' << r.seed << '\n';
  }
  return out.str();
}

std::vector<MminRow> run_mmin(const SweepConfig& c, const RateCoefficients& k) {
  c.validate();
  std::vector<MminRow> rows;
  for (double eg : c.eps_g) {
    for (double ea : c.eps_a) {
      AbstractRates r = rates_at(k, eg, ea);
      rows.push_back({eg, ea, d_over_c1(r), m_min(r), grid_argmin(r, c.N, c.m)});
    }
  }
  return rows;
}

std::string mmin_csv(const std::vector<MminRow>& rows) {
  std::ostringstream out;
  out << "eps_g,eps_a,d_over_c1,m_min,grid_argmin\n";
  for (const MminRow& r : rows)
    out << format_double(r.eps_g) << ',' << format_double(r.eps_a) << ',' << format_double(r.d_over_c1) << ','
        << r.m_min << ',' << r.grid_argmin << '\n';
  return out.str();
}

namespace {

bool close_rel(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

CheckResult check_gamma() {
  int bad = 0;
  for (int B = 1; B <= 200; ++B) {
    for (int k = 0; k <= 99; ++k) {
      double a = k / 100.0;
      double g = 0.0, g3 = 0.0, p = 1.0;
      for (int f = 1; f <= B - 1; ++f) {
        p *= a;
        g += p * (B - f);
        g3 += p * (B - f - 1);
      }
      if (!close_rel(gamma(B, a), g, 1e-12) || !close_rel(gamma3(B, a), g3, 1e-12)) ++bad;
    }
  }
  return {"gamma/gamma3 closed forms", bad == 0, std::to_string(bad) + " mismatches over 20000 cases"};
}

std::vector<AbstractRates> sample_rates() {
  std::vector<AbstractRates> out;
  for (double ea : {0.0, 0.3, 0.5}) {
    out.push_back(rates_at(reference_coefficients(), 1e-4, ea));
    AbstractRates r;
    r.eps_g = 1e-3, r.eps_a = ea, r.eps_s = 7e-4, r.eps_o = 2e-4, r.eps_c = 5e-4, r.eps_d = 3e-4;
    out.push_back(r);
  }
  return out;
}

CheckResult check_table_sum() {
  int bad = 0;
  for (const AbstractRates& r : sample_rates()) {
    for (int m : {1, 2, 5}) {
      Schedule s{10 * m, m};
      double sum = 0.0;
      for (const TableTerm& t : table_contributions(r, s)) sum += t.value;
      if (sum != pl_second_order(r, s).raw) ++bad;
    }
  }
  return {"table contributions sum", bad == 0, std::to_string(bad) + " mismatches"};
}

CheckResult check_oracle() {
  int bad = 0;
  double worst = 0.0;
  for (const AbstractRates& r : sample_rates()) {
    for (int B : {1, 2, 3, 5, 10}) {
      for (int m : {1, 2, 5}) {
        Schedule s{B * m, m};
        double f = pl_second_order(r, s).raw;
        double o = pairwise_fault_oracle(r, s);
        double rel = std::abs(f - o) / std::max(std::abs(f), 1e-300);
        worst = std::max(worst, rel);
        if (rel > 1e-6) ++bad;
      }
    }
  }
  return {"pairwise oracle vs formula", bad == 0, "max relative deviation " + format_double(worst)};
}

CheckResult check_code(const CodeDefinition& code) {
  std::string why;
  try {
    for (unsigned b = 0; b < 128 && why.empty(); ++b) {
      ErrorPattern e = ErrorPattern::from_bits(b);
      QecOutcome out = code.apply_ideal_qec(e);
      if (e.weight() <= 1 && !out.residual.empty()) why = "pattern " + e.to_string() + " not corrected";
      if (e.weight() == 2 && (!out.logical || out.residual.weight() != 3))
        why = "weight-2 pattern " + e.to_string() + " does not give a weight-3 logical residual";
      for (unsigned g = 0; g < 128 && why.empty(); ++g) {
        ErrorPattern s = ErrorPattern::from_bits(g);
        if (code.syndrome(s) != 0 || s.weight() % 2) continue;
        QecOutcome shifted = code.apply_ideal_qec(e ^ s);
        if (code.syndrome(e ^ s) != code.syndrome(e) || shifted.logical != out.logical)
          why = "stabilizer " + s.to_string() + " changes the outcome of " + e.to_string();
      }
    }
  } catch (const std::exception& ex) {
    why = ex.what();
  }
  return {"steane code exhaustive", why.empty(), why.empty() ? "128 patterns" : why};
}

CheckResult check_audit(const AncillaCircuit& c) {
  try {
    AuditReport rep = audit_single_faults(c);
    std::string detail = std::to_string(rep.faults_checked) + " faults, " + std::to_string(rep.violations.size()) +
                         " violations" + (rep.noiseless_ok ? "" : ", noiseless run fails");
    return {"single-fault audit " + c.name, rep.passed(), detail};
  } catch (const std::exception& ex) {
    return {"single-fault audit " + c.name, false, ex.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_self_checks(const CheckInputs& in) {
  std::vector<CheckResult> out = {check_gamma(), check_table_sum(), check_oracle(), check_code(in.code)};
  for (const AncillaCircuit& c : in.circuits) out.push_back(check_audit(c));
  return out;
}

}  // namespace cadence
