#include "cadence/abstract_model.hpp"

#include <cmath>
#include <stdexcept>

namespace cadence {

void AbstractRates::validate() const {
  for (double v : {eps_g, eps_a, eps_s, eps_o, eps_c, eps_d})
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("abstract rates must lie in [0, 1]");
  if (eps_a >= 1.0) throw std::domain_error("eps_a must be strictly below 1");
}

namespace {

void check_gamma_args(int B, double eps_a) {
  if (B < 1) throw std::invalid_argument("B must be positive");
  if (!(eps_a >= 0.0)) throw std::invalid_argument("eps_a must be nonnegative");
  if (eps_a >= 1.0) throw std::domain_error("eps_a must be strictly below 1");
}

// n(1-a) - (1 - a^n), evaluated without cancelling 1 against a^n.
double geometric_excess(int n, double a) {
  double u = 1.0 - a;
  double one_minus_pow = -std::expm1(n * std::log1p(-u));
  return n * u - one_minus_pow;
}

}  // namespace

// Closed form (B a(1-a) - a + a^{B+1}) / (1-a)^2 = a [B(1-a) - (1 - a^B)] / (1-a)^2.
double gamma(int B, double eps_a) {
  check_gamma_args(B, eps_a);
  if (B == 1 || eps_a == 0.0) return 0.0;
  double u = 1.0 - eps_a;
  return eps_a * geometric_excess(B, eps_a) / (u * u);
}

// Closed form (a / (1-a)^2) (B(1-a) - 2 + a + a^{B-1}).
double gamma3(int B, double eps_a) {
  check_gamma_args(B, eps_a);
  if (B <= 2 || eps_a == 0.0) return 0.0;
  double u = 1.0 - eps_a;
  return eps_a * geometric_excess(B - 1, eps_a) / (u * u);
}

std::vector<TableTerm> table_contributions(const AbstractRates& r, const Schedule& s) {
  r.validate();
  s.validate();
  const double B = s.B();
  const double G = s.m * r.eps_g;
  const double pa = 1.0 - r.eps_a;
  const double sd = r.eps_s + r.eps_d;
  const double so = r.eps_s + r.eps_o;
  const double c = r.eps_c;
  const double g = gamma(s.B(), r.eps_a);
  const double g3 = gamma3(s.B(), r.eps_a);

  std::vector<TableTerm> t = {
      {1, 1, "two gate errors in one block", B * G * G / 2.0},
      {1, 2, "gate error + syndrome/double error", B * pa * G * sd},
      {1, 3, "double error + syndrome/double error", B * pa * r.eps_d * (r.eps_s + r.eps_d / 2.0)},
      {1, 4, "syndrome/omission error + correction error", B * pa * so * c},
      {1, 5, "two correction errors", B * pa * c * c / 2.0},
      {2, 1, "syndrome/omission error, then gate error", (B - 1) * pa * so * G},
      {2, 2, "syndrome/omission error, then syndrome/double error", (B - 1) * pa * pa * so * sd},
      {2, 3, "correction error, then gate error", (B - 1) * pa * c * G},
      {2, 4, "correction error, then syndrome/double error", (B - 1) * pa * pa * c * sd},
      {3, 1, "gate errors across skipped QECs", g * G * G},
      {3, 2, "gate error, skipped QECs, syndrome/double error", g * pa * G * sd},
      {4, 1, "syndrome/omission error, skipped QECs, gate error", g3 * pa * so * G},
      {4, 2, "syndrome/omission error, skipped QECs, syndrome/double error", g3 * pa * pa * so * sd},
      {4, 3, "correction error, skipped QECs, gate error", g3 * pa * c * G},
      {4, 4, "correction error, skipped QECs, syndrome/double error", g3 * pa * pa * c * sd},
  };
  for (TableTerm& x : t) x.value *= 42.0;
  return t;
}

PlFormula pl_second_order(const AbstractRates& r, const Schedule& s) {
  PlFormula out;
  for (const TableTerm& t : table_contributions(r, s)) out.raw += t.value;
  out.value = out.raw;
  if (out.raw > 1.0) {
    out.value = 1.0;
    out.clamped = true;
  } else if (out.raw < 0.0) {
    out.value = 0.0;
    out.clamped = true;
  }
  return out;
}

ApproxCoefficients approx_coefficients(const AbstractRates& r, double scale) {
  r.validate();
  if (!(scale >= 1.0)) throw std::invalid_argument("scale must be at least 1");
  const double q = r.eps_c * (r.eps_s + r.eps_o + r.eps_c / 2.0) + r.eps_d * (r.eps_s + r.eps_d / 2.0);
  const double k = q + (r.eps_s + r.eps_d) * (r.eps_c + r.eps_s + r.eps_o);
  ApproxCoefficients c;
  c.d = 42.0 * scale * (1.0 - r.eps_a) * k;
  c.c0 = 42.0 * scale * r.eps_g * (r.eps_c + 2.0 * r.eps_s + r.eps_o + r.eps_d);
  c.c1 = 42.0 * scale * r.eps_g * r.eps_g * (1.0 / (1.0 - r.eps_a) - 0.5);
  return c;
}

double pl_approx(const ApproxCoefficients& c, int m) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  return c.d / m + c.c0 + c.c1 * m;
}

double d_over_c1(const AbstractRates& r) {
  ApproxCoefficients c = approx_coefficients(r, 1.0);
  if (!(c.c1 > 0.0)) throw std::invalid_argument("m_min needs c1 > 0 (eps_g must be positive)");
  return c.d / c.c1;
}

// d/m + c1 m is no larger than its neighbours iff m(m-1) <= d/c1 <= m(m+1);
// the bracket below is the root of that pair. Equality picks the smaller m.
int m_min(const AbstractRates& r) {
  const double ratio = d_over_c1(r);
  if (ratio == 0.0) return 1;
  const double x = std::sqrt(0.25 + ratio) - 0.5;
  double m = std::floor(x) + 1.0;
  while (m > 1.0 && ratio <= (m - 1.0) * m) m -= 1.0;
  while (ratio > m * (m + 1.0)) m += 1.0;
  return static_cast<int>(m);
}

namespace {

enum class Ev { kGate, kSyndrome, kDouble, kOmission, kCorrection };

struct Fault {
  int block;
  Ev kind;
  int qubit;
  double p;
};

bool leaves_error(Ev k) { return k == Ev::kSyndrome || k == Ev::kOmission || k == Ev::kCorrection; }
bool miscorrects(Ev k) { return k == Ev::kSyndrome || k == Ev::kDouble; }

// Pairs inside one QEC that leave two data errors.
bool same_qec_pair(Ev a, Ev b) {
  auto is = [&](Ev x, Ev y) { return (a == x && b == y) || (a == y && b == x); };
  return is(Ev::kDouble, Ev::kSyndrome) || is(Ev::kDouble, Ev::kDouble) || is(Ev::kSyndrome, Ev::kCorrection) ||
         is(Ev::kOmission, Ev::kCorrection) || is(Ev::kCorrection, Ev::kCorrection);
}

}  // namespace

double pairwise_fault_oracle(const AbstractRates& r, const Schedule& s) {
  r.validate();
  s.validate();
  const int B = s.B();
  const long locations = 7L * B * (s.m + 4);
  if (static_cast<long>(B) * s.m > kOracleLocationCap || locations > kOracleLocationCap)
    throw std::length_error("pairwise_fault_oracle: too many elementary fault locations");

  // Time order: the m gates of block i, then the QEC of block i.
  std::vector<Fault> faults;
  faults.reserve(locations);
  for (int b = 0; b < B; ++b) {
    for (int g = 0; g < s.m; ++g)
      for (int q = 0; q < kNumQubits; ++q) faults.push_back({b, Ev::kGate, q, r.eps_g});
    for (int q = 0; q < kNumQubits; ++q) {
      faults.push_back({b, Ev::kSyndrome, q, r.eps_s});
      faults.push_back({b, Ev::kDouble, q, r.eps_d});
      faults.push_back({b, Ev::kOmission, q, r.eps_o});
      faults.push_back({b, Ev::kCorrection, q, r.eps_c});
    }
  }

  const double skip = r.eps_a;
  const double done = 1.0 - r.eps_a;
  std::vector<double> skip_pow(B + 1, 1.0);
  for (int k = 1; k <= B; ++k) skip_pow[k] = skip_pow[k - 1] * skip;

  double total = 0.0;
  for (std::size_t i = 0; i < faults.size(); ++i) {
    const Fault& x = faults[i];
    if (x.p == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = i + 1; j < faults.size(); ++j) {
      const Fault& y = faults[j];
      if (y.qubit == x.qubit || y.p == 0.0) continue;
      double w = 0.0;
      if (x.kind == Ev::kGate) {
        // x is corrected by the first performed QEC at or after its block,
        // unless y lands first or corrupts that same QEC.
        int skipped = y.block - x.block;  // QECs x.block .. y.block-1
        if (y.kind == Ev::kGate)
          w = skip_pow[skipped];
        else if (miscorrects(y.kind))
          w = skip_pow[skipped] * done;
      } else if (y.block == x.block) {
        if (same_qec_pair(x.kind, y.kind)) w = done;
      } else if (leaves_error(x.kind)) {
        int skipped = y.block - x.block - 1;  // QECs x.block+1 .. y.block-1
        if (y.kind == Ev::kGate)
          w = done * skip_pow[skipped];
        else if (miscorrects(y.kind))
          w = done * skip_pow[skipped] * done;
      }
      row += w * y.p;
    }
    total += x.p * row;
  }
  return total;
}

int grid_argmin(const AbstractRates& r, int N, const std::vector<int>& m_grid) {
  if (m_grid.empty()) throw std::invalid_argument("grid_argmin: empty m grid");
  int best = 0;
  double best_val = 0.0;
  for (int m : m_grid) {
    Schedule s{N, m};
    s.validate();
    double v = pl_second_order(r, s).raw;
    if (best == 0 || v < best_val || (v == best_val && m < best)) {
      best = m;
      best_val = v;
    }
  }
  return best;
}

}  // namespace cadence
