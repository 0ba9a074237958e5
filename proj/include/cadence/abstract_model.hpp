#pragma once

#include <string>
#include <vector>

#include "cadence/fault_sim.hpp"

namespace cadence {

// Per-qubit rates of the abstract error model. Gate errors eps_g occur on each
// qubit at each logical gate; the rest are per-qubit rates of a performed QEC.
struct AbstractRates {
  double eps_g = 0.0;
  double eps_a = 0.0;  // probability that a QEC is skipped
  double eps_s = 0.0;  // syndrome error: wrong correction applied
  double eps_o = 0.0;  // omission: an existing error goes uncorrected
  double eps_c = 0.0;  // correction error: fresh error after extraction
  double eps_d = 0.0;  // double error: self-correcting on its own

  void validate() const;
};

struct ApproxCoefficients {
  double d = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
};

// sum_{f=1}^{B-1} eps_a^f (B - f): pairs of blocks separated by f skipped QECs.
double gamma(int B, double eps_a);
// sum_{f=1}^{B-1} eps_a^f (B - f - 1): spans that start with a QEC error.
double gamma3(int B, double eps_a);

struct PlFormula {
  double value = 0.0;  // clamped to [0, 1]
  double raw = 0.0;
  bool clamped = false;
};

struct TableTerm {
  int table;  // 1..4
  int row;    // 1-based within the table
  std::string label;
  double value;
};

// One entry per row of the four pair tables, already multiplied by 42.
std::vector<TableTerm> table_contributions(const AbstractRates& r, const Schedule& s);
PlFormula pl_second_order(const AbstractRates& r, const Schedule& s);

ApproxCoefficients approx_coefficients(const AbstractRates& r, double scale);
double pl_approx(const ApproxCoefficients& c, int m);
// d / c1; independent of the scale factor.
double d_over_c1(const AbstractRates& r);
int m_min(const AbstractRates& r);

// Sums the probabilities of every unordered pair of elementary faults that
// leaves two uncorrected data errors, enumerated explicitly over the block
// timeline.
double pairwise_fault_oracle(const AbstractRates& r, const Schedule& s);
inline constexpr long kOracleLocationCap = 10000;

int grid_argmin(const AbstractRates& r, int N, const std::vector<int>& m_grid);

}  // namespace cadence
