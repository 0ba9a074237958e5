#pragma once

// Test-side reference computations. Nothing here reuses the library's
// propagation or sampling code; only the circuit description is shared.

#include <array>
#include <vector>

#include "cadence/abstract_model.hpp"
#include "cadence/ancilla.hpp"
#include "cadence/noise.hpp"

namespace oracle {

using Dist128 = std::array<double, 128>;
using Matrix128 = std::vector<std::array<double, 128>>;  // [from][to]

// Exact one-round map of a noisy QEC: out[e][e'] = P(e -> e').
Matrix128 qec_transfer(const cadence::AncillaCircuit& c, const cadence::NoiseParams& noise);

// Exact logical failure probability of a whole trajectory, with a final ideal
// decode, by iterating the 128-state transfer matrix.
double exact_pl(const cadence::AncillaCircuit& c, const cadence::NoiseParams& noise, int N, int m, double eps_a);

// All QECs skipped: independent per-qubit flip parity over N gates.
double all_skipped_pl(double eps_g, int N);

// Logical class after an ideal decode, computed from first principles.
bool decodes_to_logical(unsigned pattern);

// Exact per-position calibration rates at physical eps.
struct PositionRates {
  std::array<double, 7> two_out;
  std::array<double, 7> one_out;
  double two_mean() const;
  double one_mean() const;
};
PositionRates exact_position_rates(const cadence::AncillaCircuit& c, const cadence::NoiseParams& noise);
// Per-round logical probability starting from clean data.
double exact_clean_logical(const cadence::AncillaCircuit& c, const cadence::NoiseParams& noise);

// The bracketed second-order expression as printed, with gamma3 as
// (gamma - (B-1) eps_a) / eps_a and gamma by direct summation.
double printed_formula(const cadence::AbstractRates& r, int N, int m);

double gamma_direct(int B, double a);
double gamma3_direct(int B, double a);

// Dense real statevector check: runs the circuit from |0...0>, returns the
// probability that any measurement reads 1 and the overlap |<target|psi>|^2
// with the target logical state on the code block (other qubits in |0>).
struct StateCheck {
  double reject_probability;
  double fidelity;
};
StateCheck statevector_check(const cadence::AncillaCircuit& c);

}  // namespace oracle
