#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace cadence {

// splitmix64 finalizer; used to derive independent per-stream seeds.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // 53-bit uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  int below(int n) { return static_cast<int>(uniform() * n); }

  // Number of failed Bernoulli(p) trials before the first success.
  std::uint64_t geometric(double p) {
    if (p <= 0.0) return std::numeric_limits<std::uint64_t>::max();
    if (p >= 1.0) return 0;
    double u = 1.0 - uniform();  // (0, 1]
    double g = std::floor(std::log(u) / std::log1p(-p));
    if (g >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(g);
  }

 private:
  std::mt19937_64 engine_;
};

struct NoiseParams {
  double eps = 0.0;     // depolarizing strength per gate
  double p_meas = 0.0;  // classical flip on each measurement outcome

  double eps_g() const { return 2.0 * eps / 3.0; }
  // X-component probability of each of the three CNOT classes
  // (control only, target only, both).
  double cnot_class() const { return 4.0 * eps / 15.0; }
};

// Measurement flips default to the single-qubit bit-flip rate 2*eps/3.
NoiseParams make_noise(double eps, bool include_meas_error = true);

struct BitErrorRates {
  double eps_g = 0.0;  // X-component rate of a single-qubit depolarizing fault
  double eps_c = 0.0;  // CNOT fault with X on the control only
  double eps_d = 0.0;  // CNOT fault with X on both qubits
};

BitErrorRates bit_error_rates(double eps);

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

constexpr bool has_x(Pauli p) { return p == Pauli::X || p == Pauli::Y; }

struct TwoQubitPauli {
  Pauli control = Pauli::I;
  Pauli target = Pauli::I;
  // 0 for II, otherwise 1..15 in (control, target) lexicographic order.
  int index() const { return 4 * static_cast<int>(control) + static_cast<int>(target); }
};

struct XFault {
  bool control = false;
  bool target = false;
};

// One depolarizing draw: with probability eps one of the 15 non-identity
// two-qubit Paulis uniformly, else II.
TwoQubitPauli sample_two_qubit_pauli(Rng& rng, double eps);
XFault sample_two_qubit_fault(Rng& rng, double eps);
// With probability eps one of X, Y, Z uniformly; reports only the X component.
bool sample_one_qubit_fault(Rng& rng, double eps);

}  // namespace cadence
