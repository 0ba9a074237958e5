#include "cadence/noise.hpp"

#include <stdexcept>

namespace cadence {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix_seed(mix_seed(master) ^ (stream * 0xD1B54A32D192ED03ull));
}

static void check_eps(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in [0, 1]");
}

NoiseParams make_noise(double eps, bool include_meas_error) {
  check_eps(eps);
  NoiseParams n;
  n.eps = eps;
  n.p_meas = include_meas_error ? 2.0 * eps / 3.0 : 0.0;
  return n;
}

BitErrorRates bit_error_rates(double eps) {
  check_eps(eps);
  BitErrorRates r;
  r.eps_g = 2.0 * eps / 3.0;
  r.eps_c = 4.0 * eps / 15.0;
  r.eps_d = 4.0 * eps / 15.0;
  return r;
}

TwoQubitPauli sample_two_qubit_pauli(Rng& rng, double eps) {
  TwoQubitPauli p;
  if (!rng.bernoulli(eps)) return p;
  int k = 1 + rng.below(15);
  p.control = static_cast<Pauli>(k / 4);
  p.target = static_cast<Pauli>(k % 4);
  return p;
}

XFault sample_two_qubit_fault(Rng& rng, double eps) {
  TwoQubitPauli p = sample_two_qubit_pauli(rng, eps);
  return {has_x(p.control), has_x(p.target)};
}

bool sample_one_qubit_fault(Rng& rng, double eps) {
  if (!rng.bernoulli(eps)) return false;
  return has_x(static_cast<Pauli>(1 + rng.below(3)));
}

}  // namespace cadence
