#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cadence/ancilla.hpp"
#include "cadence/noise.hpp"
#include "cadence/steane.hpp"

namespace cadence {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval for k successes in n trials.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = kZ95);

// One QEC block: m noisy one-qubit gates on every data qubit, then a QEC
// round that is skipped with probability eps_a. N = B * m gates in total.
struct Schedule {
  int N = 0;
  int m = 0;
  int B() const { return N / m; }
  void validate() const;
};

// Holds the circuit and noise. Draws every fault location individually;
// this is the reference the fast sampler is checked against.
class FaultSimulator {
 public:
  FaultSimulator(AncillaCircuit ancilla, NoiseParams noise, int retry_cap = kDefaultRetryCap);

  const AncillaCircuit& ancilla() const { return ancilla_; }
  const NoiseParams& noise() const { return noise_; }
  int retry_cap() const { return retry_cap_; }
  const std::vector<CompiledLocation>& compiled() const { return compiled_; }

  ErrorPattern gate_block(ErrorPattern data, int m, Rng& rng) const;
  // Steane X-syndrome extraction: fresh verified |+_L> ancilla, transversal
  // CNOT data -> ancilla, Z measurement of all 7 ancilla qubits, correction.
  ErrorPattern qec_round(ErrorPattern data, Rng& rng, bool skip = false) const;
  // True when the data carries a logical error after a final ideal decode.
  bool run_trajectory(const Schedule& s, double eps_a, Rng& rng) const;

 private:
  AncillaCircuit ancilla_;
  NoiseParams noise_;
  int retry_cap_;
  std::vector<CompiledLocation> compiled_;
};

// Same process as FaultSimulator, but jumps between fault locations with
// geometric gaps (thinned to each location's own rate) and applies
// precompiled fault effects. One instance per thread.
class SkipSampler {
 public:
  SkipSampler(const FaultSimulator& sim, Rng& rng);

  ErrorPattern gate_block(ErrorPattern data, int m);
  ErrorPattern qec_round(ErrorPattern data, bool skip = false);
  bool run_trajectory(const Schedule& s, double eps_a);

 private:
  unsigned gates(unsigned data, int m);
  unsigned round(unsigned data);
  bool fires(double p) { return p >= p_max_ || rng_.uniform() * p_max_ < p; }
  template <class F>
  void segment(std::uint64_t len, F&& on_candidate);

  const FaultSimulator& sim_;
  Rng& rng_;
  double p_one_, p_two_, p_meas_, p_max_;
  std::uint64_t next_ = 0;  // locations to pass before the next candidate
};

enum class Kernel { kDirect, kSkipSampling };

struct McEstimate {
  std::uint64_t shots = 0;
  std::uint64_t failures = 0;
  double p_hat = 0.0;
  Interval ci;
};

struct TrajectoryConfig {
  Schedule schedule;
  double eps_a = 0.0;
  NoiseParams noise;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::string ancilla = "plus_encoder";
  Kernel kernel = Kernel::kSkipSampling;
  int retry_cap = kDefaultRetryCap;
};

// Trajectories are grouped into fixed chunks, each with its own seeded
// stream, so the failure count does not depend on `threads`.
McEstimate estimate_pl_mc(const TrajectoryConfig& cfg, int threads = 1);

inline constexpr std::uint64_t kChunkSize = 1024;

// Runs fn(chunk_index) for chunk_index in [0, chunks) on `threads` workers.
// Exceptions from workers are rethrown on the caller.
void parallel_chunks(std::uint64_t chunks, int threads, const std::function<void(std::uint64_t)>& fn);

int default_threads();

}  // namespace cadence
