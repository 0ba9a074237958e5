#include "cadence/fault_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace cadence {

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) throw std::invalid_argument("wilson_interval needs at least one trial");
  if (k > n) throw std::invalid_argument("wilson_interval: successes exceed trials");
  double nn = static_cast<double>(n);
  double p = static_cast<double>(k) / nn;
  double z2 = z * z;
  double denom = 1.0 + z2 / nn;
  double centre = (p + z2 / (2.0 * nn)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // The bounds are exactly 0 and 1 at the edges; avoid rounding residue there.
  return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

void Schedule::validate() const {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (N % m != 0) throw std::invalid_argument("m must divide N");
}

static void check_eps_a(double eps_a) {
  if (!(eps_a >= 0.0 && eps_a <= 1.0)) throw std::invalid_argument("eps_a must lie in [0, 1]");
}

FaultSimulator::FaultSimulator(AncillaCircuit ancilla, NoiseParams noise, int retry_cap)
    : ancilla_(std::move(ancilla)), noise_(noise), retry_cap_(retry_cap) {
  if (ancilla_.target != LogicalState::kPlus)
    throw std::invalid_argument(ancilla_.name + ": X-syndrome extraction needs a |+_L> ancilla");
  if (retry_cap_ < 1) throw std::invalid_argument("retry cap must be positive");
  compiled_ = compile_effects(ancilla_);
}

ErrorPattern FaultSimulator::gate_block(ErrorPattern data, int m, Rng& rng) const {
  for (int j = 0; j < m; ++j)
    for (int q = 1; q <= kNumQubits; ++q)
      if (sample_one_qubit_fault(rng, noise_.eps)) data.flip(q);
  return data;
}

ErrorPattern FaultSimulator::qec_round(ErrorPattern data, Rng& rng, bool skip) const {
  if (skip) return data;
  unsigned word = prepare_verified_ancilla(ancilla_, rng, noise_, retry_cap_).bits();
  unsigned d = data.bits();
  for (int q = 0; q < kNumQubits; ++q) {
    word ^= d & (1u << q);
    XFault f = sample_two_qubit_fault(rng, noise_.eps);
    if (f.control) d ^= 1u << q;
    if (f.target) word ^= 1u << q;
  }
  for (int q = 0; q < kNumQubits; ++q)
    if (rng.bernoulli(noise_.p_meas)) word ^= 1u << q;
  d ^= correction_bits(kSyndromeTable[word]);
  return ErrorPattern::from_bits(d);
}

bool FaultSimulator::run_trajectory(const Schedule& s, double eps_a, Rng& rng) const {
  s.validate();
  check_eps_a(eps_a);
  ErrorPattern data;
  for (int b = 0; b < s.B(); ++b) {
    data = gate_block(data, s.m, rng);
    data = qec_round(data, rng, rng.bernoulli(eps_a));
  }
  return apply_ideal_qec(data).logical;
}

SkipSampler::SkipSampler(const FaultSimulator& sim, Rng& rng) : sim_(sim), rng_(rng) {
  const NoiseParams& n = sim.noise();
  p_one_ = n.eps_g();
  p_two_ = 3.0 * n.cnot_class();
  p_meas_ = n.p_meas;
  p_max_ = std::max({p_one_, p_two_, p_meas_});
  next_ = rng_.geometric(p_max_);
}

template <class F>
void SkipSampler::segment(std::uint64_t len, F&& on_candidate) {
  constexpr std::uint64_t kFar = std::uint64_t{1} << 62;
  while (next_ < len) {
    on_candidate(next_);
    next_ += 1 + std::min(rng_.geometric(p_max_), kFar);
  }
  next_ -= len;
}

unsigned SkipSampler::gates(unsigned data, int m) {
  segment(static_cast<std::uint64_t>(kNumQubits) * m, [&](std::uint64_t o) {
    if (fires(p_one_)) data ^= 1u << (o % kNumQubits);
  });
  return data;
}

unsigned SkipSampler::round(unsigned data) {
  const auto& locs = sim_.compiled();
  unsigned anc = 0;
  std::uint32_t outcomes = 0;
  int attempts = 0;
  do {
    if (++attempts > sim_.retry_cap())
      throw SimulationAbort(sim_.ancilla().name + ": ancilla verification rejected " +
                            std::to_string(sim_.retry_cap()) + " consecutive attempts");
    anc = 0;
    outcomes = 0;
    segment(locs.size(), [&](std::uint64_t o) {
      const CompiledLocation& loc = locs[o];
      const FaultEffect* e = nullptr;
      switch (loc.cls) {
        case LocationClass::kOneQubit:
          if (fires(p_one_)) e = &loc.effects[0];
          break;
        case LocationClass::kTwoQubit:
          if (fires(p_two_)) e = &loc.effects[rng_.below(3)];
          break;
        case LocationClass::kMeasure:
          if (fires(p_meas_)) e = &loc.effects[0];
          break;
      }
      if (e) {
        anc ^= e->pattern;
        outcomes ^= e->outcomes;
      }
    });
  } while (outcomes != 0);

  unsigned word = anc ^ data;
  // 7 transversal CNOTs, then 7 ancilla measurements.
  segment(2 * kNumQubits, [&](std::uint64_t o) {
    if (o < kNumQubits) {
      if (!fires(p_two_)) return;
      int k = rng_.below(3);
      if (k != 1) data ^= 1u << o;
      if (k != 0) word ^= 1u << o;
    } else if (fires(p_meas_)) {
      word ^= 1u << (o - kNumQubits);
    }
  });
  return data ^ correction_bits(kSyndromeTable[word]);
}

ErrorPattern SkipSampler::gate_block(ErrorPattern data, int m) { return ErrorPattern::from_bits(gates(data.bits(), m)); }

ErrorPattern SkipSampler::qec_round(ErrorPattern data, bool skip) {
  if (skip) return data;
  return ErrorPattern::from_bits(round(data.bits()));
}

bool SkipSampler::run_trajectory(const Schedule& s, double eps_a) {
  s.validate();
  check_eps_a(eps_a);
  std::uint64_t until_skip = rng_.geometric(eps_a);  // rounds performed before the next skip
  unsigned data = 0;
  const int blocks = s.B();
  for (int b = 0; b < blocks; ++b) {
    data = gates(data, s.m);
    if (until_skip == 0) {
      until_skip = rng_.geometric(eps_a);
      continue;
    }
    --until_skip;
    data = round(data);
  }
  return __builtin_popcount(ideal_correct_bits(data)) % 2 == 1;
}

int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_chunks(std::uint64_t chunks, int threads, const std::function<void(std::uint64_t)>& fn) {
  if (threads < 1) throw std::invalid_argument("thread count must be positive");
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        fn(c);
      } catch (...) {
        std::lock_guard<std::mutex> lk(error_mu);
        if (!error) error = std::current_exception();
        stop.store(true);
        return;
      }
    }
  };
  int n = static_cast<int>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

McEstimate estimate_pl_mc(const TrajectoryConfig& cfg, int threads) {
  cfg.schedule.validate();
  check_eps_a(cfg.eps_a);
  if (cfg.shots == 0) throw std::invalid_argument("shots must be positive");
  FaultSimulator sim(ancilla_circuit_by_name(cfg.ancilla), cfg.noise, cfg.retry_cap);

  std::uint64_t chunks = (cfg.shots + kChunkSize - 1) / kChunkSize;
  std::vector<std::uint64_t> fails(chunks, 0);
  parallel_chunks(chunks, threads, [&](std::uint64_t c) {
    Rng rng(derive_seed(cfg.seed, c));
    std::uint64_t begin = c * kChunkSize;
    std::uint64_t end = std::min(cfg.shots, begin + kChunkSize);
    std::uint64_t k = 0;
    if (cfg.kernel == Kernel::kDirect) {
      for (std::uint64_t i = begin; i < end; ++i) k += sim.run_trajectory(cfg.schedule, cfg.eps_a, rng);
    } else {
      SkipSampler sampler(sim, rng);
      for (std::uint64_t i = begin; i < end; ++i) k += sampler.run_trajectory(cfg.schedule, cfg.eps_a);
    }
    fails[c] = k;
  });

  McEstimate est;
  est.shots = cfg.shots;
  for (std::uint64_t k : fails) est.failures += k;
  est.p_hat = static_cast<double>(est.failures) / static_cast<double>(cfg.shots);
  est.ci = wilson_interval(est.failures, cfg.shots);
  return est;
}

}  // namespace cadence
