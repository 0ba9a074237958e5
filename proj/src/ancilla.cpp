#include "cadence/ancilla.hpp"

#include <algorithm>

namespace cadence {

namespace {

// 1-based qubit labels in the builders below, 0-based in the circuit.
struct Builder {
  AncillaCircuit c;
  void init_plus(int q) { c.gates.push_back({GateKind::kInitPlus, q - 1}); }
  void init_zero(int q) { c.gates.push_back({GateKind::kInitZero, q - 1}); }
  void wait(int q) { c.gates.push_back({GateKind::kWait, q - 1}); }
  void cnot(int ctl, int tgt) { c.gates.push_back({GateKind::kCnot, ctl - 1, tgt - 1}); }
  void measure(int q) { c.gates.push_back({GateKind::kMeasureZ, q - 1}); }
};

void add_plus_encoder(Builder& b) {
  for (int q : {1, 2, 3, 4}) b.init_plus(q);
  for (int q : {5, 6, 7}) b.init_zero(q);
  // q5 = x2+x3+x4, q6 = x1+x3+x4, q7 = x1+x2+x4
  b.cnot(1, 6), b.cnot(2, 5), b.cnot(4, 7), b.wait(3);
  b.cnot(1, 7), b.cnot(3, 5), b.cnot(4, 6), b.wait(2);
  b.cnot(2, 7), b.cnot(3, 6), b.cnot(4, 5), b.wait(1);
}

}  // namespace

int AncillaCircuit::num_measurements() const {
  return static_cast<int>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::kMeasureZ; }));
}

void AncillaCircuit::validate() const {
  if (num_qubits < kNumQubits || num_qubits > 32) throw std::invalid_argument(name + ": qubit count out of range");
  if (num_measurements() > 32) throw std::invalid_argument(name + ": too many measurements");
  auto in_range = [&](int q) { return q >= 0 && q < num_qubits; };
  for (const Gate& g : gates) {
    if (!in_range(g.a)) throw std::invalid_argument(name + ": gate qubit out of range");
    if (g.kind == GateKind::kCnot && (!in_range(g.b) || g.b == g.a))
      throw std::invalid_argument(name + ": bad CNOT operands");
    if (g.kind == GateKind::kMeasureZ && g.a < kNumQubits)
      throw std::invalid_argument(name + ": code qubits are not measured during preparation");
  }
}

AncillaCircuit steane_plus_encoder() {
  Builder b;
  b.c.name = "plus_encoder";
  b.c.target = LogicalState::kPlus;
  add_plus_encoder(b);
  return b.c;
}

AncillaCircuit steane_plus_verified() {
  Builder b;
  b.c.name = "plus_verified";
  b.c.num_qubits = 8;
  b.c.target = LogicalState::kPlus;
  add_plus_encoder(b);
  b.init_zero(8);
  for (int src : {4, 5, 6, 7}) {
    b.cnot(src, 8);
    for (int q = 1; q <= kNumQubits; ++q)
      if (q != src) b.wait(q);
  }
  b.measure(8);
  return b.c;
}

AncillaCircuit steane_zero_verified() {
  Builder b;
  b.c.name = "zero_verified";
  b.c.num_qubits = 8;
  b.c.target = LogicalState::kZero;
  for (int q : {1, 2, 4}) b.init_plus(q);
  for (int q : {3, 5, 6, 7, 8}) b.init_zero(q);
  // Each pivot fans out to the other members of its stabilizer; the order is
  // chosen so that a weight-2 pattern from a mid-fan-out fault is always
  // caught by Z3 Z4 Z7.
  b.cnot(1, 3), b.cnot(2, 6), b.cnot(4, 7);
  b.cnot(1, 5), b.cnot(2, 7), b.cnot(4, 6);
  b.cnot(1, 7), b.cnot(2, 3), b.cnot(4, 5);
  b.cnot(3, 8), b.cnot(4, 8), b.cnot(7, 8);
  b.measure(8);
  return b.c;
}

AncillaCircuit strip_verification(const AncillaCircuit& c) {
  AncillaCircuit out;
  out.name = c.name + "_unverified";
  out.num_qubits = kNumQubits;
  out.target = c.target;
  for (const Gate& g : c.gates) {
    bool touches = g.a >= kNumQubits || (g.kind == GateKind::kCnot && g.b >= kNumQubits);
    if (!touches) out.gates.push_back(g);
  }
  return out;
}

AncillaCircuit ancilla_circuit_by_name(const std::string& name) {
  if (name == "plus_encoder") return steane_plus_encoder();
  if (name == "plus_verified") return steane_plus_verified();
  if (name == "zero_verified") return steane_zero_verified();
  throw std::invalid_argument("unknown ancilla circuit: " + name);
}

namespace {

// X frame: bit q of `frame` is an X error on qubit q.
struct Frame {
  std::uint32_t frame = 0;
  std::uint32_t outcomes = 0;
  int next_meas = 0;

  void apply(const Gate& g) {
    switch (g.kind) {
      case GateKind::kInitPlus:
      case GateKind::kInitZero:
        frame &= ~(1u << g.a);
        break;
      case GateKind::kWait:
        break;
      case GateKind::kCnot:
        frame ^= ((frame >> g.a) & 1u) << g.b;
        break;
      case GateKind::kMeasureZ:
        outcomes |= ((frame >> g.a) & 1u) << next_meas++;
        break;
    }
  }

  void fault(const Gate& g, bool first, bool second) {
    if (g.kind == GateKind::kMeasureZ) {
      if (first || second) outcomes ^= 1u << (next_meas - 1);
    } else if (g.kind == GateKind::kCnot) {
      if (first) frame ^= 1u << g.a;
      if (second) frame ^= 1u << g.b;
    } else if (first || second) {
      frame ^= 1u << g.a;
    }
  }

  AncillaAttempt result() const {
    return {ErrorPattern::from_bits(frame & kPatternMask), outcomes};
  }
};

}  // namespace

AncillaAttempt run_noiseless(const AncillaCircuit& c, const std::vector<InjectedFault>& faults) {
  Frame f;
  for (int i = 0; i < c.num_locations(); ++i) {
    const Gate& g = c.gates[i];
    f.apply(g);
    for (const InjectedFault& x : faults)
      if (x.location == i) f.fault(g, x.control, x.target);
  }
  for (const InjectedFault& x : faults)
    if (x.location < 0 || x.location >= c.num_locations()) throw std::out_of_range("fault location out of range");
  return f.result();
}

AncillaAttempt run_noisy(const AncillaCircuit& c, Rng& rng, const NoiseParams& noise) {
  Frame f;
  for (const Gate& g : c.gates) {
    f.apply(g);
    if (g.kind == GateKind::kCnot) {
      XFault x = sample_two_qubit_fault(rng, noise.eps);
      f.fault(g, x.control, x.target);
    } else if (g.kind == GateKind::kMeasureZ) {
      f.fault(g, rng.bernoulli(noise.p_meas), false);
    } else {
      f.fault(g, sample_one_qubit_fault(rng, noise.eps), false);
    }
  }
  return f.result();
}

ErrorPattern prepare_verified_ancilla(const AncillaCircuit& c, Rng& rng, const NoiseParams& noise, int retry_cap,
                                      int* attempts) {
  for (int k = 1; k <= retry_cap; ++k) {
    AncillaAttempt a = run_noisy(c, rng, noise);
    if (a.accepted()) {
      if (attempts) *attempts = k;
      return a.pattern;
    }
  }
  throw SimulationAbort(c.name + ": ancilla verification rejected " + std::to_string(retry_cap) +
                        " consecutive attempts");
}

int reduced_weight(ErrorPattern pattern, LogicalState target) {
  int best = kNumQubits;
  for (unsigned g = 0; g < 128; ++g) {
    if (kSyndromeTable[g] != 0) continue;
    if (target == LogicalState::kZero && __builtin_popcount(g) % 2) continue;
    best = std::min(best, __builtin_popcount(pattern.bits() ^ g));
  }
  return best;
}

AuditReport audit_single_faults(const AncillaCircuit& c) {
  c.validate();
  AuditReport rep;
  AncillaAttempt clean = run_noiseless(c);
  rep.noiseless_ok = clean.accepted() && reduced_weight(clean.pattern, c.target) == 0;
  for (int i = 0; i < c.num_locations(); ++i) {
    std::vector<InjectedFault> variants;
    if (c.gates[i].kind == GateKind::kCnot)
      variants = {{i, true, false}, {i, false, true}, {i, true, true}};
    else
      variants = {{i, true, false}};
    for (const InjectedFault& x : variants) {
      ++rep.faults_checked;
      AncillaAttempt a = run_noiseless(c, {x});
      if (a.accepted() && reduced_weight(a.pattern, c.target) >= 2) rep.violations.push_back({i, x, a.pattern});
    }
  }
  return rep;
}

std::vector<CompiledLocation> compile_effects(const AncillaCircuit& c) {
  c.validate();
  std::vector<CompiledLocation> out;
  out.reserve(c.gates.size());
  auto effect = [&](InjectedFault x) {
    AncillaAttempt a = run_noiseless(c, {x});
    return FaultEffect{a.pattern.bits(), a.outcomes};
  };
  for (int i = 0; i < c.num_locations(); ++i) {
    CompiledLocation loc{};
    switch (c.gates[i].kind) {
      case GateKind::kCnot:
        loc.cls = LocationClass::kTwoQubit;
        loc.effects = {effect({i, true, false}), effect({i, false, true}), effect({i, true, true})};
        break;
      case GateKind::kMeasureZ:
        loc.cls = LocationClass::kMeasure;
        loc.effects[0] = effect({i, true, false});
        break;
      default:
        loc.cls = LocationClass::kOneQubit;
        loc.effects[0] = effect({i, true, false});
        break;
    }
    out.push_back(loc);
  }
  return out;
}

}  // namespace cadence
