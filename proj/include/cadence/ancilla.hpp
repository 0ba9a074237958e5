#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cadence/noise.hpp"
#include "cadence/steane.hpp"

namespace cadence {

enum class GateKind : std::uint8_t { kInitPlus, kInitZero, kWait, kCnot, kMeasureZ };

// Every gate is also a fault location; faults act after the ideal gate.
struct Gate {
  GateKind kind;
  int a;       // qubit, or control for kCnot
  int b = -1;  // target for kCnot
};

enum class LogicalState { kPlus, kZero };

// Qubits 0..6 hold the code block; any further qubits are verification
// qubits whose Z measurements must all read 0 for the state to be accepted.
struct AncillaCircuit {
  std::string name;
  int num_qubits = kNumQubits;
  LogicalState target = LogicalState::kPlus;
  std::vector<Gate> gates;

  int num_measurements() const;
  int num_locations() const { return static_cast<int>(gates.size()); }
  void validate() const;
};

// Three-layer |+_L> encoder with idle locations; no verification needed for
// the X sector since every X pattern on |+_L> reduces to weight <= 1.
AncillaCircuit steane_plus_encoder();
// Same encoder followed by a Z-parity check on qubits 4..7.
AncillaCircuit steane_plus_verified();
// |0_L> encoder followed by a logical-Z check; the textbook case where the
// check is what makes the preparation fault tolerant.
AncillaCircuit steane_zero_verified();
// Drops verification qubits and everything acting on them.
AncillaCircuit strip_verification(const AncillaCircuit& c);

AncillaCircuit ancilla_circuit_by_name(const std::string& name);

// X fault injected at one location. For a CNOT, `control`/`target` select
// the component; for one-qubit gates and measurements any flag fires it.
struct InjectedFault {
  int location = -1;
  bool control = true;
  bool target = false;
};

struct AncillaAttempt {
  ErrorPattern pattern;
  std::uint32_t outcomes = 0;  // measurement record, bit k = k-th measurement
  bool accepted() const { return outcomes == 0; }
};

AncillaAttempt run_noiseless(const AncillaCircuit& c, const std::vector<InjectedFault>& faults = {});
AncillaAttempt run_noisy(const AncillaCircuit& c, Rng& rng, const NoiseParams& noise);

class SimulationAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultRetryCap = 1000;

// Repeats preparation until verification accepts; throws SimulationAbort once
// `retry_cap` consecutive attempts are rejected.
ErrorPattern prepare_verified_ancilla(const AncillaCircuit& c, Rng& rng, const NoiseParams& noise,
                                      int retry_cap = kDefaultRetryCap, int* attempts = nullptr);

// Minimum weight of `pattern` modulo the X stabilizers of the target state
// (all 16 codewords for |+_L>, the 8 even ones for |0_L>).
int reduced_weight(ErrorPattern pattern, LogicalState target);

struct AuditViolation {
  int location;
  InjectedFault fault;
  ErrorPattern pattern;
};

struct AuditReport {
  bool noiseless_ok = false;  // noiseless run accepts with no residual error
  int faults_checked = 0;
  std::vector<AuditViolation> violations;
  bool passed() const { return noiseless_ok && violations.empty(); }
};

AuditReport audit_single_faults(const AncillaCircuit& c);

// Effect of one fault component, found by propagating it through the rest of
// the circuit. Valid because the frame update is linear over GF(2).
struct FaultEffect {
  std::uint8_t pattern = 0;
  std::uint32_t outcomes = 0;
};

enum class LocationClass : std::uint8_t { kOneQubit, kTwoQubit, kMeasure };

struct CompiledLocation {
  LocationClass cls;
  std::array<FaultEffect, 3> effects;  // two-qubit: control, target, both
};

std::vector<CompiledLocation> compile_effects(const AncillaCircuit& c);

}  // namespace cadence
