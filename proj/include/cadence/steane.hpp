#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace cadence {

inline constexpr int kNumQubits = 7;
inline constexpr unsigned kPatternMask = 0x7Fu;

// X-error support on the 7 data qubits. Bit (q-1) holds qubit q.
class ErrorPattern {
 public:
  constexpr ErrorPattern() = default;

  static ErrorPattern from_bits(unsigned bits);
  static ErrorPattern from_qubits(std::initializer_list<int> qubits);
  // Character i is qubit i+1, e.g. "0001111" is X on qubits 4..7.
  static ErrorPattern from_string(std::string_view s);
  static constexpr ErrorPattern single(int qubit) {
    ErrorPattern e;
    e.bits_ = static_cast<std::uint8_t>(1u << (qubit - 1));
    return e;
  }

  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool test(int qubit) const { return (bits_ >> (qubit - 1)) & 1u; }
  constexpr int weight() const { return __builtin_popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }

  ErrorPattern& flip(int qubit);
  ErrorPattern& operator^=(ErrorPattern o) {
    bits_ ^= o.bits_;
    return *this;
  }
  friend constexpr ErrorPattern operator^(ErrorPattern a, ErrorPattern b) {
    ErrorPattern r;
    r.bits_ = a.bits_ ^ b.bits_;
    return r;
  }
  friend constexpr bool operator==(ErrorPattern, ErrorPattern) = default;

  std::string to_string() const;

 private:
  std::uint8_t bits_ = 0;
};

// 3-bit syndrome, most significant bit first. For the Steane layout its
// value is the 1-based index of the flipped qubit (0 = trivial).
using Syndrome = std::uint8_t;

std::string syndrome_string(Syndrome s);

// Hot-path helpers on raw 7-bit masks. Column q of H is the binary form of q,
// so the syndrome is the XOR of the indices of the set bits.
constexpr Syndrome syndrome_bits(unsigned bits) {
  unsigned s = 0;
  for (int q = 1; q <= kNumQubits; ++q)
    if ((bits >> (q - 1)) & 1u) s ^= static_cast<unsigned>(q);
  return static_cast<Syndrome>(s);
}

inline constexpr auto kSyndromeTable = [] {
  std::array<Syndrome, 128> t{};
  for (unsigned b = 0; b < 128; ++b) t[b] = syndrome_bits(b);
  return t;
}();

constexpr unsigned correction_bits(Syndrome s) { return s == 0 ? 0u : 1u << (s - 1); }

// Ideal decode of an arbitrary pattern back into the code space.
constexpr unsigned ideal_correct_bits(unsigned bits) {
  return bits ^ correction_bits(kSyndromeTable[bits & kPatternMask]);
}

struct QecOutcome {
  ErrorPattern residual;
  bool logical = false;
};

// Parity-check rows and decode table. Kept as data so self-checks can be
// exercised against deliberately broken definitions.
struct CodeDefinition {
  std::array<ErrorPattern, 3> parity_rows;  // most significant syndrome bit first
  std::array<ErrorPattern, 8> decode_table;

  Syndrome syndrome(ErrorPattern e) const;
  ErrorPattern decode(Syndrome s) const;
  // Requires syndrome(residual) == 0.
  bool residual_is_logical(ErrorPattern residual) const;
  QecOutcome apply_ideal_qec(ErrorPattern e) const;
};

const CodeDefinition& steane_code();

Syndrome syndrome_of(ErrorPattern e);
ErrorPattern decode_syndrome(Syndrome s);
bool residual_is_logical(ErrorPattern residual);
QecOutcome apply_ideal_qec(ErrorPattern e);

}  // namespace cadence
