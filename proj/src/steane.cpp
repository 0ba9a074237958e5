#include "cadence/steane.hpp"

#include <stdexcept>

namespace cadence {

ErrorPattern ErrorPattern::from_bits(unsigned bits) {
  if (bits & ~kPatternMask) throw std::invalid_argument("error pattern has more than 7 bits");
  ErrorPattern e;
  e.bits_ = static_cast<std::uint8_t>(bits);
  return e;
}

ErrorPattern ErrorPattern::from_qubits(std::initializer_list<int> qubits) {
  ErrorPattern e;
  for (int q : qubits) e.flip(q);
  return e;
}

ErrorPattern ErrorPattern::from_string(std::string_view s) {
  if (s.size() != kNumQubits) throw std::invalid_argument("error pattern string must have 7 characters");
  ErrorPattern e;
  for (int i = 0; i < kNumQubits; ++i) {
    if (s[i] == '1')
      e.flip(i + 1);
    else if (s[i] != '0')
      throw std::invalid_argument("error pattern string must contain only 0 and 1");
  }
  return e;
}

ErrorPattern& ErrorPattern::flip(int qubit) {
  if (qubit < 1 || qubit > kNumQubits) throw std::out_of_range("qubit index must be in 1..7");
  bits_ ^= static_cast<std::uint8_t>(1u << (qubit - 1));
  return *this;
}

std::string ErrorPattern::to_string() const {
  std::string s(kNumQubits, '0');
  for (int q = 1; q <= kNumQubits; ++q)
    if (test(q)) s[q - 1] = '1';
  return s;
}

std::string syndrome_string(Syndrome s) {
  std::string out(3, '0');
  for (int k = 0; k < 3; ++k)
    if ((s >> (2 - k)) & 1u) out[k] = '1';
  return out;
}

Syndrome CodeDefinition::syndrome(ErrorPattern e) const {
  unsigned s = 0;
  for (int k = 0; k < 3; ++k) {
    unsigned parity = __builtin_popcount(parity_rows[k].bits() & e.bits()) & 1u;
    s |= parity << (2 - k);
  }
  return static_cast<Syndrome>(s);
}

ErrorPattern CodeDefinition::decode(Syndrome s) const {
  if (s > 7) throw std::out_of_range("syndrome must be 3 bits");
  return decode_table[s];
}

bool CodeDefinition::residual_is_logical(ErrorPattern residual) const {
  if (syndrome(residual) != 0) throw std::invalid_argument("residual is not in the code space");
  // Z_L = Z^7 anticommutes with odd-weight codewords.
  return residual.weight() % 2 == 1;
}

QecOutcome CodeDefinition::apply_ideal_qec(ErrorPattern e) const {
  ErrorPattern residual = e ^ decode(syndrome(e));
  return {residual, residual_is_logical(residual)};
}

const CodeDefinition& steane_code() {
  static const CodeDefinition code = [] {
    CodeDefinition c;
    for (int k = 0; k < 3; ++k) {
      unsigned row = 0;
      for (int q = 1; q <= kNumQubits; ++q)
        if ((q >> (2 - k)) & 1) row |= 1u << (q - 1);
      c.parity_rows[k] = ErrorPattern::from_bits(row);
    }
    for (unsigned s = 0; s < 8; ++s) c.decode_table[s] = ErrorPattern::from_bits(correction_bits(s));
    return c;
  }();
  return code;
}

Syndrome syndrome_of(ErrorPattern e) { return kSyndromeTable[e.bits()]; }

ErrorPattern decode_syndrome(Syndrome s) {
  if (s > 7) throw std::out_of_range("syndrome must be 3 bits");
  return ErrorPattern::from_bits(correction_bits(s));
}

bool residual_is_logical(ErrorPattern residual) { return steane_code().residual_is_logical(residual); }

QecOutcome apply_ideal_qec(ErrorPattern e) {
  ErrorPattern residual = ErrorPattern::from_bits(ideal_correct_bits(e.bits()));
  return {residual, residual.weight() % 2 == 1};
}

}  // namespace cadence
