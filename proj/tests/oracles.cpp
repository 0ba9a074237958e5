#include "oracles.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace oracle {

using namespace cadence;

namespace {

const char* kRows[3] = {"0001111", "0110011", "1010101"};

unsigned syndrome(unsigned e) {
  unsigned s = 0;
  for (int k = 0; k < 3; ++k) {
    int parity = 0;
    for (int q = 0; q < 7; ++q)
      if (kRows[k][q] == '1' && ((e >> q) & 1)) parity ^= 1;
    s = (s << 1) | parity;
  }
  return s;
}

unsigned correct(unsigned e) {
  unsigned s = syndrome(e);
  for (int q = 0; q < 7; ++q)
    if (syndrome(1u << q) == s) return e ^ (1u << q);
  return e;
}

int popcount(unsigned x) {
  int n = 0;
  for (; x; x &= x - 1) ++n;
  return n;
}

// Frame propagation of one fault; returns (code-block pattern, outcome bits).
std::pair<unsigned, unsigned> propagate(const AncillaCircuit& c, int loc, bool first, bool second) {
  std::vector<int> x(c.num_qubits, 0);
  unsigned outcomes = 0;
  int meas = 0;
  for (int i = 0; i < c.num_locations(); ++i) {
    const Gate& g = c.gates[i];
    if (g.kind == GateKind::kCnot) x[g.b] ^= x[g.a];
    if (g.kind == GateKind::kMeasureZ) outcomes |= unsigned(x[g.a]) << meas++;
    if (i != loc) continue;
    if (g.kind == GateKind::kCnot) {
      x[g.a] ^= first;
      x[g.b] ^= second;
    } else if (g.kind == GateKind::kMeasureZ) {
      outcomes ^= 1u << (meas - 1);
    } else {
      x[g.a] ^= 1;
    }
  }
  unsigned pat = 0;
  for (int q = 0; q < 7; ++q) pat |= unsigned(x[q]) << q;
  return {pat, outcomes};
}

// XOR-convolution of independent sparse flips into a distribution.
void apply_flips(std::vector<double>& dist, const std::vector<std::pair<unsigned, double>>& flips) {
  double none = 1.0;
  for (auto& f : flips) none -= f.second;
  std::vector<double> out(dist.size(), 0.0);
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist[s] == 0.0) continue;
    out[s] += none * dist[s];
    for (auto& [v, p] : flips) out[s ^ v] += p * dist[s];
  }
  dist.swap(out);
}

}  // namespace

bool decodes_to_logical(unsigned pattern) { return popcount(correct(pattern)) % 2 == 1; }

Matrix128 qec_transfer(const AncillaCircuit& c, const NoiseParams& noise) {
  const double p1 = 2.0 * noise.eps / 3.0;
  const double p2 = 4.0 * noise.eps / 15.0;
  const double pm = noise.p_meas;
  int nmeas = 0;
  for (const Gate& g : c.gates) nmeas += g.kind == GateKind::kMeasureZ;
  if (nmeas > 8) throw std::invalid_argument("oracle supports at most 8 verification measurements");

  // Ancilla: joint distribution of (syndrome of the pattern, outcome bits).
  std::vector<double> anc(8u << nmeas, 0.0);
  anc[0] = 1.0;
  auto key = [](std::pair<unsigned, unsigned> e) { return syndrome(e.first) | (e.second << 3); };
  for (int i = 0; i < c.num_locations(); ++i) {
    const Gate& g = c.gates[i];
    std::vector<std::pair<unsigned, double>> flips;
    if (g.kind == GateKind::kCnot) {
      flips = {{key(propagate(c, i, true, false)), p2},
               {key(propagate(c, i, false, true)), p2},
               {key(propagate(c, i, true, true)), p2}};
    } else if (g.kind == GateKind::kMeasureZ) {
      flips = {{key(propagate(c, i, true, false)), pm}};
    } else {
      flips = {{key(propagate(c, i, true, false)), p1}};
    }
    apply_flips(anc, flips);
  }
  double accept = 0.0;
  for (unsigned s = 0; s < 8; ++s) accept += anc[s];

  // Coupling: state = data flips D (7 bits) | syndrome flips (3 bits) << 7.
  std::vector<double> cpl(1024, 0.0);
  for (unsigned s = 0; s < 8; ++s) cpl[s << 7] = anc[s] / accept;
  for (int q = 0; q < 7; ++q) {
    unsigned dq = 1u << q, sq = syndrome(1u << q) << 7;
    apply_flips(cpl, {{dq, p2}, {sq, p2}, {dq | sq, p2}});
  }
  for (int q = 0; q < 7; ++q) apply_flips(cpl, {{syndrome(1u << q) << 7, pm}});

  Matrix128 t(128);
  for (unsigned e = 0; e < 128; ++e) {
    t[e].fill(0.0);
    for (unsigned v = 0; v < 1024; ++v) {
      if (cpl[v] == 0.0) continue;
      unsigned d = v & 127u, sflip = v >> 7;
      unsigned s = syndrome(e) ^ sflip;
      unsigned corr = 0;
      for (int q = 0; q < 7; ++q)
        if (s != 0 && syndrome(1u << q) == s) corr = 1u << q;
      t[e][e ^ d ^ corr] += cpl[v];
    }
  }
  return t;
}

double exact_pl(const AncillaCircuit& c, const NoiseParams& noise, int N, int m, double eps_a) {
  Matrix128 t = qec_transfer(c, noise);
  const double eg = 2.0 * noise.eps / 3.0;
  const double q = 0.5 * (1.0 - std::pow(1.0 - 2.0 * eg, m));
  double flip[8];
  for (int w = 0; w <= 7; ++w) flip[w] = std::pow(q, w) * std::pow(1.0 - q, 7 - w);
  Dist128 v{};
  v[0] = 1.0;
  for (int b = 0; b < N / m; ++b) {
    Dist128 g{};
    for (unsigned e = 0; e < 128; ++e) {
      if (v[e] == 0.0) continue;
      for (unsigned f = 0; f < 128; ++f) g[e ^ f] += v[e] * flip[popcount(f)];
    }
    Dist128 n{};
    for (unsigned e = 0; e < 128; ++e) {
      n[e] += eps_a * g[e];
      for (unsigned f = 0; f < 128; ++f) n[f] += (1.0 - eps_a) * g[e] * t[e][f];
    }
    v = n;
  }
  double p = 0.0;
  for (unsigned e = 0; e < 128; ++e)
    if (decodes_to_logical(e)) p += v[e];
  return p;
}

double all_skipped_pl(double eps_g, int N) {
  const double q = 0.5 * (1.0 - std::pow(1.0 - 2.0 * eps_g, N));
  double p = 0.0;
  for (unsigned e = 0; e < 128; ++e) {
    int w = popcount(e);
    if (decodes_to_logical(e)) p += std::pow(q, w) * std::pow(1.0 - q, 7 - w);
  }
  return p;
}

double PositionRates::two_mean() const {
  double s = 0.0;
  for (double x : two_out) s += x;
  return s / 7.0;
}

double PositionRates::one_mean() const {
  double s = 0.0;
  for (double x : one_out) s += x;
  return s / 7.0;
}

PositionRates exact_position_rates(const AncillaCircuit& c, const NoiseParams& noise) {
  Matrix128 t = qec_transfer(c, noise);
  PositionRates r{};
  for (int i = 0; i < 7; ++i) {
    for (unsigned f = 0; f < 128; ++f) {
      double p = t[1u << i][f];
      if (decodes_to_logical(f)) r.two_out[i] += p;
      if (popcount(f) == 1) r.one_out[i] += p;
    }
  }
  return r;
}

double exact_clean_logical(const AncillaCircuit& c, const NoiseParams& noise) {
  Matrix128 t = qec_transfer(c, noise);
  double p = 0.0;
  for (unsigned f = 0; f < 128; ++f)
    if (decodes_to_logical(f)) p += t[0][f];
  return p;
}

double gamma_direct(int B, double a) {
  double s = 0.0;
  for (int f = 1; f <= B - 1; ++f) s += std::pow(a, f) * (B - f);
  return s;
}

double gamma3_direct(int B, double a) {
  double s = 0.0;
  for (int f = 1; f <= B - 1; ++f) s += std::pow(a, f) * (B - f - 1);
  return s;
}

double printed_formula(const AbstractRates& r, int N, int m) {
  const double B = N / m;
  const double eg = r.eps_g, a = r.eps_a, s = r.eps_s, o = r.eps_o, c = r.eps_c, d = r.eps_d;
  const double Q = c * (s + o + c / 2) + d * (s + d / 2);
  const double g = gamma_direct(N / m, a);
  const double g3 = a > 0 ? (g - (B - 1) * a) / a : 0.0;
  return 42 * (B * (m * eg * (m * eg / 2 + (1 - a) * (s + d)) + (1 - a) * Q) +
               (B - 1 + g3) * (1 - a) * (c + s + o) * (m * eg + (1 - a) * (s + d)) +
               g * m * eg * (m * eg + (1 - a) * (s + d)));
}

StateCheck statevector_check(const AncillaCircuit& c) {
  const int n = c.num_qubits;
  if (n > 12) throw std::invalid_argument("statevector oracle is for small circuits");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> psi(dim, 0.0);
  psi[0] = 1.0;
  for (const Gate& g : c.gates) {
    const std::size_t ba = std::size_t{1} << g.a;
    switch (g.kind) {
      case GateKind::kInitPlus:
        for (std::size_t i = 0; i < dim; ++i)
          if (!(i & ba)) {
            double x = psi[i], y = psi[i | ba];
            psi[i] = (x + y) / std::sqrt(2.0);
            psi[i | ba] = (x - y) / std::sqrt(2.0);
          }
        break;
      case GateKind::kCnot: {
        const std::size_t bb = std::size_t{1} << g.b;
        for (std::size_t i = 0; i < dim; ++i)
          if ((i & ba) && !(i & bb)) std::swap(psi[i], psi[i | bb]);
        break;
      }
      case GateKind::kMeasureZ:
        for (std::size_t i = 0; i < dim; ++i)
          if (i & ba) psi[i] = 0.0;
        break;
      default:
        break;
    }
  }
  double norm2 = 0.0;
  for (double x : psi) norm2 += x * x;

  std::vector<double> target(dim, 0.0);
  int count = 0;
  for (unsigned e = 0; e < 128; ++e) {
    if (syndrome(e) != 0) continue;
    if (c.target == LogicalState::kZero && popcount(e) % 2) continue;
    target[e] = 1.0;
    ++count;
  }
  double overlap = 0.0;
  for (std::size_t i = 0; i < dim; ++i) overlap += target[i] * psi[i] / std::sqrt(double(count));
  return {1.0 - norm2, norm2 > 0 ? overlap * overlap / norm2 : 0.0};
}

}  // namespace oracle
