#pragma once

// Reset through two Kraus channels, one per letter, with no explicit ancilla.
//
//   A(rho) = A1 rho A1^dagger + A2 rho A2^dagger,  A2 = |1><0|
//   B(rho) = B1 rho B1^dagger + B2 rho B2^dagger,  B2 = |0><1|
//
// A1 = R_12 R_23 ... R_{n-2,n-1} (each excluding |0>) and
// B1 = R_02 R_23 ... R_{n-2,n-1} (each excluding |1>), with R_ij^[k](phi) a
// plane rotation on (i, j) that annihilates |k>. At phi = pi/2 the channels
// act on basis projectors exactly like the basic family's delta_a / delta_b.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qsync/automata.hpp"
#include "qsync/parallel.hpp"
#include "qsync/qcore.hpp"

namespace qsync {

struct RotationSpec {
  int i = 0;
  int j = 0;
  int k = 0;
  double phi = 0.0;
  int n = 0;
};

/// sum_{p != i,j,k} |p><p| + cos(|i><i| + |j><j|) - sin |i><j| + sin |j><i|.
inline Operator rotation(const RotationSpec& r) {
  const bool in_range = r.i >= 0 && r.j >= 0 && r.k >= 0 && r.i < r.n && r.j < r.n && r.k < r.n;
  if (!in_range) throw std::invalid_argument("rotation index out of range");
  if (r.i == r.j || r.i == r.k || r.j == r.k) throw std::invalid_argument("rotation indices must be distinct");
  const auto n = static_cast<std::size_t>(r.n);
  Matrix m(n);
  for (std::size_t p = 0; p < n; ++p)
    if (p != static_cast<std::size_t>(r.i) && p != static_cast<std::size_t>(r.j) && p != static_cast<std::size_t>(r.k))
      m(p, p) = 1.0;
  const double c = std::cos(r.phi), s = std::sin(r.phi);
  m(r.i, r.i) = c;
  m(r.j, r.j) = c;
  m(r.i, r.j) = -s;
  m(r.j, r.i) = s;
  return Operator(std::move(m));
}

struct ChannelPair {
  int n = 0;
  double phi_a = 0.0;
  double phi_b = 0.0;
  Operator a1, a2, b1, b2;

  const Operator& first(Letter l) const { return l == Letter::a ? a1 : b1; }
  const Operator& second(Letter l) const { return l == Letter::a ? a2 : b2; }
};

inline Operator outer_basis(std::size_t n, std::size_t row, std::size_t col) {
  Matrix m(n);
  m(row, col) = 1.0;
  return Operator(std::move(m));
}

inline ChannelPair build_channels(int n, double phi_a, double phi_b) {
  if (n < 3) throw std::invalid_argument("channels need n >= 3");
  const auto dim = static_cast<std::size_t>(n);

  // Chain shared by both letters: R_23 R_34 ... R_{n-2,n-1}.
  auto chain = [&](int excluded, double phi) {
    Operator prod = Operator::identity(dim);
    for (int i = 2; i + 1 <= n - 1; ++i) prod = prod * rotation({i, i + 1, excluded, phi, n});
    return prod;
  };

  ChannelPair p;
  p.n = n;
  p.phi_a = phi_a;
  p.phi_b = phi_b;
  p.a1 = rotation({1, 2, 0, phi_a, n}) * chain(0, phi_a);
  p.b1 = rotation({0, 2, 1, phi_b, n}) * chain(1, phi_b);
  p.a2 = outer_basis(dim, 1, 0);
  p.b2 = outer_basis(dim, 0, 1);
  return p;
}

/// Largest deviation of K1^dagger K1 + K2^dagger K2 from I over both letters.
inline double completeness_error(const ChannelPair& p) {
  const Matrix id = Matrix::identity(static_cast<std::size_t>(p.n));
  double worst = 0.0;
  for (Letter l : {Letter::a, Letter::b}) {
    const Matrix& k1 = p.first(l).matrix();
    const Matrix& k2 = p.second(l).matrix();
    worst = std::max(worst, max_abs_diff(k1.adjoint() * k1 + k2.adjoint() * k2, id));
  }
  return worst;
}

inline DensityMatrix apply_channel(const DensityMatrix& rho, Letter which, const ChannelPair& pair) {
  if (rho.dim() != static_cast<std::size_t>(pair.n))
    throw std::invalid_argument("density matrix has dim " + std::to_string(rho.dim()) + ", channel expects " +
                                std::to_string(pair.n));
  return DensityMatrix(conjugate(pair.first(which), rho.matrix()) + conjugate(pair.second(which), rho.matrix()));
}

/// Applies one channel per letter, in the word's application order.
inline DensityMatrix run_channel_word(const DensityMatrix& rho, const Word& word, const ChannelPair& pair) {
  DensityMatrix out = rho;
  for (Letter l : word.applied()) out = apply_channel(out, l, pair);
  return out;
}

inline DensityMatrix run_channel_word(const DensityMatrix& rho, const Word& word, double phi_a, double phi_b, int n) {
  return run_channel_word(rho, word, build_channels(n, phi_a, phi_b));
}

enum class InitialState { maximally_mixed, uniform_superposition };

inline DensityMatrix initial_state(InitialState init, int n) {
  const auto dim = static_cast<std::size_t>(n);
  return init == InitialState::maximally_mixed ? DensityMatrix::maximally_mixed(dim)
                                               : DensityMatrix::pure(StateVector::uniform(dim));
}

/// Classical target of `word` on the basic family, or 0 when it does not synchronize.
inline int channel_target(const Word& word, int n) {
  return is_synchronizing(build_family(PermutationSpec::basic(n)), word).value_or(0);
}

struct KrausPoint {
  double phi_a = 0.0;
  double phi_b = 0.0;
  double fidelity = 0.0;
  double purity = 0.0;
};

/// Fidelity to `target` and purity over grid x grid angle pairs, row-major
/// with phi_a the slow index.
inline std::vector<KrausPoint> sweep(int n, const std::vector<double>& grid, InitialState init, const Word& word,
                                     std::optional<int> target = std::nullopt, unsigned threads = 1) {
  for (double g : grid)
    if (g < 0.0 || g > M_PI + 1e-12) throw std::invalid_argument("angle grid must lie within [0, pi]");
  const int tgt = target.value_or(channel_target(word, n));
  if (tgt < 0 || tgt >= n) throw std::out_of_range("target out of range");
  const DensityMatrix rho0 = initial_state(init, n);
  std::vector<KrausPoint> out(grid.size() * grid.size());
  parallel_for(out.size(), threads, [&](std::size_t idx) {
    const double pa = grid[idx / grid.size()], pb = grid[idx % grid.size()];
    const DensityMatrix rho = run_channel_word(rho0, word, pa, pb, n);
    out[idx] = {pa, pb, basis_fidelity(rho, static_cast<std::size_t>(tgt)), purity(rho)};
  });
  return out;
}

}  // namespace qsync
