#pragma once

// Ancilla-assisted reset: each letter of a word is stored in a fresh qubit
// (|a> = |0>, |b> = |1>) and a single permutation U couples that qubit to the
// n-state system. U is one 2n-cycle through the letter-tagged basis
//
//   (a,0) -> (a,1) -> ... -> (a,n-1) -> (b,pi_0) -> (b,pi_1) -> ... -> (b,pi_{n-1}) -> (a,0)
//
// so the system follows delta_a / delta_b and the qubit flips only on the two
// edges that close the cycle, carrying away which preimage was merged.
//
// Index conventions: a (letter, position) pair is letter * n + position. In a
// joint register of k ancillas the ancillas are the leading factors, ancilla k
// outermost and ancilla 1 (first to act) next to the system.

#include <cstdint>
#include <string>
#include <vector>

#include "qsync/automata.hpp"
#include "qsync/errors.hpp"
#include "qsync/qcore.hpp"

namespace qsync {

inline constexpr int kMaxJointQubits = 22;

struct StepUnitary {
  PermutationSpec spec;
  Operator op;  // dimension 2n, permutation form

  int n() const { return spec.n(); }
};

/// Basis index of |letter>|position> in the 2n-dimensional step space.
inline std::size_t step_index(Letter l, int position, int n) {
  return static_cast<std::size_t>(l) * static_cast<std::size_t>(n) + static_cast<std::size_t>(position);
}

inline StepUnitary build_step_unitary(const PermutationSpec& spec) {
  const int n = spec.n();
  std::vector<std::size_t> cycle;
  cycle.reserve(2 * n);
  for (int k = 0; k < n; ++k) cycle.push_back(step_index(Letter::a, k, n));
  for (int k = 0; k < n; ++k) cycle.push_back(step_index(Letter::b, spec(k), n));

  std::vector<std::size_t> target(2 * n);
  for (std::size_t i = 0; i < cycle.size(); ++i) target[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return {spec, Operator::permutation(std::move(target))};
}

/// Ancilla register bits rendered q_k ... q_1 (first-acting ancilla last).
inline std::string ancilla_string(std::size_t register_index, std::size_t k) {
  std::string s(k, 'a');
  for (std::size_t j = 0; j < k; ++j)
    if ((register_index >> j) & 1U) s[k - 1 - j] = 'b';
  return s;
}

/// Register index of an ancilla string written q_k ... q_1.
inline std::size_t ancilla_index(const Word& w) {
  const auto applied = w.applied();
  std::size_t idx = 0;
  for (std::size_t j = 0; j < applied.size(); ++j)
    if (applied[j] == Letter::b) idx |= std::size_t{1} << j;
  return idx;
}

/// Applies a 2n-dimensional step operator between ancilla `bit` (0-based,
/// bit 0 = first ancilla) and the system inside a joint register.
inline StateVector apply_step(const StateVector& joint, const Operator& step, std::size_t bit, std::size_t n) {
  if (step.dim() != 2 * n || joint.dim() % n != 0) throw std::invalid_argument("step/joint dimension mismatch");
  const std::size_t regs = joint.dim() / n;
  if (bit >= 63 || (std::size_t{1} << bit) >= regs) throw std::invalid_argument("ancilla index out of range");
  const std::size_t mask = std::size_t{1} << bit;
  std::vector<Complex> out(joint.dim());
  if (const auto& p = step.permutation_form()) {
    for (std::size_t idx = 0; idx < joint.dim(); ++idx) {
      const Complex amp = joint[idx];
      if (amp == Complex{}) continue;
      const std::size_t anc = idx / n;
      const std::size_t local = ((anc & mask) ? n : 0) + idx % n;
      const std::size_t dst = p->target[local];
      const std::size_t anc2 = (dst >= n) ? (anc | mask) : (anc & ~mask);
      out[anc2 * n + dst % n] += p->phase[local] * amp;
    }
  } else {
    const Matrix& m = step.matrix();
    for (std::size_t anc = 0; anc < regs; ++anc) {
      if (anc & mask) continue;
      const std::size_t base0 = anc * n, base1 = (anc | mask) * n;
      for (std::size_t r = 0; r < 2 * n; ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < 2 * n; ++c) {
          const Complex v = c < n ? joint[base0 + c] : joint[base1 + c - n];
          acc += m(r, c) * v;
        }
        out[(r < n ? base0 + r : base1 + r - n)] = acc;
      }
    }
  }
  return StateVector(std::move(out));
}

/// One interaction with a fresh ancilla in state `ancilla`, after which the
/// ancilla is discarded: Tr_anc[ U (|c><c| (x) rho) U^dagger ].
inline DensityMatrix interact(const DensityMatrix& rho, const StateVector& ancilla, const Operator& step) {
  const std::size_t n = rho.dim();
  if (ancilla.dim() != 2 || step.dim() != 2 * n) throw std::invalid_argument("interaction dimension mismatch");
  const DensityMatrix joint = apply(step, tensor(DensityMatrix::pure(ancilla), rho));
  // Trace out the leading qubit.
  Matrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = joint(r, c) + joint(n + r, n + c);
  return DensityMatrix(std::move(out));
}

inline StateVector letter_state(Letter l) { return StateVector::basis(2, static_cast<std::size_t>(l)); }

struct ProtocolRun {
  PermutationSpec spec;
  Word word;
  StateVector joint;             // 2^k * n amplitudes
  DensityMatrix reduced_system;  // n x n

  std::size_t ancillas() const { return word.size(); }
  /// Amplitude of |ancilla string (q_k ... q_1)> (x) |position>.
  Complex amplitude(std::size_t register_index, int position) const {
    return joint[register_index * static_cast<std::size_t>(spec.n()) + static_cast<std::size_t>(position)];
  }
};

inline void check_joint_capacity(std::size_t ancillas, int n) {
  int sys_qubits = 0;
  while ((1 << sys_qubits) < n) ++sys_qubits;
  if (ancillas + static_cast<std::size_t>(sys_qubits) > static_cast<std::size_t>(kMaxJointQubits))
    throw CapacityError("joint register would need " + std::to_string(ancillas + sys_qubits) +
                        " qubits; limit is " + std::to_string(kMaxJointQubits) + " (use the traced run)");
}

/// Keeps every ancilla, returning the full joint state.
inline ProtocolRun run_protocol(const PermutationSpec& spec, const Word& word, const StateVector& system) {
  const int n = spec.n();
  if (word.empty()) throw std::invalid_argument("protocol needs a nonempty word");
  if (system.dim() != static_cast<std::size_t>(n))
    throw std::invalid_argument("system state has dim " + std::to_string(system.dim()) + ", expected " +
                                std::to_string(n));
  check_joint_capacity(word.size(), n);

  const StepUnitary u = build_step_unitary(spec);
  const std::size_t k = word.size();
  const std::size_t start = ancilla_index(word);
  std::vector<Complex> amps((std::size_t{1} << k) * static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) amps[start * n + p] = system[p];
  StateVector joint(std::move(amps));

  for (std::size_t j = 0; j < k; ++j) joint = apply_step(joint, u.op, j, static_cast<std::size_t>(n));

  DensityMatrix reduced = reduce_to_right(joint, static_cast<std::size_t>(n));
  return {spec, word, std::move(joint), std::move(reduced)};
}

/// Same reduced state as run_protocol, tracing each ancilla out right after
/// its interaction. Memory stays O(n^2).
inline DensityMatrix run_traced(const PermutationSpec& spec, const Word& word, const DensityMatrix& system) {
  const int n = spec.n();
  if (word.empty()) throw std::invalid_argument("protocol needs a nonempty word");
  if (system.dim() != static_cast<std::size_t>(n))
    throw std::invalid_argument("system state has dim " + std::to_string(system.dim()) + ", expected " +
                                std::to_string(n));
  const StepUnitary u = build_step_unitary(spec);
  DensityMatrix rho = system;
  for (Letter l : word.applied()) rho = interact(rho, letter_state(l), u.op);
  return rho;
}

}  // namespace qsync
