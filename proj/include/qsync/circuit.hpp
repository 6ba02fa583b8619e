#pragma once

// Gate-level compilation of one protocol step.
//
// Register layout: qubit i carries bit i of the basis index. For a step over
// n = 2^m nodes the position occupies qubits 0..m-1 (qubit 0 least
// significant) and the letter qubit is qubit m, so basis index
// letter * n + position matches the step unitary's convention.
//
// The step is U = T S T^dagger (T^dagger acts first):
//   T = |0><0| (x) I + |1><1| (x) T_g,  T_g |i> = |pi_i>
//   S = cyclic increment |i> -> |i+1 mod 2n> on all m+1 qubits
// Every piece is a permutation, lowered to X / multi-controlled-X gates via
// transposition networks.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qsync/automata.hpp"
#include "qsync/errors.hpp"
#include "qsync/protocol.hpp"
#include "qsync/qcore.hpp"

namespace qsync {

enum class Polarity : std::uint8_t { positive, negative };

struct Control {
  int qubit = 0;
  Polarity polarity = Polarity::positive;

  friend bool operator==(const Control&, const Control&) = default;
};

enum class GateKind : std::uint8_t { x, mcx };

struct Gate {
  GateKind kind = GateKind::x;
  int target = 0;
  std::vector<Control> controls;

  static Gate x(int target) { return {GateKind::x, target, {}}; }
  static Gate mcx(int target, std::vector<Control> controls) {
    if (controls.empty()) return x(target);
    return {GateKind::mcx, target, std::move(controls)};
  }

  /// True when every control is satisfied by basis index `idx`.
  bool fires(std::uint64_t idx) const {
    return std::all_of(controls.begin(), controls.end(), [idx](const Control& c) {
      const bool bit = (idx >> c.qubit) & 1U;
      return bit == (c.polarity == Polarity::positive);
    });
  }

  /// Image of basis index `idx` (X-type gates permute the basis).
  std::uint64_t map(std::uint64_t idx) const { return fires(idx) ? idx ^ (std::uint64_t{1} << target) : idx; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int qubits) : qubits_(qubits) {
    if (qubits < 0 || qubits > 62) throw std::invalid_argument("qubit count out of range");
  }

  int qubits() const { return qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  /// Appends a gate; gates run in insertion order.
  Circuit& add(Gate g) {
    validate(g);
    gates_.push_back(std::move(g));
    return *this;
  }

  Circuit& append(const Circuit& other) {
    if (other.qubits_ > qubits_) throw std::invalid_argument("appended circuit is wider than the target");
    for (const Gate& g : other.gates_) add(g);
    return *this;
  }

  /// Every gate is self-inverse, so the inverse is the reversed gate list.
  Circuit inverse() const {
    Circuit c(qubits_);
    c.gates_.assign(gates_.rbegin(), gates_.rend());
    return c;
  }

  std::size_t count_controls() const {
    std::size_t total = 0;
    for (const Gate& g : gates_) total += g.controls.size();
    return total;
  }

 private:
  void validate(const Gate& g) const {
    auto in_range = [this](int q) { return q >= 0 && q < qubits_; };
    if (!in_range(g.target)) throw std::invalid_argument("gate target out of range");
    if (g.kind == GateKind::x && !g.controls.empty()) throw std::invalid_argument("x gate cannot have controls");
    std::vector<bool> used(qubits_, false);
    used[g.target] = true;
    for (const Control& c : g.controls) {
      if (!in_range(c.qubit)) throw std::invalid_argument("control qubit out of range");
      if (used[c.qubit]) throw std::invalid_argument("control qubits must be distinct and differ from the target");
      used[c.qubit] = true;
    }
  }

  int qubits_ = 0;
  std::vector<Gate> gates_;
};

struct CompiledStep {
  PermutationSpec spec;
  Circuit t_circuit;
  Circuit s_circuit;
  Circuit full;
};

inline int log2_exact(std::uint64_t d, const char* what) {
  if (d < 2 || (d & (d - 1)) != 0) throw std::invalid_argument(std::string(what) + " must be a power of two >= 2");
  return __builtin_ctzll(d);
}

namespace detail {

/// Gates swapping |k> and |2^w - 1> on qubits 0..w-1. `extra` controls are
/// attached to the central MCX only: the outer CX layers cancel when it does
/// not fire.
inline std::vector<Gate> transposition_gates(std::uint64_t k, int w, const std::vector<Control>& extra) {
  std::vector<int> zeros;
  for (int b = 0; b < w; ++b)
    if (!((k >> b) & 1U)) zeros.push_back(b);

  const int pivot = zeros.front();
  std::vector<Gate> layer;
  for (std::size_t i = 1; i < zeros.size(); ++i) layer.push_back(Gate::mcx(zeros[i], {{pivot, Polarity::positive}}));

  std::vector<Control> controls = extra;
  for (int b = 0; b < w; ++b) {
    if (b == pivot) continue;
    const bool zero_bit = std::find(zeros.begin(), zeros.end(), b) != zeros.end();
    controls.push_back({b, zero_bit ? Polarity::negative : Polarity::positive});
  }

  std::vector<Gate> out = layer;
  out.push_back(Gate::mcx(pivot, std::move(controls)));
  out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

/// Gates exchanging basis states |x> and |y> of a w-qubit register.
inline std::vector<Gate> swap_gates(std::uint64_t x, std::uint64_t y, int w, const std::vector<Control>& extra) {
  const std::uint64_t top = (std::uint64_t{1} << w) - 1;
  const std::uint64_t diff = x ^ y;
  if (diff == 0) return {};
  if ((diff & (diff - 1)) == 0) {
    // Neighbours in the hypercube: one MCX on the differing bit.
    const int t = __builtin_ctzll(diff);
    std::vector<Control> controls = extra;
    for (int b = 0; b < w; ++b)
      if (b != t) controls.push_back({b, ((x >> b) & 1U) ? Polarity::positive : Polarity::negative});
    return {Gate::mcx(t, std::move(controls))};
  }
  if (y == top) return transposition_gates(x, w, extra);
  if (x == top) return transposition_gates(y, w, extra);
  // (x y) = (x top)(y top)(x top)
  std::vector<Gate> out = transposition_gates(x, w, extra);
  const auto mid = transposition_gates(y, w, extra);
  out.insert(out.end(), mid.begin(), mid.end());
  const auto last = transposition_gates(x, w, extra);
  out.insert(out.end(), last.begin(), last.end());
  return out;
}

/// Transpositions (first applied first) whose composition sends i -> perm[i].
inline std::vector<std::pair<int, int>> transpositions(const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> out;
  std::vector<bool> done(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (done[start]) continue;
    std::vector<int> cycle;
    for (int c = static_cast<int>(start); !done[c]; c = perm[c]) {
      done[c] = true;
      cycle.push_back(c);
    }
    for (std::size_t i = 1; i < cycle.size(); ++i) out.emplace_back(cycle[0], cycle[i]);
  }
  return out;
}

}  // namespace detail

/// Swaps |k> and |D-1> on a register of log2(D) qubits.
///
/// With b1..bs the zero bits of k: CX from b1 onto b2..bs, an MCX on b1
/// controlled by k's pattern on all other bits (negative on b2..bs), then the
/// CX layer again.
inline Circuit transposition_circuit(std::uint64_t k, std::uint64_t dim) {
  const int w = log2_exact(dim, "transposition dimension");
  if (k >= dim - 1) throw std::invalid_argument("transposition index must be below D-1");
  Circuit c(w);
  for (Gate& g : detail::transposition_gates(k, w, {})) c.add(std::move(g));
  return c;
}

/// |i> -> |i+1 mod D> as the transpositions (D-1,0), (D-1,1), ..., (D-1,D-2),
/// applied in that order.
inline Circuit build_S(std::uint64_t dim) {
  const int w = log2_exact(dim, "shift dimension");
  Circuit c(w);
  for (std::uint64_t k = 0; k + 1 < dim; ++k)
    for (Gate& g : detail::transposition_gates(k, w, {})) c.add(std::move(g));
  return c;
}

/// Letter-controlled relabelling |1>|i> -> |1>|pi_i> on m+1 qubits.
inline Circuit build_T(const PermutationSpec& spec) {
  const int m = log2_exact(static_cast<std::uint64_t>(spec.n()), "node count");
  const std::vector<Control> letter{{m, Polarity::positive}};
  Circuit c(m + 1);
  for (auto [x, y] : detail::transpositions(spec.values()))
    for (Gate& g : detail::swap_gates(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y), m, letter))
      c.add(std::move(g));
  return c;
}

inline CompiledStep build_step_circuit(const PermutationSpec& spec) {
  Circuit t = build_T(spec);
  Circuit s = build_S(2 * static_cast<std::uint64_t>(spec.n()));
  Circuit full(t.qubits());
  full.append(t.inverse()).append(s).append(t);
  return {spec, std::move(t), std::move(s), std::move(full)};
}

inline constexpr int kMaxPermutationQubits = 20;
inline constexpr int kMaxDenseQubits = 12;

/// Basis permutation implemented by the circuit: |j> -> |result[j]>.
inline std::vector<std::size_t> permutation_of(const Circuit& c) {
  if (c.qubits() > kMaxPermutationQubits)
    throw CapacityError("permutation_of supports at most " + std::to_string(kMaxPermutationQubits) + " qubits");
  const std::size_t dim = std::size_t{1} << c.qubits();
  std::vector<std::size_t> out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::uint64_t idx = j;
    for (const Gate& g : c.gates()) idx = g.map(idx);
    out[j] = static_cast<std::size_t>(idx);
  }
  return out;
}

/// Applies one gate to a state vector.
inline StateVector apply_gate(const Gate& g, const StateVector& s) {
  std::vector<Complex> out(s.dim());
  for (std::size_t j = 0; j < s.dim(); ++j) out[g.map(j)] = s[j];
  return StateVector(std::move(out));
}

/// Dense unitary: the product of the gate matrices in application order.
inline Operator unitary_of(const Circuit& c) {
  if (c.qubits() > kMaxDenseQubits)
    throw CapacityError("dense unitary limited to " + std::to_string(kMaxDenseQubits) + " qubits");
  const std::size_t dim = std::size_t{1} << c.qubits();
  Matrix u(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    StateVector col = StateVector::basis(dim, j);
    for (const Gate& g : c.gates()) col = apply_gate(g, col);
    for (std::size_t r = 0; r < dim; ++r) u(r, j) = col[r];
  }
  return Operator(std::move(u));
}

/// OpenQASM 3 text. Negative controls are conjugated with X on the control
/// qubit. `header` lines are emitted as `//` comments.
inline std::string export_qasm(const Circuit& c, const std::vector<std::string>& header = {}) {
  std::ostringstream out;
  out << "OPENQASM 3.0;\n";
  out << "include \"stdgates.inc\";\n";
  for (const auto& line : header) out << "// " << line << '\n';
  out << "qubit[" << c.qubits() << "] q;\n\n";
  for (const Gate& g : c.gates()) {
    std::vector<int> flips;
    for (const Control& ctl : g.controls)
      if (ctl.polarity == Polarity::negative) flips.push_back(ctl.qubit);
    for (int q : flips) out << "x q[" << q << "];\n";

    switch (g.controls.size()) {
      case 0: out << "x"; break;
      case 1: out << "cx"; break;
      case 2: out << "ccx"; break;
      default: out << "ctrl(" << g.controls.size() << ") @ x"; break;
    }
    const char* sep = " ";
    for (const Control& ctl : g.controls) {
      out << sep << "q[" << ctl.qubit << "]";
      sep = ", ";
    }
    out << sep << "q[" << g.target << "];\n";

    for (int q : flips) out << "x q[" << q << "];\n";
  }
  return out.str();
}

/// Header comment lines describing a compiled step.
inline std::vector<std::string> qasm_header(const PermutationSpec& spec) {
  std::ostringstream pi;
  for (std::size_t i = 0; i < spec.values().size(); ++i) pi << (i ? "," : "") << spec.values()[i];
  const int m = log2_exact(static_cast<std::uint64_t>(spec.n()), "node count");
  return {
      "synchronizing step U = T S T^dagger",
      "n = " + std::to_string(spec.n()) + ", pi = [" + pi.str() + "]",
      "basis index = letter * n + position; q[0] is the least significant position bit, q[" + std::to_string(m) +
          "] is the letter qubit (|0> = a, |1> = b)",
  };
}

}  // namespace qsync
