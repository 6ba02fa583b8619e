#pragma once

// Quantum-walk reading of the reset with the reversed relabelling
// pi = (1,0)(n-1,...,2). The step operator moves forward on letter a and
// backward on letter b; each step uses a fresh coin (ancilla) prepared in the
// word's letter and rotated by C_theta = exp(-i sigma_y theta) before the step.

#include <cmath>
#include <optional>
#include <vector>

#include "qsync/automata.hpp"
#include "qsync/parallel.hpp"
#include "qsync/protocol.hpp"
#include "qsync/qcore.hpp"

namespace qsync {

/// exp(-i sigma_y theta) = [[cos, -sin], [sin, cos]].
struct CoinOperator {
  double theta = 0.0;

  Operator op() const {
    Matrix m(2);
    m(0, 0) = std::cos(theta);
    m(0, 1) = -std::sin(theta);
    m(1, 0) = std::sin(theta);
    m(1, 1) = std::cos(theta);
    return Operator(std::move(m));
  }

  /// C_theta |letter>.
  StateVector applied_to(Letter l) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return l == Letter::a ? StateVector({c, s}) : StateVector({-s, c});
  }
};

inline StepUnitary build_walk_step(int n) {
  if (n < 4) throw std::invalid_argument("walk step needs n >= 4");
  return build_step_unitary(PermutationSpec::reversed(n));
}

inline Dfa walk_dfa(int n) { return build_family(PermutationSpec::reversed(n)); }

/// Shortest synchronizing word of the reversed family (application order).
inline Word default_walk_word(int n) {
  auto w = shortest_sync_word(walk_dfa(n));
  if (!w) throw std::logic_error("reversed family has no synchronizing word");
  return *w;
}

/// Coin preparation |a>|ab>^(n-3), read as an operator-order word.
inline Word pattern_walk_word(int n) {
  if (n < 4) throw std::invalid_argument("pattern word needs n >= 4");
  std::string s = "a";
  for (int i = 0; i < n - 3; ++i) s += "ab";
  return Word::parse(s, Order::operator_order);
}

struct WalkConfig {
  int n = 0;
  Word word;
  double theta = 0.0;
  /// Basis state used for fidelity; defaults to the word's classical target,
  /// or 1 when the word does not synchronize.
  std::optional<int> target;

  int resolved_target() const {
    if (target) return *target;
    return is_synchronizing(walk_dfa(n), word).value_or(1);
  }
};

struct WalkTrace {
  /// distributions[s] is the position distribution after s steps.
  std::vector<std::vector<double>> distributions;
  DensityMatrix final_state;
  int target = 0;
  double fidelity = 0.0;
};

inline WalkTrace evolve(const WalkConfig& cfg, const DensityMatrix& system) {
  if (system.dim() != static_cast<std::size_t>(cfg.n))
    throw std::invalid_argument("walk state has dim " + std::to_string(system.dim()) + ", expected " +
                                std::to_string(cfg.n));
  const StepUnitary step = build_walk_step(cfg.n);
  const CoinOperator coin{cfg.theta};

  WalkTrace trace;
  trace.target = cfg.resolved_target();
  if (trace.target < 0 || trace.target >= cfg.n) throw std::out_of_range("walk target out of range");

  DensityMatrix rho = system;
  trace.distributions.push_back(rho.diagonal());
  for (Letter l : cfg.word.applied()) {
    rho = interact(rho, coin.applied_to(l), step.op);
    trace.distributions.push_back(rho.diagonal());
  }
  trace.fidelity = basis_fidelity(rho, static_cast<std::size_t>(trace.target));
  trace.final_state = std::move(rho);
  return trace;
}

inline WalkTrace evolve(const WalkConfig& cfg, const StateVector& system) {
  return evolve(cfg, DensityMatrix::pure(system));
}

struct SweepPoint {
  double theta = 0.0;
  double fidelity = 0.0;
};

/// Inclusive evenly spaced grid.
inline std::vector<double> linspace(double lo, double hi, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return out;
}

/// Final fidelity per theta, starting from the uniform superposition.
inline std::vector<SweepPoint> fidelity_sweep(int n, const Word& word, const std::vector<double>& thetas,
                                              std::optional<int> target = std::nullopt, unsigned threads = 1) {
  for (double t : thetas)
    if (t < 0.0 || t > M_PI / 2 + 1e-12) throw std::invalid_argument("theta grid must lie within [0, pi/2]");
  const DensityMatrix init = DensityMatrix::pure(StateVector::uniform(static_cast<std::size_t>(n)));
  std::vector<SweepPoint> out(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t i) {
    WalkConfig cfg{n, word, thetas[i], target};
    out[i] = {thetas[i], evolve(cfg, init).fidelity};
  });
  return out;
}

}  // namespace qsync
