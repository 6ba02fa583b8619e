#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qsync/kraus.hpp"

using namespace qsync;

namespace {

DensityMatrix projector(int n, int k) { return DensityMatrix::pure(StateVector::basis(n, k)); }

Word app(const char* s) { return Word::parse(s, Order::application); }

std::vector<int> applied_ints(const Word& w) {
  std::vector<int> out;
  for (Letter l : w.applied()) out.push_back(l == Letter::a ? 0 : 1);
  return out;
}

}  // namespace

TEST(Rotation, ZeroAngleProjectsOutExcludedState) {
  const Operator r = rotation({1, 2, 0, 0.0, 5});
  Matrix expected = Matrix::identity(5);
  expected(0, 0) = 0.0;
  EXPECT_EQ(max_abs_diff(r.matrix(), expected), 0.0);
}

TEST(Rotation, QuarterTurnMovesIToJ) {
  const Operator r = rotation({1, 2, 0, M_PI / 2, 4});
  const StateVector from_i = apply(r, StateVector::basis(4, 1));
  const StateVector from_j = apply(r, StateVector::basis(4, 2));
  EXPECT_NEAR(std::abs(from_i[2] - Complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(from_j[1] - Complex(-1.0)), 0.0, 1e-15);
  const StateVector killed = apply(r, StateVector::basis(4, 0));
  EXPECT_EQ(killed.norm_squared(), 0.0);
}

TEST(Rotation, MatchesOracleAndValidates) {
  for (double phi : {0.0, 0.4, 1.3, M_PI}) {
    EXPECT_LE(max_abs_diff(rotation({2, 3, 1, phi, 6}).matrix(), oracle::from_eigen(oracle::rotation(6, 2, 3, 1, phi))),
              1e-15);
  }
  EXPECT_THROW(rotation({1, 1, 0, 0.3, 4}), std::invalid_argument);
  EXPECT_THROW(rotation({1, 2, 2, 0.3, 4}), std::invalid_argument);
  EXPECT_THROW(rotation({1, 4, 0, 0.3, 4}), std::invalid_argument);
}

TEST(Channels, MatchOracleOperators) {
  for (int n : {3, 4, 5, 8}) {
    const ChannelPair p = build_channels(n, 0.7, 2.1);
    const oracle::KrausSet o = oracle::kraus(n, 0.7, 2.1);
    EXPECT_LE(max_abs_diff(p.a1.matrix(), oracle::from_eigen(o.a1)), 1e-14);
    EXPECT_LE(max_abs_diff(p.b1.matrix(), oracle::from_eigen(o.b1)), 1e-14);
    EXPECT_EQ(max_abs_diff(p.a2.matrix(), oracle::from_eigen(o.a2)), 0.0);
    EXPECT_EQ(max_abs_diff(p.b2.matrix(), oracle::from_eigen(o.b2)), 0.0);
  }
  EXPECT_THROW(build_channels(2, 0.0, 0.0), std::invalid_argument);
}

TEST(Channels, QuarterTurnAtFiveActsLikeDfa) {
  const int n = 5;
  const ChannelPair p = build_channels(n, M_PI / 2, M_PI / 2);
  const Dfa d = build_family(PermutationSpec::basic(n));
  for (int q = 0; q < n; ++q) {
    const StateVector va = apply(p.a1, StateVector::basis(n, q));
    const StateVector vb = apply(p.b1, StateVector::basis(n, q));
    if (q != 0) {
      EXPECT_NEAR(std::abs(va[d.delta_a()[q]]), 1.0, 1e-12) << q;
    }
    if (q != 1) {
      EXPECT_NEAR(std::abs(vb[d.delta_b()[q]]), 1.0, 1e-12) << q;
    }
  }
}

TEST(Channels, FirstOperatorIsPartialIsometry) {
  for (double phi : {0.0, 0.9, M_PI / 2, 2.5}) {
    const ChannelPair p = build_channels(6, phi, phi);
    Matrix expected = Matrix::identity(6);
    expected(0, 0) = 0.0;
    EXPECT_LE(max_abs_diff(p.a1.matrix().adjoint() * p.a1.matrix(), expected), kAlgebraTol);
    expected(0, 0) = 1.0;
    expected(1, 1) = 0.0;
    EXPECT_LE(max_abs_diff(p.b1.matrix().adjoint() * p.b1.matrix(), expected), kAlgebraTol);
  }
}

TEST(Channels, CompletenessOnAngleGrid) {
  for (int n : {3, 4, 5, 8})
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        const double pa = M_PI * i / 8, pb = M_PI * j / 8;
        EXPECT_LE(completeness_error(build_channels(n, pa, pb)), kAlgebraTol) << n << " " << pa << " " << pb;
        // Independent check on the oracle operators.
        const oracle::KrausSet o = oracle::kraus(n, pa, pb);
        const oracle::CMat id = oracle::CMat::Identity(n, n);
        EXPECT_LE((o.a1.adjoint() * o.a1 + o.a2.adjoint() * o.a2 - id).cwiseAbs().maxCoeff(), kAlgebraTol);
        EXPECT_LE((o.b1.adjoint() * o.b1 + o.b2.adjoint() * o.b2 - id).cwiseAbs().maxCoeff(), kAlgebraTol);
      }
}

TEST(ApplyChannel, Examples) {
  const ChannelPair zero = build_channels(5, 0.0, 0.0);
  EXPECT_LE(max_abs_diff(apply_channel(projector(5, 0), Letter::a, zero).matrix(), projector(5, 1).matrix()), 1e-15);
  const ChannelPair quarter = build_channels(5, M_PI / 2, M_PI / 2);
  EXPECT_LE(max_abs_diff(apply_channel(projector(5, 1), Letter::b, quarter).matrix(), projector(5, 0).matrix()),
            1e-15);
  EXPECT_THROW(apply_channel(projector(4, 0), Letter::a, quarter), std::invalid_argument);
}

TEST(ApplyChannel, PreservesTraceHermiticityAndPositivity) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 6;
    const DensityMatrix rho = oracle::random_density(n, rng);
    const ChannelPair p = build_channels(n, angle(rng), angle(rng));
    for (Letter l : {Letter::a, Letter::b}) {
      const DensityMatrix out = apply_channel(rho, l, p);
      const oracle::CMat m = oracle::to_eigen(out.matrix());
      EXPECT_NEAR(m.trace().real(), 1.0, kAlgebraTol);
      EXPECT_LE((m - m.adjoint()).cwiseAbs().maxCoeff(), kAlgebraTol);
      Eigen::SelfAdjointEigenSolver<oracle::CMat> es(m);
      EXPECT_GE(es.eigenvalues().minCoeff(), -kSpectralTol);
    }
  }
}

TEST(ClassicalShadow, QuarterTurnMapsProjectorsLikeDfa) {
  for (int n = 3; n <= 8; ++n) {
    const ChannelPair p = build_channels(n, M_PI / 2, M_PI / 2);
    const Dfa d = build_family(PermutationSpec::basic(n));
    for (int q = 0; q < n; ++q) {
      EXPECT_LE(max_abs_diff(apply_channel(projector(n, q), Letter::a, p).matrix(),
                             projector(n, d.delta_a()[q]).matrix()),
                kAlgebraTol)
          << "n=" << n << " q=" << q;
      EXPECT_LE(max_abs_diff(apply_channel(projector(n, q), Letter::b, p).matrix(),
                             projector(n, d.delta_b()[q]).matrix()),
                kAlgebraTol)
          << "n=" << n << " q=" << q;
    }
  }
}

TEST(RunChannelWord, AlternatingSequencesReset) {
  const int n = 5;
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(n);
  const DensityMatrix abab = run_channel_word(mixed, app("abab"), M_PI / 2, M_PI / 2, n);
  EXPECT_NEAR(basis_fidelity(abab, 0), 1.0, 1e-9);
  EXPECT_NEAR(purity(abab), 1.0, 1e-9);
  const DensityMatrix baba = run_channel_word(mixed, app("baba"), M_PI / 2, M_PI / 2, n);
  EXPECT_NEAR(basis_fidelity(baba, 1), 1.0, 1e-9);
  EXPECT_EQ(channel_target(app("abab"), n), 0);
  EXPECT_EQ(channel_target(app("baba"), n), 1);
}

TEST(RunChannelWord, EmptyWordIsIdentity) {
  std::mt19937_64 rng(59);
  const DensityMatrix rho = oracle::random_density(4, rng);
  EXPECT_EQ(max_abs_diff(run_channel_word(rho, Word(), 0.3, 0.4, 4).matrix(), rho.matrix()), 0.0);
}

TEST(RunChannelWord, MatchesOracleAtGenericAngles) {
  std::mt19937_64 rng(61);
  const Word w = app("abbab");
  for (int n : {3, 5, 7}) {
    const DensityMatrix rho = oracle::random_density(n, rng);
    const oracle::CMat expected = oracle::run_channels(oracle::to_eigen(rho.matrix()), applied_ints(w), 0.37, 2.2);
    EXPECT_LE(max_abs_diff(run_channel_word(rho, w, 0.37, 2.2, n).matrix(), oracle::from_eigen(expected)), 1e-12);
  }
}

TEST(RunChannelWord, OracleWordResetsRandomStates) {
  std::mt19937_64 rng(67);
  for (int n : {3, 5, 8}) {
    const Word w = *shortest_sync_word(build_family(PermutationSpec::basic(n)));
    const int target = channel_target(w, n);
    for (int trial = 0; trial < 20; ++trial) {
      const DensityMatrix out = run_channel_word(oracle::random_density(n, rng), w, M_PI / 2, M_PI / 2, n);
      EXPECT_LE(max_abs_diff(out.matrix(), projector(n, target).matrix()), 1e-9);
    }
  }
}

TEST(Sweep, ShapeAndCorners) {
  const int n = 5;
  const auto grid = linspace(0.0, M_PI, 5);
  for (InitialState init : {InitialState::maximally_mixed, InitialState::uniform_superposition}) {
    const auto rows = sweep(n, grid, init, app("abab"));
    ASSERT_EQ(rows.size(), 25U);
    // phi_a is the slow index.
    EXPECT_EQ(rows[1].phi_a, 0.0);
    EXPECT_EQ(rows[1].phi_b, grid[1]);
    EXPECT_EQ(rows[5].phi_a, grid[1]);
    const KrausPoint& mid = rows[2 * 5 + 2];
    EXPECT_NEAR(mid.phi_a, M_PI / 2, 1e-15);
    EXPECT_NEAR(mid.fidelity, 1.0, 1e-9);
    EXPECT_NEAR(mid.purity, 1.0, 1e-9);
    const oracle::CMat at_origin =
        oracle::run_channels(oracle::to_eigen(initial_state(init, n).matrix()), {0, 1, 0, 1}, 0.0, 0.0);
    EXPECT_NEAR(rows[0].fidelity, at_origin(0, 0).real(), 1e-12);
    for (const auto& r : rows) EXPECT_LE(r.purity, 1.0 + 1e-10);
  }
  EXPECT_THROW(sweep(n, {4.0}, InitialState::maximally_mixed, app("abab")), std::invalid_argument);
  EXPECT_THROW(sweep(n, grid, InitialState::maximally_mixed, app("abab"), 5), std::out_of_range);
}

TEST(Sweep, ContinuousInAngles) {
  const int n = 5;
  const auto grid = linspace(0.0, M_PI, 101);
  const auto rows = sweep(n, grid, InitialState::maximally_mixed, app("abab"), std::nullopt, 4);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
      EXPECT_LT(std::abs(rows[i * 101 + j + 1].fidelity - rows[i * 101 + j].fidelity), 0.2);
      EXPECT_LT(std::abs(rows[(j + 1) * 101 + i].fidelity - rows[j * 101 + i].fidelity), 0.2);
    }
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  const auto grid = linspace(0.0, M_PI, 21);
  const auto a = sweep(5, grid, InitialState::uniform_superposition, app("abab"), std::nullopt, 1);
  const auto b = sweep(5, grid, InitialState::uniform_superposition, app("abab"), std::nullopt, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].fidelity, b[i].fidelity);
    EXPECT_EQ(a[i].purity, b[i].purity);
  }
}
