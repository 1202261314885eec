#include "qaoa/sim/density_matrix.hpp"
#include "qaoa/sim/dicke.hpp"
#include "qaoa/sim/measure.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qaoa;
using oracle::Mat;

namespace {

Mat dense(const DensityMatrix &rho) {
  const auto d = static_cast<Eigen::Index>(rho.dim());
  Mat m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      m(r, c) = rho.entry(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  return m;
}

DensityMatrix from_dense(const Mat &m, int n) {
  DensityMatrix rho(n);
  auto data = rho.data();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data[(static_cast<std::size_t>(r) << n) | static_cast<std::size_t>(c)] = m(r, c);
  return rho;
}

// Random full-rank mixed state.
Mat random_mixed(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  const Eigen::Index d = Eigen::Index{1} << n;
  Mat g(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) g(r, c) = oracle::cplx(nd(gen), nd(gen));
  Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

// Depolarizing channel in Pauli-twirl form: (1 - eta) rho + eta/4^k sum_P P rho P.
Mat depolarize(const Mat &rho, const std::vector<int> &qubits, double eta, int n) {
  const std::vector<Mat> paulis{oracle::I2(), oracle::X(), oracle::Y(), oracle::Z()};
  Mat twirl = Mat::Zero(rho.rows(), rho.cols());
  if (qubits.size() == 1) {
    for (const auto &p : paulis) {
      const Mat P = oracle::on_qubit(p, qubits[0], n);
      twirl += P * rho * P.adjoint();
    }
    twirl /= 4.0;
  } else {
    for (const auto &p : paulis)
      for (const auto &q : paulis) {
        const Mat P = oracle::two_body(p, qubits[0], q, qubits[1], n);
        twirl += P * rho * P.adjoint();
      }
    twirl /= 16.0;
  }
  return (1.0 - eta) * rho + eta * twirl;
}

} // namespace

TEST(DensityMatrix, NoiselessEvolutionIsPureProjector) {
  auto psi = prepare_dicke(4, 2);
  auto rho = DensityMatrix::from_statevector(psi);
  const std::vector<Gate> circuit{gates::rzz(0, 1, 0.4), gates::rxy(1, 2, 0.9), gates::rx(3, 0.3),
                                  gates::rxyzz(0, 3, -0.5, 0.2), gates::u(2, 0.1, 0.2, 0.3)};
  psi.apply(circuit);
  apply_noisy(rho, circuit, 0.0);
  for (std::size_t r = 0; r < psi.dim(); ++r)
    for (std::size_t c = 0; c < psi.dim(); ++c)
      ASSERT_NEAR(std::abs(rho.entry(r, c) - psi[r] * std::conj(psi[c])), 0.0, 1e-12);
}

TEST(DensityMatrix, GateMatchesConjugation) {
  const int n = 3;
  const Mat m = random_mixed(n, 1);
  for (const Gate &g : {gates::rx(1, 0.7), gates::cnot(2, 0), gates::rxy(0, 2, 1.3), gates::rxyzz(2, 1, 0.4, -0.9),
                        gates::u(0, 0.5, -1.0, 2.0)}) {
    auto rho = from_dense(m, n);
    rho.apply(g);
    // Unitary from the statevector simulator column by column.
    Mat u(8, 8);
    for (int col = 0; col < 8; ++col) {
      std::vector<cplx> a(8, 0.0);
      a[static_cast<std::size_t>(col)] = 1.0;
      auto psi = StateVector::from_amplitudes(n, a);
      psi.apply(g);
      for (int r = 0; r < 8; ++r) u(r, col) = psi[static_cast<std::size_t>(r)];
    }
    EXPECT_LT((dense(rho) - u * m * u.adjoint()).cwiseAbs().maxCoeff(), 1e-13) << to_string(g.kind);
  }
}

TEST(Depolarizing, SingleQubitExample) {
  DensityMatrix rho(1);
  apply_depolarizing(rho, {0}, 0.3);
  EXPECT_NEAR(rho.entry(0, 0).real(), 0.85, 1e-15);
  EXPECT_NEAR(rho.entry(1, 1).real(), 0.15, 1e-15);

  auto plus = DensityMatrix::from_statevector(prepare_plus(1));
  apply_depolarizing(plus, {0}, 0.3);
  EXPECT_NEAR(plus.entry(0, 1).real(), 0.35, 1e-15);
}

TEST(Depolarizing, FullStrengthGivesMaximallyMixed) {
  DensityMatrix rho(2);
  apply_depolarizing(rho, {0, 1}, 1.0);
  const auto mixed = DensityMatrix::maximally_mixed(2);
  for (std::size_t k = 0; k < rho.data().size(); ++k) EXPECT_NEAR(std::abs(rho.data()[k] - mixed.data()[k]), 0.0, 1e-15);
}

TEST(Depolarizing, MatchesPauliTwirlOracle) {
  const int n = 4;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Mat m = random_mixed(n, seed);
    const double eta = 0.07 * static_cast<double>(seed);
    const std::vector<std::vector<int>> targets{{static_cast<int>(seed % 4)}, {0, 3}, {2, 1}, {3, 0}};
    for (const auto &t : targets) {
      auto rho = from_dense(m, n);
      apply_depolarizing(rho, std::span<const int>(t), eta);
      EXPECT_LT((dense(rho) - depolarize(m, t, eta, n)).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(Depolarizing, PreservesTraceAndHermiticity) {
  const int n = 3;
  auto rho = from_dense(random_mixed(n, 8), n);
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 30; ++k) {
    const std::vector<Gate> c{gates::rxyzz(k % 3, (k + 1) % 3, u(gen), u(gen)), gates::rx(k % 3, u(gen))};
    apply_noisy(rho, c, 0.05);
  }
  EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-12);
  const Mat d = dense(rho);
  EXPECT_LT((d - d.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
  Eigen::SelfAdjointEigenSolver<Mat> es(d);
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
}

TEST(Depolarizing, LinearInState) {
  const int n = 3;
  const Mat a = random_mixed(n, 3), b = random_mixed(n, 4);
  const double t = 0.3;
  auto ra = from_dense(a, n), rb = from_dense(b, n), rab = from_dense(t * a + (1 - t) * b, n);
  const std::vector<Gate> c{gates::rxy(0, 1, 0.3), gates::rzz(1, 2, 0.8), gates::h(2)};
  for (auto *r : {&ra, &rb, &rab}) apply_noisy(*r, c, 0.12);
  EXPECT_LT((dense(rab) - (t * dense(ra) + (1 - t) * dense(rb))).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Depolarizing, NoisyCircuitMatchesDenseOracle) {
  const int n = 3;
  const double eta = 0.04;
  const Mat start = random_mixed(n, 5);
  const std::vector<Gate> circuit{gates::rxy(0, 2, 0.6), gates::rz(1, 0.2), gates::rzz(1, 2, -0.4)};
  auto rho = from_dense(start, n);
  apply_noisy(rho, circuit, eta);

  Mat m = start;
  for (const auto &e : lower(circuit)) {
    auto tmp = from_dense(m, n);
    tmp.apply(e);
    m = dense(tmp);
    std::vector<int> t{e.targets[0]};
    if (e.arity() == 2) t.push_back(e.targets[1]);
    m = depolarize(m, t, eta, n);
  }
  EXPECT_LT((dense(rho) - m).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Depolarizing, MaximallyMixedIsFixedPoint) {
  auto rho = DensityMatrix::maximally_mixed(3);
  apply_noisy(rho, std::vector<Gate>{gates::rxyzz(0, 1, 0.3, 0.1), gates::u(2, 1, 2, 3)}, 0.2);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) EXPECT_NEAR(std::abs(rho.entry(r, c) - (r == c ? 0.125 : 0.0)), 0.0, 1e-15);
}

TEST(Depolarizing, MaximallyMixedExpectationIsMeanEnergy) {
  IsingModel m;
  m.n = 3;
  m.W = Eigen::MatrixXd::Zero(3, 3);
  m.W(0, 1) = 0.7;
  m.W(1, 2) = -0.2;
  m.w = Eigen::Vector3d(0.1, -0.5, 0.3);
  m.c = 1.5;
  const auto e = diagonal_energies(m);
  double mean = 0.0;
  for (double x : e) mean += x / 8.0;
  EXPECT_NEAR(expectation_diagonal(DensityMatrix::maximally_mixed(3), m), mean, 1e-14);
  EXPECT_NEAR(mean, 1.5, 1e-14);
}

TEST(Depolarizing, RejectsBadArguments) {
  DensityMatrix rho(2);
  EXPECT_THROW(apply_depolarizing(rho, {0}, 1.5), std::invalid_argument);
  EXPECT_THROW(apply_depolarizing(rho, {0}, -0.1), std::invalid_argument);
  EXPECT_THROW(apply_depolarizing(rho, {2}, 0.1), std::out_of_range);
  EXPECT_THROW(apply_depolarizing(rho, {1, 1}, 0.1), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(kMaxDensityMatrixQubits + 1), std::length_error);
}

TEST(Noise, Normalization) {
  EXPECT_DOUBLE_EQ(normalize_noise(0.5, 100), 0.005);
  EXPECT_THROW(normalize_noise(0.5, 0), std::invalid_argument);
  EXPECT_THROW(normalize_noise(5.0, 2), std::invalid_argument);
  EXPECT_DOUBLE_EQ(per_gate_eta({0.01, false, 0.0}, 40), 0.01);
  EXPECT_DOUBLE_EQ(per_gate_eta({0.0, true, 0.8}, 40), 0.02);
  EXPECT_TRUE(is_noiseless({0.0, true, 0.0}));
  EXPECT_FALSE(is_noiseless({0.1, false, 0.0}));
}
