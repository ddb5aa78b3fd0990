#include <gtest/gtest.h>

#include "latticelab/errors.hpp"
#include "latticelab/linalg.hpp"
#include "latticelab/spin_chain.hpp"
#include "latticelab/temperley_lieb.hpp"

using namespace latticelab;

TEST(LocalTerm, PauliDecompositionExact) {
  const auto q = LaurentGaussian::var('q');
  EXPECT_EQ(local_term(q), local_term_from_pauli(q, LaurentGaussian(GaussianRational::i())));
}

TEST(LocalTerm, IsAffineInTemperleyLiebGenerator) {
  // h = (q + q^-1) Id - 2 E' in the gauge where R(x) is in span{Id, E'}
  const auto q = LaurentQ::var('q');
  const auto e = vertex_tl_local(q, VertexGauge::r_matrix);
  const auto id = Operator<LaurentQ>::identity(2, 2);
  EXPECT_EQ(local_term(q), id * (q + q.inverse()) - e * LaurentQ(2));
}

TEST(Chain, BoundaryDifferencesCancelOnlyWhenPeriodic) {
  for (std::size_t n = 2; n <= 6; ++n) {
    EXPECT_TRUE(boundary_difference_sum<Rational>(n, ChainBoundary::periodic).is_zero());
    const auto open = boundary_difference_sum<Rational>(n, ChainBoundary::open);
    EXPECT_EQ(open, embed_one_site(pauli_z<Rational>(), 1, n) - embed_one_site(pauli_z<Rational>(), n, n));
  }
}

TEST(Chain, PeriodicChainIsXXZPlusConstant) {
  const Complex q(0.7);
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto h = chain_hamiltonian(q, n);
    const Complex delta = (q + 1.0 / q) * 0.5;
    const auto xxz = xxz_hamiltonian(delta, n);
    const auto shift = Operator<Complex>::identity(2, n) * (delta * static_cast<double>(n));
    EXPECT_LT(max_abs_diff(h, xxz + shift), 1e-13);
  }
}

TEST(Chain, SymbolicXXZEquivalence) {
  // exact in Q[q^±1] on 4 sites, periodic
  const auto q = LaurentQ::var('q');
  const LaurentQ half = LaurentQ(Rational(1, 2));
  const auto delta = (q + q.inverse()) * half;
  const auto shift = Operator<LaurentQ>::identity(2, 4) * (delta * LaurentQ(4));
  EXPECT_EQ(chain_hamiltonian(q, 4), xxz_hamiltonian(delta, 4) + shift);
}

TEST(Chain, HermitianForRealQ) {
  const auto h = chain_hamiltonian(Complex(0.6), 5);
  EXPECT_LT(max_abs_diff(h, h.adjoint()), 1e-15);
  const auto open = chain_hamiltonian(Complex(0.6), 5, ChainBoundary::open);
  EXPECT_LT(max_abs_diff(open, open.adjoint()), 1e-15);
}

TEST(Chain, InvertingQIsGlobalSpinFlip) {
  for (auto b : {ChainBoundary::periodic, ChainBoundary::open}) {
    EXPECT_LT(spin_flip_residual(Complex(0.6, 0.2), 5, b), 1e-14);
    const auto q = LaurentQ::var('q');
    EXPECT_EQ(spin_flip_residual(q, 4, b), 0.0);
  }
}

TEST(Chain, ConservesTotalSz) {
  const auto h = chain_hamiltonian(Complex(0.8), 6);
  EXPECT_LT(commutator_residual(h, total_sz<Complex>(6)), 1e-14);
}

TEST(Chain, TwoSiteSpectrumByHand) {
  // one bond plus its wrap: H = h + S h S on two sites
  const Complex q(0.5);
  const auto h = chain_hamiltonian(q, 2);
  const auto ev = hermitian_eigenvalues(h);
  // |00>, |11>: 2(q + q^-1); middle block [[0, 4], [4, 0]] after the q - q^-1 parts cancel
  std::vector<double> expect{-4.0, 4.0, 2.0 * (0.5 + 2.0), 2.0 * (0.5 + 2.0)};
  std::sort(expect.begin(), expect.end());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(ev[i], expect[i], 1e-12);
}

TEST(LogDerivative, AffineInHamiltonian) {
  const Complex q(0.8);
  const auto l = hamiltonian_from_log_derivative(q, 6, 1e-5);
  const auto fit = affine_fit(l, chain_hamiltonian(q, 6));
  EXPECT_LT(fit.residual, 1e-5);
  // the slope is 1/(q^-1 - q)
  EXPECT_NEAR(fit.beta.real(), 1.0 / (1.0 / 0.8 - 0.8), 1e-6);
  const auto rich = affine_fit(hamiltonian_from_log_derivative(q, 6, 1e-3, true), chain_hamiltonian(q, 6));
  EXPECT_LT(rich.residual, 1e-5);
}

TEST(LogDerivative, AffineFitDetectsMismatch) {
  const Complex q(0.8);
  const auto l = hamiltonian_from_log_derivative(q, 4, 1e-5);
  const auto fit = affine_fit(l, xxz_hamiltonian(Complex(0.3), 4));
  EXPECT_GT(fit.residual, 1e-2);
}

TEST(Charges, TransferMatricesHamiltonianAndSzCommute) {
  const auto r = conserved_charge_suite(Complex(0.8), 6, {1.1, 1.7, 0.4}, 1e-8, 9);
  EXPECT_LT(r.transfer_pairs, 1e-8);
  EXPECT_LT(r.transfer_hamiltonian, 1e-6);
  EXPECT_LT(r.sz_hamiltonian, 1e-12);
  EXPECT_LT(r.sz_transfer, 1e-8);
  EXPECT_EQ(r.common_eigenvectors, r.dimension);
  EXPECT_TRUE(r.pass());
  EXPECT_THROW(conserved_charge_suite(Complex(0.8), 9, {1.1}), CapError);
}

TEST(Charges, ParseBoundary) {
  EXPECT_EQ(parse_chain_boundary("open"), ChainBoundary::open);
  EXPECT_THROW(parse_chain_boundary("twisted"), ParseError);
}
