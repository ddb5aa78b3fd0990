#include <gtest/gtest.h>

#include <random>

#include "latticelab/errors.hpp"
#include "latticelab/linalg.hpp"
#include "latticelab/operator.hpp"

using namespace latticelab;

namespace {

Operator<Rational> random_op(std::mt19937& rng, std::size_t d, std::size_t n) {
  std::uniform_int_distribution<int> dist(-3, 3);
  Operator<Rational> a(d, n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) a(i, j) = Rational(dist(rng));
  return a;
}

}  // namespace

TEST(Operator, KronMixedProduct) {
  std::mt19937 rng(7);
  const auto a = random_op(rng, 2, 1), b = random_op(rng, 2, 1);
  const auto c = random_op(rng, 2, 1), d = random_op(rng, 2, 1);
  EXPECT_EQ(kron(a, b) * kron(c, d), kron(a * c, b * d));
}

TEST(Operator, SiteOneIsMostSignificant) {
  auto z = pauli_z<Rational>();
  auto op = embed_one_site(z, 1, 3);
  // basis index 4 = |100>: site 1 is down
  EXPECT_EQ(op(4, 4), Rational(-1));
  EXPECT_EQ(op(1, 1), Rational(1));
}

TEST(Operator, FlipSwapsFactors) {
  std::mt19937 rng(3);
  const auto a = random_op(rng, 3, 1), b = random_op(rng, 3, 1);
  const auto s = flip_operator<Rational>(3);
  EXPECT_EQ(s * kron(a, b) * s, kron(b, a));
  EXPECT_EQ(s * s, (Operator<Rational>::identity(3, 2)));
}

TEST(Operator, WrapEmbeddingIsConjugatedByShift) {
  std::mt19937 rng(11);
  const auto r = random_op(rng, 2, 2);
  const std::size_t n = 4;
  const auto shift = cyclic_shift<Rational>(2, n);
  // shifting sites n-1,n onto n,1 carries the (n-1,n) embedding to the wrap
  const auto moved = shift * embed_two_site(r, n - 1, n) * inverse(shift);
  EXPECT_EQ(moved, embed_wrap(r, n));
}

TEST(Operator, FarEmbeddingsCommute) {
  std::mt19937 rng(5);
  const auto a = random_op(rng, 2, 2), b = random_op(rng, 2, 2);
  EXPECT_EQ(commutator_residual(embed_two_site(a, 1, 4), embed_two_site(b, 3, 4)), 0.0);
}

TEST(Operator, ExactInverse) {
  std::mt19937 rng(13);
  auto a = random_op(rng, 2, 2) + Operator<Rational>::identity(2, 2) * Rational(10);
  EXPECT_EQ(a * inverse(a), (Operator<Rational>::identity(2, 2)));
  Operator<Rational> singular(2, 1);
  EXPECT_THROW(inverse(singular), DomainError);
}

TEST(Operator, ShapeMismatchThrows) {
  Operator<Rational> a(2, 1), b(2, 2);
  EXPECT_THROW(a + b, ShapeError);
  EXPECT_THROW(a * b, ShapeError);
  EXPECT_THROW(embed_two_site(b, 3, 3), ShapeError);
}

TEST(Operator, SiteCapRefusesLargeSpaces) {
  EXPECT_THROW((Operator<Complex>(2, static_cast<std::size_t>(max_sites()) + 1)), CapError);
}

TEST(Operator, PauliAlgebra) {
  const Complex i(0.0, 1.0);
  const auto x = pauli_x<Complex>(), y = pauli_y<Complex>(i), z = pauli_z<Complex>();
  EXPECT_LT(max_abs_diff(x * y, z * i), 1e-15);
  EXPECT_LT(max_abs_diff(y * y, Operator<Complex>::identity(2, 1)), 1e-15);
}

TEST(Linalg, HermitianSpectrumIsSorted) {
  const auto x = pauli_x<Complex>();
  const auto ev = hermitian_eigenvalues(kron(x, x));
  ASSERT_EQ(ev.size(), 4u);
  EXPECT_NEAR(ev.front(), -1.0, 1e-12);
  EXPECT_NEAR(ev.back(), 1.0, 1e-12);
}
