#include <gtest/gtest.h>

#include <random>

#include "latticelab/errors.hpp"
#include "latticelab/temperley_lieb.hpp"
#include "latticelab/yang_baxter.hpp"
#include "oracles.hpp"

using namespace latticelab;

namespace {

oracle::Mat4 to_mat4(const Operator<Complex>& r) {
  oracle::Mat4 m(4, std::vector<Complex>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m[i][j] = r(i, j);
  return m;
}

Complex unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));
  return std::polar(1.0, phase(rng));
}

}  // namespace

TEST(SixVertex, MatchesEntryByEntryFormula) {
  for (auto [q, x] : {std::pair<Complex, Complex>{0.8, 1.3}, {Complex(0.6, 0.5), Complex(-0.4, 1.1)}}) {
    const auto lib = six_vertex_r(q, x);
    const auto ref = oracle::six_vertex_direct(q, x);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) EXPECT_LT(std::abs(lib(i, j) - ref[i][j]), 1e-14);
  }
}

TEST(SixVertex, YangBaxterAgreesWithIndexSums) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    const Complex q = unit(rng), x = unit(rng), y = unit(rng);
    const auto fam = SpectralRMatrix<Complex>::six_vertex(q);
    double oracle_res = 0.0;
    try {
      oracle_res = oracle::ybe_residual(to_mat4(fam(x)), to_mat4(fam(x * y)), to_mat4(fam(y)));
    } catch (const PoleError&) {
      continue;
    }
    const auto rep = check_ybe(fam, x, y);
    EXPECT_LT(rep.residual, 1e-10);
    EXPECT_LT(oracle_res, 1e-10);
  }
}

TEST(SixVertex, YangBaxterFailsForGenericPerturbation) {
  const Complex q = 0.7, x = 1.3, y = 0.6;
  auto bad = [&](const Complex& z) {
    auto r = six_vertex_r(q, z);
    r(1, 2) += 0.05 * z;
    return r;
  };
  EXPECT_GT(oracle::ybe_residual(to_mat4(bad(x)), to_mat4(bad(x * y)), to_mat4(bad(y))), 1e-3);
}

TEST(SixVertex, PropertiesAtSamplePoints) {
  const Complex q(0.7, 0.2), x(1.4, -0.3);
  const auto id = Operator<Complex>::identity(2, 2);
  EXPECT_LT(max_abs_diff(six_vertex_r(Complex(1.0), x), flip_operator<Complex>(2)), 1e-14);
  EXPECT_LT(max_abs_diff(six_vertex_r(q, Complex(1.0)), -id), 1e-14);
  EXPECT_LT(max_abs_diff(six_vertex_r(q, x) * six_vertex_r(q, 1.0 / x), id), 1e-13);
  EXPECT_LT(max_abs_diff(six_vertex_r(q, Complex(1e-8)), braid_limit(q)), 1e-6);
}

TEST(SixVertex, ExactIdentities) {
  const auto r = exact_six_vertex_properties();
  EXPECT_TRUE(r.flip_at_q_one);
  EXPECT_TRUE(r.minus_identity_at_x_one);
  EXPECT_TRUE(r.inverse_relation);
  EXPECT_TRUE(r.braid_limit_is_limit);
  EXPECT_TRUE(r.braid_relation);
  EXPECT_TRUE(r.ybe);
}

TEST(SixVertex, PoleIsReported) {
  const Complex q = 0.5;
  EXPECT_THROW(six_vertex_r(q, 1.0 / q), PoleError);
  EXPECT_THROW(six_vertex_r(Complex(0.0), Complex(1.0)), PoleError);
}

TEST(SixVertex, BraidLimitInverseIsExact) {
  const auto q = LaurentQ::var('q');
  EXPECT_EQ(braid_limit(q) * braid_limit_inverse(q), (Operator<LaurentQ>::identity(2, 2)));
}

TEST(Hecke, FromTemperleyLiebGeneratorSymbolically) {
  const auto q = LaurentQ::var('q');
  for (auto gauge : {VertexGauge::displayed, VertexGauge::r_matrix}) {
    const auto g = hecke_from_tl(vertex_tl_local(q, gauge), q);
    EXPECT_EQ(hecke_residual(g, q * q), 0.0);
  }
}

TEST(Hecke, BraidLimitIsHeckeGenerator) {
  // the braid limit is q (q E' + ...) up to normalization: check its quadratic relation
  const auto q = LaurentQ::var('q');
  const auto r = braid_limit(q);
  const auto id = Operator<LaurentQ>::identity(2, 2);
  const auto q2 = q * q;
  EXPECT_EQ(r * r, r * (q2 - LaurentQ(1)) + id * q2);
}

TEST(Baxterization, ReproducesSixVertexUpToScalar) {
  for (Complex q : {Complex(0.8), Complex(0.3, 0.9)}) {
    const auto g = six_vertex_hecke(q, 2);
    for (Complex x : {Complex(1.3), Complex(0.4, -0.7)}) {
      const Complex scale = Complex(0.0, 1.0) * six_vertex_denominator(q, x);
      EXPECT_LT(max_abs_diff(baxterize(g, x, 1), six_vertex_r(q, x) * scale), 1e-12);
    }
    EXPECT_LT(hecke_normalization_residual(six_vertex_hecke(q, 4)), 1e-12);
    const auto fam = baxterized_family(g, q);
    EXPECT_LT(check_ybe(fam, Complex(1.3), Complex(0.6)).residual, 1e-10);
  }
}

TEST(Baxterization, BaxterConditionHoldsForHecke) {
  const auto g = six_vertex_hecke(Complex(0.8), 3);
  EXPECT_TRUE(check_baxter_condition(g[1], g[2]).pass);
}

TEST(Baxterization, FlipFailsNormalization) {
  // S satisfies the braid relation but S + S^-1 = 2 S is not a multiple of Id
  const auto s3 = hecke_generators(flip_operator<Complex>(2), Complex(2.0), 3);
  EXPECT_GT(hecke_normalization_residual(s3), 0.5);
}

TEST(Baxterization, ExactGaussianVersion) {
  const GaussianRational i = GaussianRational::i();
  const GaussianRational q(Rational(2, 3));
  const auto g = six_vertex_hecke(q, 3, i);
  EXPECT_EQ(hecke_normalization_residual(g), 0.0);
  const GaussianRational x(Rational(5, 4));
  const auto r = six_vertex_r(q, x) * (i * six_vertex_denominator(q, x));
  EXPECT_EQ(baxterize(g, x, 1), embed_two_site(r, 1, 3));
}
