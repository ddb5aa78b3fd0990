#ifndef LATTICELAB_YANG_BAXTER_HPP
#define LATTICELAB_YANG_BAXTER_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "latticelab/errors.hpp"
#include "latticelab/laurent.hpp"
#include "latticelab/operator.hpp"
#include "latticelab/scalar.hpp"

// Conventions
// -----------
// All R-matrices here are in "braid form": R(1) = -Id and the q = 1 member
// is the flip. The spectral parameter is multiplicative, so the Yang-Baxter
// equation reads R12(x) R23(xy) R12(y) = R23(y) R12(xy) R23(x).
//
// Two different q's appear in the theory. Every function below takes the
// R-matrix q (written q). The Hecke-algebra parameter of the relation
// g^2 = (q_H - 1) g + q_H is q_H = q^2.

namespace latticelab {

namespace detail {

template <class S>
bool is_pole(const S& denominator, const S& scale) {
  using T = ScalarTraits<S>;
  if constexpr (T::exact) {
    (void)scale;
    return T::is_zero(denominator);
  } else {
    return T::magnitude(denominator) <= 1e-13 * std::max(1.0, T::magnitude(scale));
  }
}

}  // namespace detail

/// xq - x^-1 q^-1, the denominator of the six-vertex prefactor.
template <class S>
S six_vertex_denominator(const S& q, const S& x) {
  return x * q - inverse(x) * inverse(q);
}

/// The 4x4 matrix of the six-vertex R-matrix without its scalar prefactor.
/// Every entry is a Laurent polynomial in (q, x), so this is the object used
/// for exact identities.
template <class S>
Operator<S> six_vertex_numerator(const S& q, const S& x) {
  const S qi = inverse(q);
  const S xi = inverse(x);
  Operator<S> n(2, 2);
  n(0, 0) = x * qi - xi * q;
  n(1, 1) = xi * (qi - q);
  n(1, 2) = x - xi;
  n(2, 1) = x - xi;
  n(2, 2) = x * (qi - q);
  n(3, 3) = x * qi - xi * q;
  return n;
}

/// R_q(x): numerator divided by xq - x^-1 q^-1. A vanishing denominator is a
/// PoleError, never renormalized away.
template <class S>
Operator<S> six_vertex_r(const S& q, const S& x) {
  using T = ScalarTraits<S>;
  if (T::is_zero(q) || T::is_zero(x)) throw PoleError("six-vertex R needs nonzero q and x");
  const S den = six_vertex_denominator(q, x);
  if (detail::is_pole(den, x * q)) throw PoleError("six-vertex R has a pole: xq = x^-1 q^-1");
  return six_vertex_numerator(q, x) * T::inverse(den);
}

/// lim_{x->0} R_q(x), written out analytically.
template <class S>
Operator<S> braid_limit(const S& q) {
  using T = ScalarTraits<S>;
  if (T::is_zero(q)) throw PoleError("braid limit needs nonzero q");
  const S q2 = q * q;
  Operator<S> r(2, 2);
  r(0, 0) = q2;
  r(1, 1) = q2 - T::one();
  r(1, 2) = q;
  r(2, 1) = q;
  r(3, 3) = q2;
  return r;
}

/// Inverse of the braid limit, q^-2 (R - (q^2 - 1)); exact for Laurent q.
template <class S>
Operator<S> braid_limit_inverse(const S& q) {
  using T = ScalarTraits<S>;
  const S q2 = q * q;
  return (braid_limit(q) - Operator<S>::identity(2, 2) * (q2 - T::one())) * T::inverse(q2);
}

/// A spectral-parameter family x -> R(x) of two-site operators.
template <class S>
struct SpectralRMatrix {
  S q;
  std::function<Operator<S>(const S&)> evaluate;
  std::string name;

  Operator<S> operator()(const S& x) const { return evaluate(x); }

  static SpectralRMatrix six_vertex(const S& q) {
    return {q, [q](const S& x) { return six_vertex_r(q, x); }, "six-vertex"};
  }
};

struct ResidualReport {
  double residual = 0.0;  ///< max-entry magnitude of LHS - RHS
  double scale = 0.0;     ///< max-entry magnitude of LHS
  double tolerance = 0.0;
  bool pass = false;
};

inline ResidualReport make_report(double residual, double scale, double tol) {
  return {residual, scale, tol, residual <= tol * std::max(1.0, scale)};
}

/// Both sides of the multiplicative Yang-Baxter equation on three sites.
template <class S>
std::pair<Operator<S>, Operator<S>> ybe_sides(const Operator<S>& rx, const Operator<S>& rxy, const Operator<S>& ry) {
  auto lhs = embed_two_site(rx, 1, 3) * embed_two_site(rxy, 2, 3) * embed_two_site(ry, 1, 3);
  auto rhs = embed_two_site(ry, 2, 3) * embed_two_site(rxy, 1, 3) * embed_two_site(rx, 2, 3);
  return {std::move(lhs), std::move(rhs)};
}

/// R12(x) R23(xy) R12(y) - R23(y) R12(xy) R23(x). Poles propagate as PoleError.
template <class S>
ResidualReport check_ybe(const SpectralRMatrix<S>& r, const S& x, const S& y, double tol = kDefaultTolerance) {
  auto [lhs, rhs] = ybe_sides(r(x), r(x * y), r(y));
  return make_report(max_abs_diff(lhs, rhs), lhs.max_abs(), tol);
}

/// R12 R23 R12 - R23 R12 R23.
template <class S>
ResidualReport check_braid_relation(const Operator<S>& r, double tol = kDefaultTolerance) {
  auto lhs = embed_two_site(r, 1, 3) * embed_two_site(r, 2, 3) * embed_two_site(r, 1, 3);
  auto rhs = embed_two_site(r, 2, 3) * embed_two_site(r, 1, 3) * embed_two_site(r, 2, 3);
  return make_report(max_abs_diff(lhs, rhs), lhs.max_abs(), tol);
}

/// g = qE - Id. With E^2 = (q + q^-1) E this satisfies the Hecke relation
/// g^2 = (q^2 - 1) g + q^2, i.e. Hecke parameter q_H = q^2.
template <class S>
Operator<S> hecke_from_tl(const Operator<S>& e, const S& q) {
  return e * q - Operator<S>::identity(e.local_dim(), e.sites());
}

/// Max-entry residual of g^2 - (q_H - 1) g - q_H Id.
template <class S>
double hecke_residual(const Operator<S>& g, const S& q_hecke) {
  using T = ScalarTraits<S>;
  auto id = Operator<S>::identity(g.local_dim(), g.sites());
  return (g * g - g * (q_hecke - T::one()) - id * q_hecke).max_abs();
}

/// Generators G_1..G_{n-1} on n sites normalized so that G + G^-1 = k Id.
template <class S>
struct HeckeGenerators {
  std::vector<Operator<S>> generators;
  S k;

  std::size_t sites() const { return generators.empty() ? 0 : generators.front().sites(); }
  const Operator<S>& operator[](std::size_t i) const { return generators.at(i - 1); }
  /// G_i^-1 = k - G_i.
  Operator<S> inverse_of(std::size_t i) const {
    const auto& g = (*this)[i];
    return Operator<S>::identity(g.local_dim(), g.sites()) * k - g;
  }
};

/// Rescale a Hecke generator g (parameter q_H) to G = c g with c^2 = -1/q_H;
/// then G + G^-1 = k Id with k = -(q_H - 1)/(c q_H). The caller supplies the
/// branch of c.
template <class S>
std::pair<Operator<S>, S> normalize_hecke(const Operator<S>& g, const S& q_hecke, const S& c) {
  using T = ScalarTraits<S>;
  S k = -(q_hecke - T::one()) * T::inverse(c * q_hecke);
  return {g * c, k};
}

/// Embed a normalized local generator at every bond of n sites.
template <class S>
HeckeGenerators<S> hecke_generators(const Operator<S>& local, const S& k, std::size_t n) {
  HeckeGenerators<S> h{{}, k};
  for (std::size_t i = 1; i < n; ++i) h.generators.push_back(embed_two_site(local, i, n));
  return h;
}

/// Normalized generator built from the inverse braid limit: G = iq R^-1,
/// k = i(q^-1 - q). Baxterizing it gives i(xq - x^-1 q^-1) R_q(x).
/// `imaginary_unit` lets exact Gaussian scalars reuse this.
template <class S>
HeckeGenerators<S> six_vertex_hecke(const S& q, std::size_t n, const S& imaginary_unit) {
  const S c = imaginary_unit * q;
  S k = imaginary_unit * (inverse(q) - q);
  return hecke_generators(braid_limit_inverse(q) * c, k, n);
}

inline HeckeGenerators<Complex> six_vertex_hecke(const Complex& q, std::size_t n = 2) {
  return six_vertex_hecke(q, n, Complex{0.0, 1.0});
}

/// Residual of G (k - G) = Id, the normalization G + G^-1 = k Id.
template <class S>
double hecke_normalization_residual(const HeckeGenerators<S>& h) {
  double r = 0.0;
  for (std::size_t i = 1; i <= h.generators.size(); ++i) {
    auto id = Operator<S>::identity(h[i].local_dim(), h[i].sites());
    r = std::max(r, max_abs_diff(h[i] * h.inverse_of(i), id));
  }
  return r;
}

/// R_i(x) = x G_i + x^-1 G_i^-1.
template <class S>
Operator<S> baxterize(const HeckeGenerators<S>& g, const S& x, std::size_t i) {
  using T = ScalarTraits<S>;
  if (T::is_zero(x)) throw PoleError("baxterize at x = 0");
  if (i < 1 || i > g.generators.size()) throw ShapeError("generator index out of range");
  return g[i] * x + g.inverse_of(i) * T::inverse(x);
}

/// The two-site family x -> x G + x^-1 G^-1 as a SpectralRMatrix.
template <class S>
SpectralRMatrix<S> baxterized_family(const HeckeGenerators<S>& local, const S& q) {
  if (local.sites() != 2) throw ShapeError("baxterized family needs a two-site generator");
  return {q, [local](const S& x) { return baxterize(local, x, 1); }, "baxterized"};
}

/// Residual of G1 G2^-1 G1 + G1^-1 G2 G1^-1 = G2 G1^-1 G2 + G2^-1 G1 G2^-1.
/// Inverses are computed directly, so non-invertible inputs raise DomainError.
template <class S>
ResidualReport check_baxter_condition(const Operator<S>& g1, const Operator<S>& g2, double tol = kDefaultTolerance) {
  const auto g1i = inverse(g1);
  const auto g2i = inverse(g2);
  auto lhs = g1 * g2i * g1 + g1i * g2 * g1i;
  auto rhs = g2 * g1i * g2 + g2i * g1 * g2i;
  return make_report(max_abs_diff(lhs, rhs), lhs.max_abs(), tol);
}

/// Exact checks in the Laurent ring Q[q^±1, x^±1, y^±1]. Each property is
/// stated with the prefactor cleared, writing R = N / f:
///   (i)   N(1, x) = f(1, x) S
///   (ii)  N(q, 1) = -f(q, 1) Id
///   (iii) N(q, x) N(q, x^-1) = f(q, x) f(q, x^-1) Id
///   (iv)  braid_limit(q) = (x N)|_{x=0} / (x f)|_{x=0} and satisfies the braid relation
///   ybe   N12(x) N23(xy) N12(y) = N23(y) N12(xy) N23(x) (the scalar factors agree)
struct ExactPropertyReport {
  bool flip_at_q_one = false;
  bool minus_identity_at_x_one = false;
  bool inverse_relation = false;
  bool braid_limit_is_limit = false;
  bool braid_relation = false;
  bool ybe = false;
  bool all() const {
    return flip_at_q_one && minus_identity_at_x_one && inverse_relation && braid_limit_is_limit && braid_relation &&
           ybe;
  }
};

inline ExactPropertyReport exact_six_vertex_properties() {
  using P = LaurentQ;
  const P q = P::var('q'), x = P::var('x'), y = P::var('y'), one(1);
  ExactPropertyReport r;
  r.flip_at_q_one = six_vertex_numerator(one, x) == flip_operator<P>(2) * six_vertex_denominator(one, x);
  r.minus_identity_at_x_one =
      six_vertex_numerator(q, one) == Operator<P>::identity(2, 2) * (-six_vertex_denominator(q, one));
  r.inverse_relation = six_vertex_numerator(q, x) * six_vertex_numerator(q, x.inverse()) ==
                       Operator<P>::identity(2, 2) * (six_vertex_denominator(q, x) * six_vertex_denominator(q, x.inverse()));
  auto at_zero = [](const P& p) { return p.substitute('x', P{}); };
  const auto xn = (six_vertex_numerator(q, x) * x).map<P>(at_zero);
  const P xf = at_zero(six_vertex_denominator(q, x) * x);
  r.braid_limit_is_limit = xn * xf.inverse() == braid_limit(q);
  r.braid_relation = check_braid_relation(braid_limit(q), 0.0).residual == 0.0;
  auto [lhs, rhs] = ybe_sides(six_vertex_numerator(q, x), six_vertex_numerator(q, x * y), six_vertex_numerator(q, y));
  r.ybe = lhs == rhs;
  return r;
}

}  // namespace latticelab

#endif  // LATTICELAB_YANG_BAXTER_HPP
