#ifndef LATTICELAB_SPIN_CHAIN_HPP
#define LATTICELAB_SPIN_CHAIN_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "latticelab/errors.hpp"
#include "latticelab/lattice_models.hpp"
#include "latticelab/linalg.hpp"
#include "latticelab/operator.hpp"
#include "latticelab/yang_baxter.hpp"

namespace latticelab {

enum class ChainBoundary { periodic, open };

inline std::string to_string(ChainBoundary b) { return b == ChainBoundary::periodic ? "periodic" : "open"; }

inline ChainBoundary parse_chain_boundary(const std::string& s) {
  if (s == "periodic") return ChainBoundary::periodic;
  if (s == "open") return ChainBoundary::open;
  throw ParseError("unknown chain boundary '" + s + "'");
}

/// Nearest-neighbour term
///   [[q^-1+q, 0, 0, 0], [0, q-q^-1, 2, 0], [0, 2, q^-1-q, 0], [0, 0, 0, q^-1+q]].
template <class S>
Operator<S> local_term(const S& q) {
  using T = ScalarTraits<S>;
  if (T::is_zero(q)) throw DomainError("local term needs q != 0");
  const S qi = T::inverse(q);
  Operator<S> h(2, 2);
  h(0, 0) = qi + q;
  h(1, 1) = -(qi - q);
  h(1, 2) = T::from_int(2);
  h(2, 1) = T::from_int(2);
  h(2, 2) = qi - q;
  h(3, 3) = qi + q;
  return h;
}

/// σx⊗σx + σy⊗σy, written without an imaginary unit.
template <class S>
Operator<S> xx_plus_yy() {
  Operator<S> h(2, 2);
  h(1, 2) = ScalarTraits<S>::from_int(2);
  h(2, 1) = ScalarTraits<S>::from_int(2);
  return h;
}

/// σx⊗σx + σy⊗σy + ½[(q+q^-1)(Id + σz⊗σz) + (q-q^-1)(σz⊗Id - Id⊗σz)],
/// assembled from the Pauli matrices themselves (needs an exact or complex i).
template <class S>
Operator<S> local_term_from_pauli(const S& q, const S& imaginary_unit) {
  using T = ScalarTraits<S>;
  const S qi = T::inverse(q);
  const S half = T::inverse(T::from_int(2));
  const auto x = pauli_x<S>();
  const auto y = pauli_y<S>(imaginary_unit);
  const auto z = pauli_z<S>();
  const auto id1 = Operator<S>::identity(2, 1);
  const auto id2 = Operator<S>::identity(2, 2);
  return kron(x, x) + kron(y, y) +
         ((id2 + kron(z, z)) * (q + qi) + (kron(z, id1) - kron(id1, z)) * (q - qi)) * half;
}

/// Sum of embedded local terms; periodic adds the (n,1) wrap term.
template <class S>
Operator<S> chain_sum(const Operator<S>& local, std::size_t n, ChainBoundary boundary) {
  if (n < 2) throw ShapeError("chain needs at least two sites");
  Operator<S> h(local.local_dim(), n);
  for (std::size_t i = 1; i < n; ++i) h += embed_two_site(local, i, n);
  if (boundary == ChainBoundary::periodic) h += embed_wrap(local, n);
  return h;
}

template <class S>
Operator<S> chain_hamiltonian(const S& q, std::size_t n, ChainBoundary boundary = ChainBoundary::periodic) {
  return chain_sum(local_term(q), n, boundary);
}

/// Σ_i (σx σx + σy σy + Δ σz σz) over nearest neighbours.
template <class S>
Operator<S> xxz_hamiltonian(const S& delta, std::size_t n, ChainBoundary boundary = ChainBoundary::periodic) {
  const auto z = pauli_z<S>();
  return chain_sum(xx_plus_yy<S>() + kron(z, z) * delta, n, boundary);
}

/// Operator Σ_i (σz_i - σz_{i+1}) over the chain bonds; zero when periodic,
/// σz_1 - σz_n when open.
template <class S>
Operator<S> boundary_difference_sum(std::size_t n, ChainBoundary boundary) {
  const auto z = pauli_z<S>();
  const auto id1 = Operator<S>::identity(2, 1);
  return chain_sum(kron(z, id1) - kron(id1, z), n, boundary);
}

template <class S>
double xxz_cancellation_check(std::size_t n, ChainBoundary boundary = ChainBoundary::periodic) {
  return boundary_difference_sum<S>(n, boundary).max_abs();
}

/// Total σz.
template <class S>
Operator<S> total_sz(std::size_t n) {
  Operator<S> s(2, n);
  for (std::size_t i = 1; i <= n; ++i) s += embed_one_site(pauli_z<S>(), i, n);
  return s;
}

/// ⊗σx, the global spin flip.
template <class S>
Operator<S> global_flip(std::size_t n) {
  Operator<S> f = pauli_x<S>();
  for (std::size_t i = 1; i < n; ++i) f = kron(f, pauli_x<S>());
  return f;
}

/// Residual of H(q^-1) = F H(q) F with F the global spin flip.
template <class S>
double spin_flip_residual(const S& q, std::size_t n, ChainBoundary boundary = ChainBoundary::periodic) {
  const auto f = global_flip<S>(n);
  return max_abs_diff(chain_hamiltonian(ScalarTraits<S>::inverse(q), n, boundary),
                      f * chain_hamiltonian(q, n, boundary) * f);
}

/// Periodic six-vertex row transfer matrix T(x) on n sites.
inline Operator<Complex> six_vertex_transfer(Complex q, Complex x, std::size_t n) {
  return row_transfer_matrix(six_vertex_spec(q, x), n);
}

/// T(1)^-1 dT/dx at x = 1 by central differences, optionally with one
/// Richardson step (h and h/2).
inline Operator<Complex> hamiltonian_from_log_derivative(Complex q, std::size_t n, double h = 1e-5,
                                                         bool richardson = false) {
  if (n > 10) throw CapError("log-derivative Hamiltonian is capped at n = 10");
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const auto t1 = six_vertex_transfer(q, 1.0, n);
  const auto t1_inv = inverse(t1);
  auto diff = [&](double step) {
    auto d = six_vertex_transfer(q, 1.0 + step, n) - six_vertex_transfer(q, 1.0 - step, n);
    return d * Complex(1.0 / (2.0 * step));
  };
  auto derivative = diff(h);
  if (richardson) derivative = (diff(h / 2.0) * Complex(4.0) - derivative) * Complex(1.0 / 3.0);
  return t1_inv * derivative;
}

struct AffineFit {
  Complex alpha;  ///< coefficient of Id
  Complex beta;   ///< coefficient of the reference operator
  double residual = 0.0;
};

/// Least-squares L ≈ alpha Id + beta H over all entries.
inline AffineFit affine_fit(const Operator<Complex>& l, const Operator<Complex>& h) {
  if (!l.same_shape(h)) throw ShapeError("affine fit needs operators of equal shape");
  const auto dim = static_cast<Eigen::Index>(l.dim() * l.dim());
  Eigen::MatrixXcd a(dim, 2);
  Eigen::VectorXcd b(dim);
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = 0; j < l.dim(); ++j) {
      const auto row = static_cast<Eigen::Index>(i * l.dim() + j);
      a(row, 0) = i == j ? Complex(1.0) : Complex(0.0);
      a(row, 1) = h(i, j);
      b(row) = l(i, j);
    }
  Eigen::VectorXcd coef = a.colPivHouseholderQr().solve(b);
  AffineFit fit{coef(0), coef(1), 0.0};
  auto model = Operator<Complex>::identity(2, l.sites()) * fit.alpha + h * fit.beta;
  fit.residual = max_abs_diff(model, l);
  return fit;
}

struct ChargeReport {
  std::size_t n = 0;
  std::vector<double> x_values;
  double transfer_pairs = 0.0;     ///< max |[T(x), T(y)]|
  double transfer_hamiltonian = 0.0;  ///< max |[T(x), H]|
  double sz_hamiltonian = 0.0;     ///< |[Sz, H]|
  double sz_transfer = 0.0;        ///< max |[Sz, T(x)]|
  std::size_t common_eigenvectors = 0;
  std::size_t dimension = 0;
  double tolerance = 0.0;
  bool pass() const {
    return std::max({transfer_pairs, transfer_hamiltonian, sz_hamiltonian, sz_transfer}) <= tolerance &&
           common_eigenvectors == dimension;
  }
};

/// Commutators among {T(x)} ∪ {H} ∪ {Sz}, and the number of eigenvectors of a
/// random combination that are simultaneous eigenvectors of all of them.
inline ChargeReport conserved_charge_suite(Complex q, std::size_t n, const std::vector<double>& x_values,
                                           double tol = 1e-8, std::uint64_t seed = 1) {
  if (n > 8) throw CapError("conserved-charge suite is capped at n = 8");
  ChargeReport r;
  r.n = n;
  r.x_values = x_values;
  r.tolerance = tol;
  std::vector<Operator<Complex>> ops;
  for (double x : x_values) ops.push_back(six_vertex_transfer(q, x, n));
  const auto h = chain_hamiltonian(q, n);
  const auto sz = total_sz<Complex>(n);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      r.transfer_pairs = std::max(r.transfer_pairs, commutator_residual(ops[i], ops[j]));
    r.transfer_hamiltonian = std::max(r.transfer_hamiltonian, commutator_residual(ops[i], h));
    r.sz_transfer = std::max(r.sz_transfer, commutator_residual(ops[i], sz));
  }
  r.sz_hamiltonian = commutator_residual(sz, h);
  ops.push_back(h);
  ops.push_back(sz);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(0.5, 1.5);
  Operator<Complex> combo(2, n);
  for (const auto& op : ops) combo += op * Complex(coef(rng), coef(rng));
  Eigen::ComplexEigenSolver<MatrixXc> solver(to_eigen(combo));
  const auto& vecs = solver.eigenvectors();
  r.dimension = combo.dim();
  std::vector<MatrixXc> dense;
  for (const auto& op : ops) dense.push_back(to_eigen(op));
  for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
    Eigen::VectorXcd v = vecs.col(k).normalized();
    bool common = true;
    for (const auto& a : dense) {
      Eigen::VectorXcd av = a * v;
      Complex lambda = v.dot(av);
      if ((av - lambda * v).norm() > 1e-6 * std::max(1.0, a.norm())) {
        common = false;
        break;
      }
    }
    if (common) ++r.common_eigenvectors;
  }
  return r;
}

}  // namespace latticelab

#endif  // LATTICELAB_SPIN_CHAIN_HPP
