#ifndef LATTICELAB_OPERATOR_HPP
#define LATTICELAB_OPERATOR_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latticelab/errors.hpp"
#include "latticelab/scalar.hpp"

namespace latticelab {

inline constexpr int kDefaultMaxSites = 14;
inline constexpr int kHardMaxSites = 16;
inline constexpr double kDefaultTolerance = 1e-10;

/// Site cap for d = 2, read from LATTICE_LAB_MAX_SITES (hard-limited to 16).
/// Operators on other local dimensions are capped at the same total size.
inline int max_sites() {
  int cap = kDefaultMaxSites;
  if (const char* env = std::getenv("LATTICE_LAB_MAX_SITES")) {
    try {
      cap = std::stoi(env);
    } catch (const std::logic_error&) {
      throw ParseError(std::string("LATTICE_LAB_MAX_SITES is not an integer: ") + env);
    }
  }
  return std::clamp(cap, 1, kHardMaxSites);
}

/// d^n, throwing CapError when it exceeds 2^max_sites().
inline std::size_t checked_space_dim(std::size_t local_dim, std::size_t sites) {
  if (local_dim == 0 || sites == 0) throw ShapeError("local dimension and site count must be positive");
  const std::size_t limit = std::size_t{1} << max_sites();
  std::size_t dim = 1;
  for (std::size_t i = 0; i < sites; ++i) {
    dim *= local_dim;
    if (dim > limit)
      throw CapError("space of " + std::to_string(sites) + " sites of dimension " +
                     std::to_string(local_dim) + " exceeds the cap of 2^" + std::to_string(max_sites()));
  }
  return dim;
}

/// Dense square operator on the n-fold tensor power of a d-dimensional space.
/// Basis index of e_{a1}⊗...⊗e_{an} is sum a_i d^{n-i} (site 1 most significant).
template <class S>
class Operator {
 public:
  using Traits = ScalarTraits<S>;

  Operator(std::size_t local_dim, std::size_t sites)
      : d_(local_dim), n_(sites), dim_(checked_space_dim(local_dim, sites)), data_(dim_ * dim_, Traits::zero()) {}

  static Operator identity(std::size_t local_dim, std::size_t sites) {
    Operator op(local_dim, sites);
    for (std::size_t i = 0; i < op.dim_; ++i) op(i, i) = Traits::one();
    return op;
  }

  static Operator from_rows(std::size_t local_dim, std::size_t sites, const std::vector<std::vector<S>>& rows) {
    Operator op(local_dim, sites);
    if (rows.size() != op.dim_) throw ShapeError("row count does not match d^n");
    for (std::size_t i = 0; i < op.dim_; ++i) {
      if (rows[i].size() != op.dim_) throw ShapeError("row length does not match d^n");
      for (std::size_t j = 0; j < op.dim_; ++j) op(i, j) = rows[i][j];
    }
    return op;
  }

  std::size_t local_dim() const { return d_; }
  std::size_t sites() const { return n_; }
  std::size_t dim() const { return dim_; }

  S& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const S& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
  std::span<const S> data() const { return data_; }

  bool same_shape(const Operator& o) const { return d_ == o.d_ && n_ == o.n_; }

  Operator& operator+=(const Operator& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = data_[i] + o.data_[i];
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = data_[i] - o.data_[i];
    return *this;
  }
  Operator& operator*=(const S& s) {
    for (auto& x : data_) x = x * s;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, const S& s) { return a *= s; }
  friend Operator operator*(const S& s, Operator a) { return a *= s; }
  Operator operator-() const {
    Operator r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  friend Operator operator*(const Operator& a, const Operator& b) {
    a.require_same_shape(b);
    Operator r(a.d_, a.n_);
    const std::size_t n = a.dim_;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const S& aik = a(i, k);
        if (Traits::is_zero(aik)) continue;
        const S* brow = &b.data_[k * n];
        S* rrow = &r.data_[i * n];
        for (std::size_t j = 0; j < n; ++j)
          if (!Traits::is_zero(brow[j])) rrow[j] = rrow[j] + aik * brow[j];
      }
    }
    return r;
  }

  std::vector<S> apply(std::span<const S> v) const {
    if (v.size() != dim_) throw ShapeError("vector length does not match operator dimension");
    std::vector<S> out(dim_, Traits::zero());
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
    return out;
  }

  Operator adjoint() const {
    Operator r(d_, n_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r(j, i) = Traits::conj((*this)(i, j));
    return r;
  }

  Operator transpose() const {
    Operator r(d_, n_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  S trace() const {
    S t = Traits::zero();
    for (std::size_t i = 0; i < dim_; ++i) t = t + (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const S& x) { return Traits::is_zero(x); });
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, Traits::magnitude(x));
    return m;
  }

  friend bool operator==(const Operator& a, const Operator& b) {
    return a.d_ == b.d_ && a.n_ == b.n_ && a.data_ == b.data_;
  }

  /// Entrywise conversion to another scalar type.
  template <class T, class F>
  Operator<T> map(F&& f) const {
    Operator<T> r(d_, n_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

 private:
  void require_same_shape(const Operator& o) const {
    if (!same_shape(o))
      throw ShapeError("operator shape mismatch: (d=" + std::to_string(d_) + ", n=" + std::to_string(n_) +
                       ") vs (d=" + std::to_string(o.d_) + ", n=" + std::to_string(o.n_) + ")");
  }

  std::size_t d_;
  std::size_t n_;
  std::size_t dim_;
  std::vector<S> data_;
};

template <class S>
Operator<S> power(const Operator<S>& a, unsigned exponent) {
  Operator<S> result = Operator<S>::identity(a.local_dim(), a.sites());
  Operator<S> base = a;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// Tensor product; both factors must share the local dimension.
template <class S>
Operator<S> kron(const Operator<S>& a, const Operator<S>& b) {
  if (a.local_dim() != b.local_dim()) throw ShapeError("kron of operators with different local dimension");
  Operator<S> r(a.local_dim(), a.sites() + b.sites());
  const std::size_t nb = b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (ScalarTraits<S>::is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    }
  return r;
}

/// The flip v⊗w -> w⊗v on V⊗V.
template <class S>
Operator<S> flip_operator(std::size_t d) {
  if (d == 0) throw ShapeError("local dimension must be positive");
  Operator<S> s(d, 2);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) s(b * d + a, a * d + b) = ScalarTraits<S>::one();
  return s;
}

namespace detail {

template <class S>
Operator<S> embed_block(const Operator<S>& local, std::size_t first_site, std::size_t n) {
  const std::size_t d = local.local_dim();
  const std::size_t k = local.sites();
  const std::size_t full = checked_space_dim(d, n);
  std::size_t right = 1;
  for (std::size_t s = first_site + k; s <= n; ++s) right *= d;
  const std::size_t block = local.dim();
  const std::size_t left = full / (block * right);
  Operator<S> r(d, n);
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t i = 0; i < block; ++i)
      for (std::size_t j = 0; j < block; ++j) {
        const S& v = local(i, j);
        if (ScalarTraits<S>::is_zero(v)) continue;
        for (std::size_t m = 0; m < right; ++m)
          r((l * block + i) * right + m, (l * block + j) * right + m) = v;
      }
  return r;
}

}  // namespace detail

/// R_{i(i+1)}: R acting on sites i, i+1 (1-based) of an n-site space.
template <class S>
Operator<S> embed_two_site(const Operator<S>& r, std::size_t i, std::size_t n) {
  if (r.sites() != 2) throw ShapeError("embed_two_site needs a two-site operator");
  if (i < 1 || i + 1 > n)
    throw ShapeError("two-site position " + std::to_string(i) + " out of range for " + std::to_string(n) + " sites");
  return detail::embed_block(r, i, n);
}

/// A acting on site i (1-based).
template <class S>
Operator<S> embed_one_site(const Operator<S>& a, std::size_t i, std::size_t n) {
  if (a.sites() != 1) throw ShapeError("embed_one_site needs a one-site operator");
  if (i < 1 || i > n)
    throw ShapeError("site " + std::to_string(i) + " out of range for " + std::to_string(n) + " sites");
  return detail::embed_block(a, i, n);
}

/// Permutation sending the factor at site k to site k+1 (site n to site 1).
template <class S>
Operator<S> cyclic_shift(std::size_t d, std::size_t n) {
  Operator<S> p(d, n);
  const std::size_t dim = p.dim();
  std::vector<std::size_t> digits(n);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rem = idx;
    for (std::size_t s = n; s-- > 0;) {
      digits[s] = rem % d;
      rem /= d;
    }
    std::size_t out = 0;
    for (std::size_t s = 0; s < n; ++s) out = out * d + digits[(s + n - 1) % n];
    p(out, idx) = ScalarTraits<S>::one();
  }
  return p;
}

/// Two-site operator acting on sites (n, 1) in that order: the periodic
/// wrap bond. Obtained by cyclically shifting the chain.
template <class S>
Operator<S> embed_wrap(const Operator<S>& r, std::size_t n) {
  if (n < 2) throw ShapeError("wrap bond needs at least two sites");
  Operator<S> shift = cyclic_shift<S>(r.local_dim(), n);
  // shift maps site k to site k+1 (mod n); conjugating R_{(n-1)n} by it lands on (n,1).
  return shift * embed_two_site(r, n - 1, n) * shift.adjoint();
}

/// Max-entry magnitude of AB - BA. For exact scalars this is zero iff the
/// operators commute exactly.
template <class S>
double commutator_residual(const Operator<S>& a, const Operator<S>& b) {
  if (!a.same_shape(b)) throw ShapeError("commutator of operators with different shapes");
  return (a * b - b * a).max_abs();
}

template <class S>
double max_abs_diff(const Operator<S>& a, const Operator<S>& b) {
  if (!a.same_shape(b)) throw ShapeError("difference of operators with different shapes");
  return (a - b).max_abs();
}

/// Gauss-Jordan inverse. Pivots on the largest magnitude for floating
/// scalars and on any nonzero entry for exact ones.
template <class S>
Operator<S> inverse(const Operator<S>& a) {
  using T = ScalarTraits<S>;
  const std::size_t n = a.dim();
  Operator<S> m = a;
  Operator<S> inv = Operator<S>::identity(a.local_dim(), a.sites());
  const double scale = std::max(a.max_abs(), 1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    double best = 0.0;
    for (std::size_t row = col; row < n; ++row) {
      double mag = T::magnitude(m(row, col));
      if constexpr (T::exact) {
        if (!T::is_zero(m(row, col))) {
          pivot = row;
          break;
        }
      } else if (mag > best) {
        best = mag;
        pivot = row;
      }
    }
    if (pivot == n || (!T::exact && best <= 1e-14 * scale)) throw DomainError("operator is not invertible");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const S p = T::inverse(m(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) = m(col, j) * p;
      inv(col, j) = inv(col, j) * p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || T::is_zero(m(row, col))) continue;
      const S f = m(row, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(row, j) = m(row, j) - f * m(col, j);
        inv(row, j) = inv(row, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Pauli matrices over any scalar type that can hold them. sigma_y needs an
/// imaginary unit, so it is only provided for complex-capable scalars.
template <class S>
Operator<S> pauli_x() {
  Operator<S> p(2, 1);
  p(0, 1) = ScalarTraits<S>::one();
  p(1, 0) = ScalarTraits<S>::one();
  return p;
}

template <class S>
Operator<S> pauli_z() {
  Operator<S> p(2, 1);
  p(0, 0) = ScalarTraits<S>::one();
  p(1, 1) = -ScalarTraits<S>::one();
  return p;
}

template <class S>
Operator<S> pauli_y(const S& imaginary_unit) {
  Operator<S> p(2, 1);
  p(0, 1) = -imaginary_unit;
  p(1, 0) = imaginary_unit;
  return p;
}

}  // namespace latticelab

#endif  // LATTICELAB_OPERATOR_HPP
