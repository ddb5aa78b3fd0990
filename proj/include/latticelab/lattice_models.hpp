#ifndef LATTICELAB_LATTICE_MODELS_HPP
#define LATTICELAB_LATTICE_MODELS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latticelab/errors.hpp"
#include "latticelab/linalg.hpp"
#include "latticelab/operator.hpp"
#include "latticelab/temperley_lieb.hpp"
#include "latticelab/yang_baxter.hpp"

// Vertex weights R(a,b|c,d): a = west, b = east, c = south, d = north edge.
//
//              d
//              |
//        a ----+---- b
//              |
//              c
//
// A row transfer matrix maps the south edges x of a row to its north edges y;
// horizontal edges are contracted along the row:
//   T[y][x] = sum_a R(a_n,a_1|x_1,y_1) R(a_1,a_2|x_2,y_2) ... R(a_{n-1},a_n|x_n,y_n).
// A braid-form 4x4 matrix M becomes a vertex model through
//   R(a,b|c,d) = M[(d,b), (a,c)],
// i.e. the edge entering from the west leaves to the north.

namespace latticelab {

inline constexpr std::uint64_t kBruteForceStateCap = std::uint64_t{1} << 26;

template <class S>
struct VertexModelSpec {
  std::size_t d = 2;
  std::vector<S> weights;  ///< d^4 entries, index ((a d + b) d + c) d + north

  VertexModelSpec() = default;
  VertexModelSpec(std::size_t edge_states, std::vector<S> w) : d(edge_states), weights(std::move(w)) {
    if (d == 0) throw ShapeError("vertex model needs at least one edge state");
    if (weights.size() != d * d * d * d)
      throw ShapeError("vertex weight tensor needs d^4 = " + std::to_string(d * d * d * d) + " entries");
  }

  const S& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t north) const {
    return weights[((a * d + b) * d + c) * d + north];
  }
  S& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t north) {
    return weights[((a * d + b) * d + c) * d + north];
  }

  static VertexModelSpec from_braid_matrix(const Operator<S>& m) {
    if (m.sites() != 2) throw ShapeError("vertex weights come from a two-site operator");
    const std::size_t k = m.local_dim();
    VertexModelSpec spec(k, std::vector<S>(k * k * k * k, ScalarTraits<S>::zero()));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t c = 0; c < k; ++c)
          for (std::size_t n = 0; n < k; ++n) spec(a, b, c, n) = m(n * k + b, a * k + c);
    return spec;
  }

  /// Number of local configurations with nonzero weight.
  std::size_t allowed_configurations() const {
    std::size_t count = 0;
    for (const auto& w : weights)
      if (!ScalarTraits<S>::is_zero(w)) ++count;
    return count;
  }
};

template <class S>
VertexModelSpec<S> six_vertex_spec(const S& q, const S& x) {
  return VertexModelSpec<S>::from_braid_matrix(six_vertex_r(q, x));
}

/// Spin model with a symmetric Q x Q edge weight matrix w(s, s').
template <class S>
struct SpinModelSpec {
  std::size_t Q = 2;
  std::vector<S> w;  ///< row-major Q x Q

  SpinModelSpec() = default;
  SpinModelSpec(std::size_t states, std::vector<S> weights) : Q(states), w(std::move(weights)) {
    if (Q == 0) throw ShapeError("spin model needs at least one state");
    if (w.size() != Q * Q) throw ShapeError("spin weight matrix needs Q^2 entries");
    for (std::size_t i = 0; i < Q; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!(w[i * Q + j] == w[j * Q + i])) throw ShapeError("spin weight matrix must be symmetric");
  }

  const S& operator()(std::size_t s, std::size_t t) const { return w[s * Q + t]; }

  /// Potts weights: `same` on the diagonal, `different` off it.
  static SpinModelSpec potts(std::size_t states, const S& same, const S& different) {
    std::vector<S> w(states * states, different);
    for (std::size_t i = 0; i < states; ++i) w[i * states + i] = same;
    return SpinModelSpec(states, std::move(w));
  }
};

enum class BoundaryKind { periodic, free, fixed };

inline std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::free: return "free";
    case BoundaryKind::fixed: return "fixed";
  }
  return "?";
}

inline BoundaryKind parse_boundary_kind(const std::string& s) {
  if (s == "periodic") return BoundaryKind::periodic;
  if (s == "free") return BoundaryKind::free;
  if (s == "fixed") return BoundaryKind::fixed;
  throw ParseError("unknown boundary kind '" + s + "'");
}

/// Fixed boundaries list their values in order: horizontal = m left values
/// then m right values (bottom row first); vertical = n bottom values then n
/// top values (left to right).
struct Boundary {
  BoundaryKind kind = BoundaryKind::periodic;
  std::vector<std::size_t> values;

  static Boundary periodic() { return {BoundaryKind::periodic, {}}; }
  static Boundary free() { return {BoundaryKind::free, {}}; }
  static Boundary fixed(std::vector<std::size_t> v) { return {BoundaryKind::fixed, std::move(v)}; }
};

struct LatticeWindow {
  std::size_t width = 1;   ///< n: vertices (or spins) per row
  std::size_t height = 1;  ///< m: rows
  Boundary horizontal;
  Boundary vertical;

  void validate(std::size_t states) const {
    if (width == 0) throw ShapeError("window width must be positive");
    if (horizontal.kind == BoundaryKind::fixed && horizontal.values.size() != 2 * height)
      throw ShapeError("fixed horizontal boundary needs 2*height values");
    if (vertical.kind == BoundaryKind::fixed && vertical.values.size() != 2 * width)
      throw ShapeError("fixed vertical boundary needs 2*width values");
    for (const auto* b : {&horizontal, &vertical})
      for (auto v : b->values)
        if (v >= states) throw ShapeError("fixed boundary value out of range");
  }
};

namespace detail {

/// An edge slot is either a free variable (index into the state vector) or a
/// fixed boundary value.
struct EdgeSlot {
  bool fixed = false;
  std::size_t index = 0;
};

inline std::uint64_t checked_state_count(std::size_t states, std::size_t variables) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < variables; ++i) {
    total *= states;
    if (total > kBruteForceStateCap)
      throw CapError("brute-force state sum over " + std::to_string(variables) + " variables of " +
                     std::to_string(states) + " states exceeds 2^26");
  }
  return total;
}

}  // namespace detail

/// Exact state sum over every edge labelling consistent with the boundary.
template <class S>
S partition_bruteforce_vertex(const VertexModelSpec<S>& spec, const LatticeWindow& w) {
  using detail::EdgeSlot;
  w.validate(spec.d);
  const std::size_t n = w.width;
  const std::size_t m = w.height;
  std::size_t vars = 0;
  auto variable = [&vars] { return EdgeSlot{false, vars++}; };
  auto constant = [](std::size_t v) { return EdgeSlot{true, v}; };

  // horizontal[r][j], j = 0..n: edge west of vertex j in row r (j = n is east of the last)
  std::vector<std::vector<EdgeSlot>> horizontal(m, std::vector<EdgeSlot>(n + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 1; j < n; ++j) horizontal[r][j] = variable();
    switch (w.horizontal.kind) {
      case BoundaryKind::periodic:
        horizontal[r][0] = variable();
        horizontal[r][n] = horizontal[r][0];
        break;
      case BoundaryKind::free:
        horizontal[r][0] = variable();
        horizontal[r][n] = variable();
        break;
      case BoundaryKind::fixed:
        horizontal[r][0] = constant(w.horizontal.values[r]);
        horizontal[r][n] = constant(w.horizontal.values[m + r]);
        break;
    }
  }
  // vertical[k][j], k = 0..m: edge below row k (k = m is above the last row)
  std::vector<std::vector<EdgeSlot>> vertical(m + 1, std::vector<EdgeSlot>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 1; k < m; ++k) vertical[k][j] = variable();
    switch (w.vertical.kind) {
      case BoundaryKind::periodic:
        vertical[0][j] = variable();
        vertical[m][j] = vertical[0][j];
        break;
      case BoundaryKind::free:
        vertical[0][j] = variable();
        if (m > 0) vertical[m][j] = variable();
        break;
      case BoundaryKind::fixed:
        vertical[0][j] = constant(w.vertical.values[j]);
        vertical[m][j] = constant(w.vertical.values[n + j]);
        break;
    }
  }
  const std::uint64_t total = detail::checked_state_count(spec.d, vars);

  struct Vertex {
    EdgeSlot west, east, south, north;
  };
  std::vector<Vertex> vertices;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < n; ++j)
      vertices.push_back({horizontal[r][j], horizontal[r][j + 1], vertical[r][j], vertical[r + 1][j]});

  std::vector<std::size_t> state(vars, 0);
  auto value = [&state](const EdgeSlot& e) { return e.fixed ? e.index : state[e.index]; };
  S z = ScalarTraits<S>::zero();
  for (std::uint64_t count = 0; count < total; ++count) {
    S product = ScalarTraits<S>::one();
    for (const auto& v : vertices) {
      const S& weight = spec(value(v.west), value(v.east), value(v.south), value(v.north));
      if (ScalarTraits<S>::is_zero(weight)) {
        product = ScalarTraits<S>::zero();
        break;
      }
      product = product * weight;
    }
    if (!ScalarTraits<S>::is_zero(product)) z = z + product;
    for (std::size_t i = 0; i < vars; ++i) {
      if (++state[i] < spec.d) break;
      state[i] = 0;
    }
  }
  return z;
}

/// Row transfer matrix on n sites. Horizontal boundary: periodic (trace over
/// the auxiliary edge), free (sum both ends independently) or fixed with
/// explicit `left`/`right` values.
template <class S>
Operator<S> row_transfer_matrix(const VertexModelSpec<S>& spec, std::size_t n,
                                BoundaryKind horizontal = BoundaryKind::periodic, std::size_t left = 0,
                                std::size_t right = 0) {
  using T = ScalarTraits<S>;
  const std::size_t d = spec.d;
  checked_space_dim(d, n);
  // local[a][b] is the single-site operator (y, x) -> R(a, b | x, y)
  std::vector<std::vector<Operator<S>>> local(d, std::vector<Operator<S>>(d, Operator<S>(d, 1)));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) local[a][b](y, x) = spec(a, b, x, y);

  // partial[a0][a]: first k sites with west-most edge a0 and current east edge a
  auto partial = local;
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<std::vector<Operator<S>>> next(d, std::vector<Operator<S>>(d, Operator<S>(d, k)));
    for (std::size_t a0 = 0; a0 < d; ++a0)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) next[a0][b] += kron(partial[a0][a], local[a][b]);
    partial = std::move(next);
  }
  Operator<S> t(d, n);
  switch (horizontal) {
    case BoundaryKind::periodic:
      for (std::size_t a = 0; a < d; ++a) t += partial[a][a];
      break;
    case BoundaryKind::free:
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) t += partial[a][b];
      break;
    case BoundaryKind::fixed:
      if (left >= d || right >= d) throw ShapeError("fixed boundary value out of range");
      t = partial[left][right];
      break;
  }
  (void)T::zero();
  return t;
}

namespace detail {

inline std::size_t config_index(const std::vector<std::size_t>& values, std::size_t offset, std::size_t n,
                                std::size_t d) {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n; ++j) idx = idx * d + values[offset + j];
  return idx;
}

}  // namespace detail

/// Partition function by stacking row transfer matrices: trace for periodic
/// vertical boundary, boundary-vector contraction for free or fixed.
template <class S>
S partition_via_transfer(const VertexModelSpec<S>& spec, const LatticeWindow& w) {
  using T = ScalarTraits<S>;
  w.validate(spec.d);
  const std::size_t n = w.width;
  const std::size_t m = w.height;
  const std::size_t d = spec.d;
  auto row = [&](std::size_t r) {
    if (w.horizontal.kind == BoundaryKind::fixed)
      return row_transfer_matrix(spec, n, BoundaryKind::fixed, w.horizontal.values[r], w.horizontal.values[m + r]);
    return row_transfer_matrix(spec, n, w.horizontal.kind);
  };

  if (w.vertical.kind == BoundaryKind::periodic) {
    Operator<S> product = Operator<S>::identity(d, n);
    if (w.horizontal.kind == BoundaryKind::fixed) {
      for (std::size_t r = 0; r < m; ++r) product = row(r) * product;
    } else if (m > 0) {
      product = power(row(0), static_cast<unsigned>(m));
    }
    return product.trace();
  }

  const std::size_t dim = checked_space_dim(d, n);
  std::vector<S> state(dim, T::zero());
  if (w.vertical.kind == BoundaryKind::free)
    std::fill(state.begin(), state.end(), T::one());
  else
    state[detail::config_index(w.vertical.values, 0, n, d)] = T::one();

  if (w.horizontal.kind == BoundaryKind::fixed) {
    for (std::size_t r = 0; r < m; ++r) state = row(r).apply(state);
  } else if (m > 0) {
    const auto t = row(0);
    for (std::size_t r = 0; r < m; ++r) state = t.apply(state);
  }

  if (w.vertical.kind == BoundaryKind::fixed) return state[detail::config_index(w.vertical.values, n, n, d)];
  S z = T::zero();
  for (const auto& s : state) z = z + s;
  return z;
}

/// Partition function of a one-dimensional chain with transfer matrix R:
/// the (x, y) entry of R^length with fixed ends, Trace(R^length) when periodic.
template <class S>
S chain_partition_1d(const Operator<S>& r, unsigned length, std::optional<std::pair<std::size_t, std::size_t>> ends) {
  if (r.sites() != 1) throw ShapeError("one-dimensional chain needs a single-site transfer matrix");
  auto p = power(r, length);
  return ends ? p(ends->first, ends->second) : p.trace();
}

struct CommutationReport {
  double residual = 0.0;
  double scale = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// ||[T(x), T(y)]||_max for the periodic six-vertex row transfer matrices.
/// Each weight set is first divided by its largest modulus: commutation is
/// blind to overall scalars, while the absolute tolerance is not.
inline CommutationReport commuting_transfer_check(Complex q, Complex x, Complex y, std::size_t n, double tol = 1e-8) {
  if (n > 10) throw CapError("commuting transfer check is capped at n = 10");
  auto unit_weights = [](VertexModelSpec<Complex> s) {
    double top = 0.0;
    for (const auto& w : s.weights) top = std::max(top, std::abs(w));
    for (auto& w : s.weights) w /= top;
    return s;
  };
  auto tx = row_transfer_matrix(unit_weights(six_vertex_spec(q, x)), n);
  auto ty = row_transfer_matrix(unit_weights(six_vertex_spec(q, y)), n);
  double r = commutator_residual(tx, ty);
  return {r, std::max(tx.max_abs(), ty.max_abs()), tol, r <= tol};
}

/// Exact state sum over every spin labelling; square lattice with nearest
/// neighbour edges, separate horizontal and vertical weights.
template <class S>
S partition_bruteforce_spin(const SpinModelSpec<S>& horizontal_w, const SpinModelSpec<S>& vertical_w,
                            const LatticeWindow& w) {
  if (horizontal_w.Q != vertical_w.Q) throw ShapeError("horizontal and vertical spin models differ in Q");
  if (w.horizontal.kind == BoundaryKind::fixed || w.vertical.kind == BoundaryKind::fixed)
    throw DomainError("fixed boundaries are only supported for vertex models");
  w.validate(horizontal_w.Q);
  const std::size_t n = w.width;
  const std::size_t m = w.height;
  const std::size_t sites = n * m;
  const std::uint64_t total = detail::checked_state_count(horizontal_w.Q, sites);

  struct Edge {
    std::size_t a, b;
    bool horizontal;
  };
  std::vector<Edge> edges;
  auto site = [n](std::size_t r, std::size_t j) { return r * n + j; };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j + 1 < n; ++j) edges.push_back({site(r, j), site(r, j + 1), true});
    if (w.horizontal.kind == BoundaryKind::periodic) edges.push_back({site(r, n - 1), site(r, 0), true});
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r + 1 < m; ++r) edges.push_back({site(r, j), site(r + 1, j), false});
    if (w.vertical.kind == BoundaryKind::periodic && m > 0) edges.push_back({site(m - 1, j), site(0, j), false});
  }

  std::vector<std::size_t> spin(sites, 0);
  S z = ScalarTraits<S>::zero();
  for (std::uint64_t count = 0; count < total; ++count) {
    S product = ScalarTraits<S>::one();
    for (const auto& e : edges) {
      const S& weight = e.horizontal ? horizontal_w(spin[e.a], spin[e.b]) : vertical_w(spin[e.a], spin[e.b]);
      product = product * weight;
    }
    z = z + product;
    for (std::size_t i = 0; i < sites; ++i) {
      if (++spin[i] < horizontal_w.Q) break;
      spin[i] = 0;
    }
  }
  return z;
}

template <class S>
S partition_bruteforce_spin(const SpinModelSpec<S>& spec, const LatticeWindow& w) {
  return partition_bruteforce_spin(spec, spec, w);
}

namespace detail {

template <class S>
std::vector<S> horizontal_row_weights(const SpinModelSpec<S>& h, std::size_t n, BoundaryKind kind) {
  const std::size_t Q = h.Q;
  const std::size_t dim = checked_space_dim(Q, n);
  std::vector<S> diag(dim, ScalarTraits<S>::one());
  std::vector<std::size_t> spin(n);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rem = idx;
    for (std::size_t j = n; j-- > 0;) {
      spin[j] = rem % Q;
      rem /= Q;
    }
    for (std::size_t j = 0; j + 1 < n; ++j) diag[idx] = diag[idx] * h(spin[j], spin[j + 1]);
    if (kind == BoundaryKind::periodic) diag[idx] = diag[idx] * h(spin[n - 1], spin[0]);
  }
  return diag;
}

}  // namespace detail

/// Spin-model row transfer matrix: vertical edges into the new row, then the
/// horizontal edges inside it, T = D_h V.
template <class S>
Operator<S> spin_row_transfer(const SpinModelSpec<S>& horizontal_w, const SpinModelSpec<S>& vertical_w,
                              std::size_t n, BoundaryKind horizontal = BoundaryKind::free) {
  if (horizontal == BoundaryKind::fixed) throw DomainError("fixed boundaries are only supported for vertex models");
  const std::size_t Q = vertical_w.Q;
  Operator<S> v1(Q, 1);
  for (std::size_t s = 0; s < Q; ++s)
    for (std::size_t t = 0; t < Q; ++t) v1(s, t) = vertical_w(s, t);
  Operator<S> v = v1;
  for (std::size_t k = 1; k < n; ++k) v = kron(v, v1);
  const auto diag = detail::horizontal_row_weights(horizontal_w, n, horizontal);
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) v(i, j) = diag[i] * v(i, j);
  return v;
}

/// Spin partition function through row transfer matrices.
template <class S>
S partition_spin_via_transfer(const SpinModelSpec<S>& horizontal_w, const SpinModelSpec<S>& vertical_w,
                              const LatticeWindow& w) {
  using T = ScalarTraits<S>;
  if (w.horizontal.kind == BoundaryKind::fixed || w.vertical.kind == BoundaryKind::fixed)
    throw DomainError("fixed boundaries are only supported for vertex models");
  w.validate(horizontal_w.Q);
  const auto t = spin_row_transfer(horizontal_w, vertical_w, w.width, w.horizontal.kind);
  if (w.height == 0) return T::one();
  if (w.vertical.kind == BoundaryKind::periodic) return power(t, static_cast<unsigned>(w.height)).trace();
  auto state = detail::horizontal_row_weights(horizontal_w, w.width, w.horizontal.kind);
  for (std::size_t r = 1; r < w.height; ++r) state = t.apply(state);
  S z = T::zero();
  for (const auto& s : state) z = z + s;
  return z;
}

template <class S>
S partition_spin_via_transfer(const SpinModelSpec<S>& spec, const LatticeWindow& w) {
  return partition_spin_via_transfer(spec, spec, w);
}

/// prod_{i<n} (a E_{2i} + 1) prod_{i<=n} (b E_{2i-1} + 1) with the Potts
/// Temperley-Lieb generators on n sites.
template <class S>
Operator<S> potts_transfer_tl(std::size_t sites, std::size_t Q, const S& a, const S& b, const S& sqrt_q) {
  const auto e = potts_representation(sites, Q, sqrt_q);
  const auto id = Operator<S>::identity(Q, sites);
  Operator<S> horizontal = id;
  for (std::size_t i = 1; i < sites; ++i) horizontal = horizontal * (e[2 * i - 1] * a + id);
  Operator<S> vertical = id;
  for (std::size_t i = 1; i <= sites; ++i) vertical = vertical * (e[2 * i - 2] * b + id);
  return horizontal * vertical;
}

/// Parameters (a, b) and the overall scalar relating the free-boundary Potts
/// transfer matrix with weights (same, different) to the product above:
/// direct = scale * potts_transfer_tl(a, b).
template <class S>
struct PottsTlParameters {
  S a;
  S b;
  S scale;
};

template <class S>
PottsTlParameters<S> potts_tl_parameters(const S& h_same, const S& h_diff, const S& v_same, const S& v_diff,
                                         const S& sqrt_q, std::size_t sites) {
  using T = ScalarTraits<S>;
  if (T::is_zero(h_diff) || T::is_zero(v_diff)) throw DomainError("Potts weights for unequal spins must be nonzero");
  if (v_same == v_diff) throw DomainError("vertical Potts weights must distinguish equal spins");
  S a = (h_same * T::inverse(h_diff) - T::one()) * T::inverse(sqrt_q);
  S b = sqrt_q * T::inverse(v_same * T::inverse(v_diff) - T::one());
  S scale = T::one();
  for (std::size_t i = 1; i < sites; ++i) scale = scale * h_diff;
  for (std::size_t i = 0; i < sites; ++i) scale = scale * (v_same - v_diff);
  return {a, b, scale};
}

struct FreeEnergyPoint {
  std::size_t n = 0;
  double log_z_per_vertex = 0.0;       ///< (1/N) log Z on the n x n torus
  double log_lambda_per_vertex = 0.0;  ///< log lambda_max(T_n) / n
};

/// (1/N) log Z on n x n periodic windows together with the dominant
/// eigenvalue estimate. Non-positive Z is a DomainError.
inline std::vector<FreeEnergyPoint> free_energy_estimate(const VertexModelSpec<Complex>& spec,
                                                         const std::vector<std::size_t>& sizes) {
  std::vector<FreeEnergyPoint> out;
  for (auto n : sizes) {
    if (n == 0) throw ShapeError("free energy needs positive sizes");
    const auto t = row_transfer_matrix(spec, n);
    const Complex z = power(t, static_cast<unsigned>(n)).trace();
    if (!(z.real() > 0.0) || std::abs(z.imag()) > 1e-9 * std::abs(z))
      throw DomainError("partition function is not positive at n = " + std::to_string(n));
    const double lambda = spectral_radius(t);
    out.push_back({n, std::log(z.real()) / static_cast<double>(n * n), std::log(lambda) / static_cast<double>(n)});
  }
  return out;
}

}  // namespace latticelab

#endif  // LATTICELAB_LATTICE_MODELS_HPP
