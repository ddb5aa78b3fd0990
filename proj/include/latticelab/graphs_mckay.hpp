#ifndef LATTICELAB_GRAPHS_MCKAY_HPP
#define LATTICELAB_GRAPHS_MCKAY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "latticelab/errors.hpp"

namespace latticelab {

/// Finite undirected multigraph given by its adjacency matrix Ω. A diagonal
/// entry Ω_vv counts loop edges at v (each loop contributes 1), so the
/// trivial-group graph "one vertex, two loops" is Ω = [2].
class MarkedGraph {
 public:
  MarkedGraph() = default;
  MarkedGraph(std::vector<std::vector<int>> adjacency, std::vector<std::string> labels = {},
              std::optional<std::size_t> star = std::nullopt)
      : adj_(std::move(adjacency)), labels_(std::move(labels)), star_(star) {
    const std::size_t n = adj_.size();
    for (const auto& row : adj_)
      if (row.size() != n) throw ShapeError("adjacency matrix must be square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (adj_[i][j] < 0) throw ShapeError("adjacency entries must be non-negative");
        if (adj_[i][j] != adj_[j][i]) throw ShapeError("adjacency matrix must be symmetric");
      }
    if (labels_.empty())
      for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
    if (labels_.size() != n) throw ShapeError("one label per vertex required");
    if (star_ && *star_ >= n) throw ShapeError("distinguished vertex out of range");
  }

  /// From an edge list; repeated edges add multiplicity, (v, v) is a loop.
  static MarkedGraph from_edges(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                std::vector<std::string> labels = {}, std::optional<std::size_t> star = std::nullopt) {
    std::vector<std::vector<int>> adj(vertices, std::vector<int>(vertices, 0));
    for (auto [a, b] : edges) {
      if (a >= vertices || b >= vertices) throw ShapeError("edge endpoint out of range");
      adj[a][b] += 1;
      if (a != b) adj[b][a] += 1;
    }
    return MarkedGraph(std::move(adj), std::move(labels), star);
  }

  std::size_t size() const { return adj_.size(); }
  int operator()(std::size_t i, std::size_t j) const { return adj_[i][j]; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> star() const { return star_; }
  void set_star(std::optional<std::size_t> s) {
    if (s && *s >= size()) throw ShapeError("distinguished vertex out of range");
    star_ = s;
  }

  /// (a, b, multiplicity) with a <= b.
  std::vector<std::tuple<std::size_t, std::size_t, int>> edges() const {
    std::vector<std::tuple<std::size_t, std::size_t, int>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i; j < size(); ++j)
        if (adj_[i][j] > 0) out.emplace_back(i, j, adj_[i][j]);
    return out;
  }

  bool connected() const {
    if (adj_.empty()) return false;
    std::vector<bool> seen(size(), false);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!todo.empty()) {
      auto v = todo.front();
      todo.pop();
      for (std::size_t w = 0; w < size(); ++w)
        if (adj_[v][w] > 0 && !seen[w]) {
          seen[w] = true;
          ++count;
          todo.push(w);
        }
    }
    return count == size();
  }

  /// Two-colouring (0/1 per vertex) when the graph is bipartite.
  std::optional<std::vector<int>> bipartition() const {
    std::vector<int> colour(size(), -1);
    for (std::size_t s = 0; s < size(); ++s) {
      if (colour[s] >= 0) continue;
      colour[s] = 0;
      std::queue<std::size_t> todo;
      todo.push(s);
      while (!todo.empty()) {
        auto v = todo.front();
        todo.pop();
        for (std::size_t w = 0; w < size(); ++w) {
          if (adj_[v][w] == 0) continue;
          if (colour[w] < 0) {
            colour[w] = 1 - colour[v];
            todo.push(w);
          } else if (colour[w] == colour[v]) {
            return std::nullopt;
          }
        }
      }
    }
    return colour;
  }

  /// Off-diagonal block Λ (rows: colour 0, columns: colour 1) for bipartite graphs.
  std::optional<std::vector<std::vector<int>>> lambda_block() const {
    auto colour = bipartition();
    if (!colour) return std::nullopt;
    std::vector<std::size_t> xs, ys;
    for (std::size_t v = 0; v < size(); ++v) ((*colour)[v] == 0 ? xs : ys).push_back(v);
    std::vector<std::vector<int>> lambda(xs.size(), std::vector<int>(ys.size(), 0));
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < ys.size(); ++j) lambda[i][j] = adj_[xs[i]][ys[j]];
    return lambda;
  }

  MarkedGraph without_vertex(std::size_t v) const {
    if (v >= size()) throw ShapeError("vertex out of range");
    std::vector<std::vector<int>> adj;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < size(); ++i) {
      if (i == v) continue;
      std::vector<int> row;
      for (std::size_t j = 0; j < size(); ++j)
        if (j != v) row.push_back(adj_[i][j]);
      adj.push_back(std::move(row));
      labels.push_back(labels_[i]);
    }
    std::optional<std::size_t> star;
    if (star_ && *star_ != v) star = *star_ > v ? *star_ - 1 : *star_;
    return MarkedGraph(std::move(adj), std::move(labels), star);
  }

  Eigen::MatrixXd matrix() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = adj_[i][j];
    return m;
  }

  std::string to_dot(const std::string& name = "G") const {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (std::size_t v = 0; v < size(); ++v) {
      os << "  " << v << " [label=\"" << labels_[v] << "\"";
      if (star_ && *star_ == v) os << ", shape=doublecircle";
      os << "];\n";
    }
    for (auto [a, b, m] : edges())
      for (int k = 0; k < m; ++k) os << "  " << a << " -- " << b << ";\n";
    os << "}\n";
    return os.str();
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> labels_;
  std::optional<std::size_t> star_;
};

// ---------------------------------------------------------------------------
// Catalog

namespace detail {

inline MarkedGraph path_graph(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return MarkedGraph::from_edges(n, e, {}, 0);
}

/// D-type tree on `vertices` vertices: a path 0..vertices-2 with an extra leaf
/// attached to vertex vertices-3. With `extended`, a second leaf is also
/// attached to vertex 1 (D~ has two forks).
inline MarkedGraph d_graph(std::size_t vertices, bool extended) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  if (!extended) {
    // path 0 - 1 - ... - (v-2), fork leaf v-1 on v-3
    for (std::size_t i = 0; i + 2 < vertices; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(vertices - 3, vertices - 1);
    return MarkedGraph::from_edges(vertices, e, {}, 0);
  }
  // leaves 0 and 1 on vertex 2, path 2 .. v-3, leaves v-2 and v-1 on v-3
  const std::size_t last = vertices - 3;
  e.emplace_back(0, 2);
  e.emplace_back(1, 2);
  for (std::size_t i = 2; i < last; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(last, vertices - 2);
  e.emplace_back(last, vertices - 1);
  return MarkedGraph::from_edges(vertices, e, {}, 0);
}

/// Chain 0 .. len-1 plus a vertex attached to chain vertex `branch`.
inline MarkedGraph t_graph(std::size_t len, std::size_t branch) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < len; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(branch, len);
  return MarkedGraph::from_edges(len + 1, e, {}, 0);
}

inline std::pair<std::string, int> split_label(const std::string& raw, bool& extended) {
  std::string s;
  extended = false;
  for (char c : raw) {
    if (c == '~')
      extended = true;
    else
      s += c;
  }
  if (s.size() < 2 || std::string("ADEade").find(s[0]) == std::string::npos ||
      s.find_first_not_of("0123456789", 1) != std::string::npos)
    throw ParseError("unknown diagram label '" + raw + "'");
  return {std::string(1, static_cast<char>(std::toupper(s[0]))), std::stoi(s.substr(1))};
}

}  // namespace detail

/// Canonical label "A~6", "D~4", "E~8", "A5", ...
inline std::string diagram_label(const std::string& family, int n, bool extended) {
  return family + (extended ? "~" : "") + std::to_string(n);
}

/// Built-in A/D/E and extended diagrams. Accepts "E8~", "E~8", "A5", ...
/// Extended diagrams have * at the extending vertex (Perron entry 1).
inline MarkedGraph catalog_graph(const std::string& label) {
  bool ext = false;
  auto [family, n] = detail::split_label(label, ext);
  if (family == "A") {
    if (!ext) {
      if (n < 1) throw DomainError("A_n needs n >= 1");
      return detail::path_graph(static_cast<std::size_t>(n));
    }
    if (n < 0) throw DomainError("A~n needs n >= 0");
    if (n == 0) return MarkedGraph({{2}}, {"*"}, 0);
    std::vector<std::pair<std::size_t, std::size_t>> e;
    const auto v = static_cast<std::size_t>(n + 1);
    for (std::size_t i = 0; i < v; ++i) e.emplace_back(i, (i + 1) % v);
    return MarkedGraph::from_edges(v, e, {}, 0);
  }
  if (family == "D") {
    if (n < 4) throw DomainError("D_n needs n >= 4");
    return detail::d_graph(static_cast<std::size_t>(ext ? n + 1 : n), ext);
  }
  // E: chain lengths and branch points
  if (ext) {
    switch (n) {
      case 6: {
        // centre 0 with three arms of length 2; arm ends 2, 4, 6
        auto g = MarkedGraph::from_edges(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}}, {}, 2);
        return g;
      }
      case 7: {
        auto g = detail::t_graph(7, 3);
        return g;
      }
      case 8: {
        auto g = detail::t_graph(8, 5);
        return g;
      }
      default: throw DomainError("extended E diagrams are E~6, E~7, E~8");
    }
  }
  switch (n) {
    case 6: return detail::t_graph(5, 2);
    case 7: return detail::t_graph(6, 2);
    case 8: return detail::t_graph(7, 2);
    default: throw DomainError("E diagrams are E6, E7, E8");
  }
}

/// Coxeter number of a finite A/D/E diagram.
inline int coxeter_number(const std::string& label) {
  bool ext = false;
  auto [family, n] = detail::split_label(label, ext);
  if (ext) throw DomainError("extended diagrams have no Coxeter number");
  if (family == "A") return n + 1;
  if (family == "D") return 2 * n - 2;
  if (n == 6) return 12;
  if (n == 7) return 18;
  if (n == 8) return 30;
  throw DomainError("unknown diagram " + label);
}

/// Extended diagrams with up to `max_vertices` vertices (A~0.., D~4.., E~6..8).
inline std::vector<std::string> extended_catalog(std::size_t max_vertices = 10) {
  std::vector<std::string> out;
  for (std::size_t v = 1; v <= max_vertices; ++v) out.push_back(diagram_label("A", static_cast<int>(v) - 1, true));
  for (std::size_t v = 5; v <= max_vertices; ++v) out.push_back(diagram_label("D", static_cast<int>(v) - 1, true));
  for (int n : {6, 7, 8})
    if (static_cast<std::size_t>(n + 1) <= max_vertices) out.push_back(diagram_label("E", n, true));
  return out;
}

inline std::vector<std::string> finite_catalog(std::size_t max_vertices = 10) {
  std::vector<std::string> out;
  for (std::size_t v = 1; v <= max_vertices; ++v) out.push_back(diagram_label("A", static_cast<int>(v), false));
  for (std::size_t v = 4; v <= max_vertices; ++v) out.push_back(diagram_label("D", static_cast<int>(v), false));
  for (int n : {6, 7, 8})
    if (static_cast<std::size_t>(n) <= max_vertices) out.push_back(diagram_label("E", n, false));
  return out;
}

// ---------------------------------------------------------------------------
// Spectral data

/// Spectral radius of Ω (the operator norm, as Ω is symmetric and non-negative).
inline double graph_norm(const MarkedGraph& g) {
  if (g.size() == 0) throw DomainError("graph norm of the empty graph");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// Entrywise-positive eigenvector at the spectral radius, scaled so the
/// *-entry is 1 (unit Euclidean norm when no * is set).
inline std::vector<double> perron_vector(const MarkedGraph& g) {
  if (g.size() == 0) throw DomainError("Perron vector of the empty graph");
  if (!g.connected()) throw DomainError("Perron vector needs a connected graph");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.matrix());
  const auto& vals = solver.eigenvalues();
  Eigen::Index top = 0;
  for (Eigen::Index i = 1; i < vals.size(); ++i)
    if (vals(i) > vals(top)) top = i;
  Eigen::VectorXd v = solver.eigenvectors().col(top);
  if (v.sum() < 0) v = -v;
  const double scale = g.star() ? v(static_cast<Eigen::Index>(*g.star())) : v.norm();
  v /= scale;
  std::vector<double> out(v.data(), v.data() + v.size());
  for (double x : out)
    if (!(x > 0.0)) throw DomainError("Perron vector is not strictly positive");
  return out;
}

struct IntegralPerron {
  std::vector<long> values;
  double rounding_residual = 0.0;  ///< max |v_i - round(v_i)|
  bool exact_eigenvector = false;  ///< Ω r = λ r over the integers, λ = round(norm)
  long eigenvalue = 0;
  long sum_of_squares = 0;
};

inline IntegralPerron integral_perron(const MarkedGraph& g) {
  IntegralPerron r;
  const auto v = perron_vector(g);
  for (double x : v) {
    long k = std::lround(x);
    r.values.push_back(k);
    r.rounding_residual = std::max(r.rounding_residual, std::abs(x - static_cast<double>(k)));
    r.sum_of_squares += k * k;
  }
  r.eigenvalue = std::lround(graph_norm(g));
  r.exact_eigenvector = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    long s = 0;
    for (std::size_t j = 0; j < g.size(); ++j) s += g(i, j) * r.values[j];
    if (s != r.eigenvalue * r.values[i]) r.exact_eigenvector = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Classification

namespace detail {

inline bool isomorphic(const MarkedGraph& a, const MarkedGraph& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return false;
  auto signature = [](const MarkedGraph& g, std::size_t v) {
    int deg = 0;
    for (std::size_t w = 0; w < g.size(); ++w) deg += g(v, w);
    return std::make_pair(deg, g(v, v));
  };
  std::vector<std::pair<int, int>> sa, sb;
  for (std::size_t v = 0; v < n; ++v) {
    sa.push_back(signature(a, v));
    sb.push_back(signature(b, v));
  }
  auto sorted_a = sa, sorted_b = sb;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a != sorted_b) return false;

  std::vector<std::size_t> map(n, n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t v) {
    if (v == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || sa[v] != sb[w]) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) ok = a(v, u) == b(w, map[u]);
      if (!ok || a(v, v) != b(w, w)) continue;
      map[v] = w;
      used[w] = true;
      if (extend(v + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  return extend(0);
}

}  // namespace detail

/// Label of the catalog extended diagram isomorphic to g, or "unrecognized".
/// Precondition: connected with norm 2 (within 1e-9).
inline std::string classify_norm2(const MarkedGraph& g) {
  if (!g.connected()) throw DomainError("classification needs a connected graph");
  const double norm = graph_norm(g);
  if (std::abs(norm - 2.0) > 1e-9)
    throw DomainError("graph norm is " + std::to_string(norm) + ", not 2");
  for (const auto& label : extended_catalog(g.size()))
    if (detail::isomorphic(g, catalog_graph(label))) return label;
  return "unrecognized";
}

struct RootGram {
  Eigen::MatrixXd gram;  ///< 2 - Ω
  double min_eigenvalue = 0.0;
  bool positive_semidefinite = false;
  std::size_t rank = 0;
  /// Rows of the symmetric square root Δ of 2 - Ω and their inner products.
  Eigen::MatrixXd root_vectors;
  double reconstruction_error = 0.0;  ///< max |Δ Δ^T - (2 - Ω)|
};

inline RootGram root_gram(const MarkedGraph& g, double tol = 1e-10) {
  if (g.size() == 0) throw DomainError("root Gram of the empty graph");
  if (graph_norm(g) > 2.0 + 1e-9) throw DomainError("graph norm exceeds 2; 2 - Ω is not semidefinite");
  RootGram r;
  const auto n = static_cast<Eigen::Index>(g.size());
  r.gram = 2.0 * Eigen::MatrixXd::Identity(n, n) - g.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(r.gram);
  const auto& vals = solver.eigenvalues();
  r.min_eigenvalue = vals.minCoeff();
  r.positive_semidefinite = r.min_eigenvalue >= -tol;
  for (Eigen::Index i = 0; i < n; ++i)
    if (vals(i) > 1e-9) ++r.rank;
  Eigen::VectorXd roots = vals.cwiseMax(0.0).cwiseSqrt();
  r.root_vectors = solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().transpose();
  r.reconstruction_error = (r.root_vectors * r.root_vectors.transpose() - r.gram).cwiseAbs().maxCoeff();
  return r;
}

/// 4cos^2(π/k) for k = 3..n_max.
inline std::vector<std::pair<int, double>> admissible_indices(int n_max) {
  if (n_max < 3) throw DomainError("admissible indices start at n = 3");
  const double pi = std::acos(-1.0);
  std::vector<std::pair<int, double>> out;
  for (int k = 3; k <= n_max; ++k) {
    double c = std::cos(pi / k);
    out.emplace_back(k, 4.0 * c * c);
  }
  return out;
}

/// Γ: * joined to irrep i by d_i edges. Γ̌: * joined once to each group element.
struct SubfactorGraphs {
  MarkedGraph gamma;
  MarkedGraph gamma_check;
};

inline SubfactorGraphs group_subfactor_graphs(const std::vector<int>& irrep_dims, int group_order) {
  if (irrep_dims.empty()) throw DomainError("need at least one irreducible representation");
  long sum = 0;
  for (int d : irrep_dims) {
    if (d <= 0) throw DomainError("irrep dimensions must be positive");
    sum += static_cast<long>(d) * d;
  }
  if (sum != group_order)
    throw DomainError("sum of squared irrep dimensions is " + std::to_string(sum) + ", group order is " +
                      std::to_string(group_order));
  const std::size_t k = irrep_dims.size();
  std::vector<std::vector<int>> a(k + 1, std::vector<int>(k + 1, 0));
  std::vector<std::string> la{"*"};
  for (std::size_t i = 0; i < k; ++i) {
    a[0][i + 1] = a[i + 1][0] = irrep_dims[i];
    la.push_back("rho" + std::to_string(i + 1));
  }
  const auto order = static_cast<std::size_t>(group_order);
  std::vector<std::vector<int>> b(order + 1, std::vector<int>(order + 1, 0));
  std::vector<std::string> lb{"*"};
  for (std::size_t i = 0; i < order; ++i) {
    b[0][i + 1] = b[i + 1][0] = 1;
    lb.push_back("g" + std::to_string(i + 1));
  }
  return {MarkedGraph(std::move(a), std::move(la), 0), MarkedGraph(std::move(b), std::move(lb), 0)};
}

// ---------------------------------------------------------------------------
// Finite-dimensional Connes tensor product

/// Right module V = ⊕ p_k × n_k matrices and left module W = ⊕ n_k × q_k
/// matrices over M = ⊕ Matrix(n_k). V ⊗_M W = ⊕ p_k × q_k matrices.
struct BimoduleDims {
  std::vector<int> blocks;  ///< n_k
  std::vector<int> right;   ///< p_k (V as a right module), may be empty
  std::vector<int> left;    ///< q_k (W as a left module), may be empty
};

struct TensorDims {
  std::vector<std::pair<int, int>> block_shapes;  ///< (p_k, q_k)
  long total = 0;
};

inline TensorDims connes_tensor_dims(const std::vector<int>& blocks, const std::vector<int>& p,
                                     const std::vector<int>& q) {
  if (blocks.size() != p.size() || blocks.size() != q.size())
    throw DomainError("module dimension vectors must match the algebra's block count");
  for (const auto* v : {&blocks, &p, &q})
    for (int x : *v)
      if (x <= 0) throw DomainError("block dimensions must be positive integers");
  TensorDims t;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    t.block_shapes.emplace_back(p[k], q[k]);
    t.total += static_cast<long>(p[k]) * q[k];
  }
  return t;
}

inline TensorDims connes_tensor_dims(const BimoduleDims& v, const BimoduleDims& w) {
  if (v.blocks != w.blocks) throw DomainError("modules are over different algebras");
  return connes_tensor_dims(v.blocks, v.right, w.left);
}

/// A-B bimodule between multi-matrix algebras, described by the multiplicity
/// of each simple A_i ⊗ B_k^op module. Tensoring over the shared algebra
/// multiplies multiplicity matrices.
struct Bimodule {
  std::vector<int> left_blocks;
  std::vector<int> right_blocks;
  std::vector<std::vector<long>> multiplicity;  ///< [i][k]

  long dimension() const {
    long d = 0;
    for (std::size_t i = 0; i < left_blocks.size(); ++i)
      for (std::size_t k = 0; k < right_blocks.size(); ++k)
        d += multiplicity[i][k] * left_blocks[i] * right_blocks[k];
    return d;
  }

  friend bool operator==(const Bimodule&, const Bimodule&) = default;
};

inline Bimodule connes_tensor(const Bimodule& v, const Bimodule& w) {
  if (v.right_blocks != w.left_blocks) throw DomainError("bimodules do not share the middle algebra");
  Bimodule r{v.left_blocks, w.right_blocks, {}};
  r.multiplicity.assign(v.left_blocks.size(), std::vector<long>(w.right_blocks.size(), 0));
  for (std::size_t i = 0; i < v.left_blocks.size(); ++i)
    for (std::size_t k = 0; k < w.right_blocks.size(); ++k)
      for (std::size_t j = 0; j < v.right_blocks.size(); ++j) r.multiplicity[i][k] += v.multiplicity[i][j] * w.multiplicity[j][k];
  return r;
}

}  // namespace latticelab

#endif  // LATTICELAB_GRAPHS_MCKAY_HPP
