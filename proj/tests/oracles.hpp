// Independent reference computations used by the tests. Nothing here calls
// into the library's algorithms; only plain loops and small containers.
#ifndef LATTICELAB_TESTS_ORACLES_HPP
#define LATTICELAB_TESTS_ORACLES_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

/// Count balanced bracket strings of length 2n by walking prefixes.
inline std::uint64_t ballot_catalan(int n) {
  // ways[h] = number of prefixes ending at height h
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(n) + 2, 0);
  ways[0] = 1;
  for (int step = 0; step < 2 * n; ++step) {
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (std::size_t h = 0; h + 1 < ways.size(); ++h) {
      if (ways[h] == 0) continue;
      next[h + 1] += ways[h];
      if (h > 0) next[h - 1] += ways[h];
    }
    ways = next;
  }
  return ways[0];
}

/// Integer Laurent polynomial in one variable: exponent -> coefficient.
using Poly = std::map<int, long>;

inline Poly trim(Poly p) {
  for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
  return p;
}

inline Poly mul(const Poly& a, const Poly& b) {
  Poly r;
  for (auto [ea, ca] : a)
    for (auto [eb, cb] : b) r[ea + eb] += ca * cb;
  return trim(r);
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (auto [e, c] : b) r[e] += c;
  return trim(r);
}

inline Poly mono(int e, long c = 1) { return trim(Poly{{e, c}}); }

inline Poly pow(const Poly& p, int k) {
  Poly r = mono(0);
  for (int i = 0; i < k; ++i) r = mul(r, p);
  return r;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  int components() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) c += find(i) == i;
    return c;
  }
};

/// Kauffman bracket of the closure of a braid word by summing over all 2^c
/// smoothings. A positive letter i contributes A (strands go straight through)
/// or A^-1 (cup-cap between positions i, i+1); negative letters swap the two
/// weights. Each state gives delta^(loops - 1) with delta = -A^2 - A^-2, so the
/// unknot has bracket 1.
inline Poly kauffman_bracket(int strands, const std::vector<int>& letters) {
  const int len = static_cast<int>(letters.size());
  if (len == 0) return pow(add(mono(2, -1), mono(-2, -1)), strands - 1);
  const Poly delta = add(mono(2, -1), mono(-2, -1));
  // node (level k, position j), level len identified with level 0
  auto node = [&](int k, int j) { return (k % len) * strands + j; };
  Poly total;
  for (std::uint64_t state = 0; state < (std::uint64_t{1} << len); ++state) {
    UnionFind uf(len * strands);
    int exponent = 0;
    for (int k = 0; k < len; ++k) {
      const int i = std::abs(letters[k]) - 1;
      const bool straight = (state >> k) & 1;
      for (int j = 0; j < strands; ++j)
        if (j != i && j != i + 1) uf.unite(node(k, j), node(k + 1, j));
      if (straight) {
        uf.unite(node(k, i), node(k + 1, i));
        uf.unite(node(k, i + 1), node(k + 1, i + 1));
      } else {
        uf.unite(node(k, i), node(k, i + 1));
        uf.unite(node(k + 1, i), node(k + 1, i + 1));
      }
      const bool positive = letters[k] > 0;
      exponent += (straight == positive) ? 1 : -1;
    }
    total = add(total, mul(mono(exponent), pow(delta, uf.components() - 1)));
  }
  return total;
}

/// (-A^3)^(-writhe) <closure>.
inline Poly normalized_bracket(int strands, const std::vector<int>& letters) {
  int writhe = 0;
  for (int l : letters) writhe += l > 0 ? 1 : -1;
  const long sign = (writhe % 2 == 0) ? 1 : -1;
  return mul(mono(-3 * writhe, sign), kauffman_bracket(strands, letters));
}

/// Rewrite a polynomial in A with exponents divisible by 4 in t = A^-4.
inline Poly in_t(const Poly& p) {
  Poly r;
  for (auto [e, c] : p) r[-e / 4] = c;
  return r;
}

using Complex = std::complex<double>;

/// Dense 8x8 products of two-site matrices acting on sites (1,2) or (2,3),
/// written as explicit index sums. r is 4x4, row index = 2*out1 + out2.
using Mat4 = std::vector<std::vector<Complex>>;
using Mat8 = std::vector<std::vector<Complex>>;

inline Mat8 act12(const Mat4& r) {
  Mat8 m(8, std::vector<Complex>(8));
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int i3 = 0; i3 < 2; ++i3)
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2) m[4 * i1 + 2 * i2 + i3][4 * j1 + 2 * j2 + i3] = r[2 * i1 + i2][2 * j1 + j2];
  return m;
}

inline Mat8 act23(const Mat4& r) {
  Mat8 m(8, std::vector<Complex>(8));
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int i3 = 0; i3 < 2; ++i3)
        for (int j2 = 0; j2 < 2; ++j2)
          for (int j3 = 0; j3 < 2; ++j3) m[4 * i1 + 2 * i2 + i3][4 * i1 + 2 * j2 + j3] = r[2 * i2 + i3][2 * j2 + j3];
  return m;
}

inline Mat8 mul8(const Mat8& a, const Mat8& b) {
  Mat8 c(8, std::vector<Complex>(8));
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k)
      for (int j = 0; j < 8; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// max |R12(x) R23(xy) R12(y) - R23(y) R12(xy) R23(x)|.
inline double ybe_residual(const Mat4& rx, const Mat4& rxy, const Mat4& ry) {
  const auto lhs = mul8(mul8(act12(rx), act23(rxy)), act12(ry));
  const auto rhs = mul8(mul8(act23(ry), act12(rxy)), act23(rx));
  double worst = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) worst = std::max(worst, std::abs(lhs[i][j] - rhs[i][j]));
  return worst;
}

/// The six-vertex matrix typed in entry by entry, complex arithmetic only.
inline Mat4 six_vertex_direct(Complex q, Complex x) {
  const Complex pre = 1.0 / (x * q - 1.0 / (x * q));
  Mat4 r(4, std::vector<Complex>(4));
  r[0][0] = r[3][3] = pre * (x / q - q / x);
  r[1][1] = pre * (1.0 / q - q) / x;
  r[2][2] = pre * x * (1.0 / q - q);
  r[1][2] = r[2][1] = pre * (x - 1.0 / x);
  return r;
}

/// Potts state sum on an m x n grid written with nested loops over an
/// explicit spin array. Periodic flags wrap rows / columns.
template <class S>
S potts_sum(int Q, int n, int m, bool periodic_h, bool periodic_v, const std::function<S(int, int)>& wh,
            const std::function<S(int, int)>& wv) {
  std::vector<int> s(static_cast<std::size_t>(n * m), 0);
  S z(0);
  std::function<void(int)> rec = [&](int k) {
    if (k == n * m) {
      S p(1);
      for (int r = 0; r < m; ++r)
        for (int j = 0; j < n; ++j) {
          if (j + 1 < n) p = p * wh(s[r * n + j], s[r * n + j + 1]);
          else if (periodic_h) p = p * wh(s[r * n + j], s[r * n]);
          if (r + 1 < m) p = p * wv(s[r * n + j], s[(r + 1) * n + j]);
          else if (periodic_v) p = p * wv(s[r * n + j], s[j]);
        }
      z = z + p;
      return;
    }
    for (int v = 0; v < Q; ++v) {
      s[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return z;
}

/// Vertex-model state sum, recursion over edges. w(west, east, south, north).
/// Horizontal edges run around rows (periodic) or have free ends; vertical
/// edges wrap (periodic) or have free ends.
template <class S>
S vertex_sum(int d, int n, int m, bool periodic_h, bool periodic_v, const std::function<S(int, int, int, int)>& w) {
  const int hcols = periodic_h ? n : n + 1;
  const int vrows = periodic_v ? m : m + 1;
  std::vector<int> h(static_cast<std::size_t>(m * hcols), 0), v(static_cast<std::size_t>(vrows * n), 0);
  auto H = [&](int r, int j) { return h[r * hcols + (periodic_h ? j % n : j)]; };
  auto V = [&](int k, int j) { return v[(periodic_v ? k % m : k) * n + j]; };
  const int total = static_cast<int>(h.size() + v.size());
  S z(0);
  std::function<void(int)> rec = [&](int k) {
    if (k == total) {
      S p(1);
      for (int r = 0; r < m; ++r)
        for (int j = 0; j < n; ++j) p = p * w(H(r, j), H(r, j + 1), V(r, j), V(r + 1, j));
      z = z + p;
      return;
    }
    int& slot = k < static_cast<int>(h.size()) ? h[k] : v[k - h.size()];
    for (int x = 0; x < d; ++x) {
      slot = x;
      rec(k + 1);
    }
  };
  rec(0);
  return z;
}

}  // namespace oracle

#endif  // LATTICELAB_TESTS_ORACLES_HPP
