#ifndef LATTICELAB_TEMPERLEY_LIEB_HPP
#define LATTICELAB_TEMPERLEY_LIEB_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "latticelab/errors.hpp"
#include "latticelab/laurent.hpp"
#include "latticelab/operator.hpp"
#include "latticelab/scalar.hpp"

// Diagrams on n strands have 2n boundary points numbered counterclockwise
// around the rectangle:
//
//   top:     2n-1  2n-2  ...  n
//   bottom:    0     1   ...  n-1
//
// so bottom point k is k and top point k is 2n-1-k. In a composite a∘b the
// diagram a sits on top of b. Generators E_1..E_{n-1} join points i-1, i
// along the bottom and along the top (1-based i).

namespace latticelab {

inline constexpr std::size_t kMaxPairingStrands = 12;

class PlanarPairing {
 public:
  PlanarPairing() = default;

  /// From a partner table (partner[p] = point matched with p). Validates.
  explicit PlanarPairing(std::vector<std::uint8_t> partner) : partner_(std::move(partner)) { validate(); }

  static PlanarPairing from_pairs(std::size_t n, const std::vector<std::pair<int, int>>& pairs) {
    if (pairs.size() != n) throw ShapeError("a pairing on 2n points has exactly n pairs");
    std::vector<std::uint8_t> partner(2 * n, 0xff);
    for (auto [a, b] : pairs) {
      if (a < 0 || b < 0 || a >= static_cast<int>(2 * n) || b >= static_cast<int>(2 * n) || a == b)
        throw ShapeError("pairing point out of range");
      if (partner[a] != 0xff || partner[b] != 0xff) throw ShapeError("point used twice in pairing");
      partner[a] = static_cast<std::uint8_t>(b);
      partner[b] = static_cast<std::uint8_t>(a);
    }
    return PlanarPairing(std::move(partner));
  }

  static PlanarPairing identity(std::size_t n) {
    std::vector<std::uint8_t> partner(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
      partner[k] = static_cast<std::uint8_t>(2 * n - 1 - k);
      partner[2 * n - 1 - k] = static_cast<std::uint8_t>(k);
    }
    return PlanarPairing(std::move(partner));
  }

  static PlanarPairing generator(std::size_t n, std::size_t i) {
    if (i < 1 || i + 1 > n) throw ShapeError("TL generator index out of range");
    auto p = identity(n);
    auto& t = p.partner_;
    const std::size_t b0 = i - 1, b1 = i, t0 = 2 * n - i, t1 = 2 * n - 1 - i;
    t[b0] = static_cast<std::uint8_t>(b1);
    t[b1] = static_cast<std::uint8_t>(b0);
    t[t0] = static_cast<std::uint8_t>(t1);
    t[t1] = static_cast<std::uint8_t>(t0);
    return p;
  }

  std::size_t strands() const { return partner_.size() / 2; }
  std::size_t partner(std::size_t p) const { return partner_[p]; }
  const std::vector<std::uint8_t>& partners() const { return partner_; }

  /// Canonical sorted (low, high) pair list.
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t p = 0; p < partner_.size(); ++p)
      if (p < partner_[p]) out.emplace_back(static_cast<int>(p), partner_[p]);
    return out;
  }

  /// Number of strands joining bottom to top.
  std::size_t through_strands() const {
    std::size_t n = strands(), count = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (partner_[k] >= n) ++count;
    return count;
  }

  /// Top-bottom reflection p -> 2n-1-p.
  PlanarPairing reflected() const {
    const std::size_t m = partner_.size();
    std::vector<std::uint8_t> out(m);
    for (std::size_t p = 0; p < m; ++p) out[m - 1 - p] = static_cast<std::uint8_t>(m - 1 - partner_[p]);
    return PlanarPairing(std::move(out));
  }

  std::string to_string() const {
    std::string s = "{";
    for (auto [a, b] : pairs()) {
      if (s.size() > 1) s += ",";
      s += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
    return s + "}";
  }

  friend bool operator==(const PlanarPairing&, const PlanarPairing&) = default;
  friend auto operator<=>(const PlanarPairing&, const PlanarPairing&) = default;

 private:
  void validate() const {
    const std::size_t m = partner_.size();
    if (m % 2 != 0) throw ShapeError("pairing needs an even number of points");
    for (std::size_t p = 0; p < m; ++p) {
      if (partner_[p] >= m || partner_[p] == p || partner_[partner_[p]] != p)
        throw ShapeError("not a perfect matching");
    }
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t b = partner_[a];
      if (b < a) continue;
      for (std::size_t c = a + 1; c < b; ++c)
        if (partner_[c] < a || partner_[c] > b) throw ShapeError("pairing is not planar: chords cross");
    }
  }

  std::vector<std::uint8_t> partner_;
};

inline std::uint64_t catalan(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

/// All non-crossing perfect matchings of 2n points, in a fixed order.
inline std::vector<PlanarPairing> enumerate_pairings(std::size_t n) {
  if (n < 1 || n > kMaxPairingStrands)
    throw CapError("pairing enumeration supports 1 <= n <= " + std::to_string(kMaxPairingStrands));
  std::vector<PlanarPairing> out;
  out.reserve(catalan(n));
  std::vector<std::uint8_t> partner(2 * n);
  // Matches points [lo, hi) and then the pending intervals, depth first.
  std::vector<std::pair<std::size_t, std::size_t>> pending;
  std::function<void()> fill = [&]() {
    if (pending.empty()) {
      out.emplace_back(partner);
      return;
    }
    auto [lo, hi] = pending.back();
    pending.pop_back();
    if (lo == hi) {
      fill();
    } else {
      for (std::size_t mate = lo + 1; mate < hi; mate += 2) {
        partner[lo] = static_cast<std::uint8_t>(mate);
        partner[mate] = static_cast<std::uint8_t>(lo);
        pending.emplace_back(mate + 1, hi);
        pending.emplace_back(lo + 1, mate);
        fill();
        pending.pop_back();
        pending.pop_back();
      }
    }
    pending.emplace_back(lo, hi);
  };
  pending.emplace_back(0, 2 * n);
  fill();
  return out;
}

/// Stack a on top of b. Returns the resulting pairing and the number of
/// closed loops formed in the middle.
inline std::pair<PlanarPairing, std::size_t> stack_diagrams(const PlanarPairing& a, const PlanarPairing& b) {
  const std::size_t n = a.strands();
  if (b.strands() != n) throw ShapeError("diagrams have different strand counts");
  const std::size_t m = 2 * n;
  std::vector<std::uint8_t> result(m);
  std::vector<bool> middle_seen(n, false);

  // Walk from an external point until another external point is reached.
  // External points of the result: bottom of b (0..n-1), top of a (n..2n-1).
  auto walk = [&](bool in_a, std::size_t p) {
    while (true) {
      std::size_t q = in_a ? a.partner(p) : b.partner(p);
      if (in_a && q >= n) return q;
      if (!in_a && q < n) return q;
      if (in_a) {  // q = bottom k of a, glued to top k of b
        middle_seen[q] = true;
        p = m - 1 - q;
      } else {  // q = top k of b, glued to bottom k of a
        middle_seen[m - 1 - q] = true;
        p = m - 1 - q;
      }
      in_a = !in_a;
    }
  };
  for (std::size_t p = 0; p < n; ++p) result[p] = static_cast<std::uint8_t>(walk(false, p));
  for (std::size_t p = n; p < m; ++p) result[p] = static_cast<std::uint8_t>(walk(true, p));

  std::size_t loops = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (middle_seen[k]) continue;
    ++loops;
    // follow the loop through middle point k (bottom k of a / top k of b)
    std::size_t cur = k;
    do {
      middle_seen[cur] = true;
      std::size_t t = a.partner(cur);  // another bottom point of a
      middle_seen[t] = true;
      cur = m - 1 - b.partner(m - 1 - t);
    } while (!middle_seen[cur]);
  }
  return {PlanarPairing(std::move(result)), loops};
}

/// Loops formed by joining top point k to bottom point k for every k.
inline std::size_t closure_loops(const PlanarPairing& p) {
  const std::size_t m = 2 * p.strands();
  std::vector<bool> seen(m, false);
  std::size_t loops = 0;
  for (std::size_t s = 0; s < m; ++s) {
    if (seen[s]) continue;
    ++loops;
    std::size_t cur = s;
    while (!seen[cur]) {
      seen[cur] = true;
      std::size_t mate = p.partner(cur);
      seen[mate] = true;
      cur = m - 1 - mate;
    }
  }
  return loops;
}

/// Formal linear combination of planar pairings with loop value delta.
template <class S>
class TLElement {
 public:
  using Traits = ScalarTraits<S>;

  TLElement(std::size_t n, S delta) : n_(n), delta_(std::move(delta)) {
    if (n == 0 || n > kMaxPairingStrands) throw CapError("TL elements support 1 <= n <= 12");
  }

  static TLElement identity(std::size_t n, const S& delta) {
    TLElement e(n, delta);
    e.add(PlanarPairing::identity(n), Traits::one());
    return e;
  }
  static TLElement generator(std::size_t n, std::size_t i, const S& delta) {
    TLElement e(n, delta);
    e.add(PlanarPairing::generator(n, i), Traits::one());
    return e;
  }
  static TLElement basis(const PlanarPairing& p, const S& delta) {
    TLElement e(p.strands(), delta);
    e.add(p, Traits::one());
    return e;
  }

  std::size_t strands() const { return n_; }
  const S& delta() const { return delta_; }
  const std::map<PlanarPairing, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coefficient(const PlanarPairing& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  void add(const PlanarPairing& p, const S& c) {
    if (p.strands() != n_) throw ShapeError("diagram strand count mismatch");
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(p, c);
    if (!inserted) {
      it->second = it->second + c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  friend TLElement operator+(TLElement a, const TLElement& b) {
    a.require_compatible(b);
    for (const auto& [p, c] : b.terms_) a.add(p, c);
    return a;
  }
  friend TLElement operator-(TLElement a, const TLElement& b) {
    a.require_compatible(b);
    for (const auto& [p, c] : b.terms_) a.add(p, -c);
    return a;
  }
  friend TLElement operator*(const S& s, const TLElement& a) {
    TLElement r(a.n_, a.delta_);
    for (const auto& [p, c] : a.terms_) r.add(p, s * c);
    return r;
  }
  friend TLElement operator*(const TLElement& a, const S& s) { return s * a; }

  /// a∘b: a stacked on top of b, closed loops replaced by delta.
  friend TLElement operator*(const TLElement& a, const TLElement& b) {
    a.require_compatible(b);
    TLElement r(a.n_, a.delta_);
    for (const auto& [pa, ca] : a.terms_)
      for (const auto& [pb, cb] : b.terms_) {
        auto [p, loops] = stack_diagrams(pa, pb);
        r.add(p, ca * cb * power(a.delta_, static_cast<int>(loops)));
      }
    return r;
  }

  /// Reflection top <-> bottom with conjugated coefficients.
  TLElement adjoint() const {
    TLElement r(n_, delta_);
    for (const auto& [p, c] : terms_) r.add(p.reflected(), Traits::conj(c));
    return r;
  }

  friend bool operator==(const TLElement& a, const TLElement& b) {
    return a.n_ == b.n_ && a.delta_ == b.delta_ && a.terms_ == b.terms_;
  }

  /// Largest coefficient magnitude of a - b (0 for exact equality).
  friend double max_abs_diff(const TLElement& a, const TLElement& b) {
    double m = 0.0;
    for (const auto& [p, c] : (a - b).terms_) m = std::max(m, Traits::magnitude(c));
    return m;
  }

 private:
  void require_compatible(const TLElement& o) const {
    if (n_ != o.n_) throw ShapeError("TL elements on different strand counts");
    if (!(delta_ == o.delta_)) throw ShapeError("TL elements with different loop values");
  }

  std::size_t n_;
  S delta_;
  std::map<PlanarPairing, S> terms_;
};

/// Product E_{i1} E_{i2} ... for a word of generator indices (1-based).
template <class S>
TLElement<S> tl_word(std::size_t n, const std::vector<std::size_t>& word, const S& delta) {
  auto x = TLElement<S>::identity(n, delta);
  for (auto i : word) x = x * TLElement<S>::generator(n, i, delta);
  return x;
}

/// sum_c c * delta^(closure loops - shift). Negative net powers need delta
/// to be invertible in S.
template <class S>
S closure_value(const TLElement<S>& x, int shift = 0) {
  S total = ScalarTraits<S>::zero();
  for (const auto& [p, c] : x.terms())
    total = total + c * power(x.delta(), static_cast<int>(closure_loops(p)) - shift);
  return total;
}

/// Normalized Markov trace, tr(1) = 1.
template <class S>
S markov_trace(const TLElement<S>& x) {
  return closure_value(x, static_cast<int>(x.strands()));
}

/// Residuals of E_i^2 = delta E_i, E_i E_{i±1} E_i = E_i and E_i E_j = E_j E_i
/// (|i-j| >= 2) for a list of generators E_1..E_m.
struct TLRelationReport {
  double idempotent = 0.0;
  double braid_like = 0.0;
  double far_commute = 0.0;
  std::size_t instances = 0;
  double max() const { return std::max({idempotent, braid_like, far_commute}); }
};

template <class Elem, class S, class Diff>
TLRelationReport tl_relations_residual_generic(const std::vector<Elem>& e, const S& delta, Diff diff) {
  TLRelationReport r;
  const std::size_t m = e.size();
  for (std::size_t i = 0; i < m; ++i) {
    r.idempotent = std::max(r.idempotent, diff(e[i] * e[i], e[i] * delta));
    ++r.instances;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      std::size_t gap = i > j ? i - j : j - i;
      if (gap == 1)
        r.braid_like = std::max(r.braid_like, diff(e[i] * e[j] * e[i], e[i]));
      else
        r.far_commute = std::max(r.far_commute, diff(e[i] * e[j], e[j] * e[i]));
      ++r.instances;
    }
  }
  return r;
}

template <class S>
TLRelationReport tl_relations_residual(const std::vector<Operator<S>>& e, const S& delta) {
  return tl_relations_residual_generic(e, delta, [](const Operator<S>& a, const Operator<S>& b) {
    return max_abs_diff(a, b);
  });
}

template <class S>
TLRelationReport tl_relations_residual(const std::vector<TLElement<S>>& e, const S& delta) {
  return tl_relations_residual_generic(e, delta, [](const TLElement<S>& a, const TLElement<S>& b) {
    return max_abs_diff(a, b);
  });
}

template <class S>
std::vector<TLElement<S>> tl_generators(std::size_t n, const S& delta) {
  std::vector<TLElement<S>> e;
  for (std::size_t i = 1; i < n; ++i) e.push_back(TLElement<S>::generator(n, i, delta));
  return e;
}

/// Gram matrix G_ab = tr(a* ∘ b) over the pairing basis at real delta.
inline Eigen::MatrixXd trace_gram_matrix(std::size_t n, double delta) {
  if (n > 9) throw CapError("trace Gram matrix supports n <= 9");
  const auto basis = enumerate_pairings(n);
  const auto size = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd g(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const auto star = basis[i].reflected();
    for (Eigen::Index j = i; j < size; ++j) {
      auto [p, loops] = stack_diagrams(star, basis[j]);
      double v = std::pow(delta, static_cast<double>(loops + closure_loops(p)) - static_cast<double>(n));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

/// Minimum eigenvalue of the trace Gram matrix.
inline double gram_positivity(std::size_t n, double delta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(trace_gram_matrix(n, delta), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// P = E_1 E_3 ... E_{2k-1} on 2k strands; check P x P = phi(x) P for every
/// word x of length <= max_length, exactly with delta the Laurent variable d.
struct JonesProjectionResult {
  std::vector<std::size_t> word;
  LaurentQ phi;
  bool proportional = false;
};

struct JonesProjectionReport {
  std::size_t pairs = 0;  ///< k: P lives on 2k strands
  std::size_t words = 0;
  std::size_t failures = 0;
  std::vector<JonesProjectionResult> results;
  bool pass() const { return failures == 0; }
};

inline JonesProjectionReport jones_projection_check(std::size_t pairs, std::size_t max_length = 6) {
  if (pairs < 1 || 2 * pairs > kMaxPairingStrands) throw CapError("projection check supports 1 <= k <= 6");
  const std::size_t strands = 2 * pairs;
  const LaurentQ delta = LaurentQ::var('d');
  std::vector<std::size_t> odd;
  for (std::size_t i = 1; i < strands; i += 2) odd.push_back(i);
  const auto p = tl_word(strands, odd, delta);
  const auto& [p_diagram, p_coeff] = *p.terms().begin();

  JonesProjectionReport report;
  report.pairs = pairs;
  std::vector<std::size_t> word;
  std::function<void(const TLElement<LaurentQ>&)> visit = [&](const TLElement<LaurentQ>& x) {
    auto pxp = p * x * p;
    JonesProjectionResult r{word, {}, false};
    if (pxp.is_zero()) {
      r.proportional = true;
    } else if (pxp.terms().size() == 1 && pxp.terms().begin()->first == p_diagram) {
      r.phi = pxp.terms().begin()->second * p_coeff.inverse();
      r.proportional = true;
    }
    ++report.words;
    if (!r.proportional) ++report.failures;
    report.results.push_back(std::move(r));
    if (word.size() == max_length) return;
    for (std::size_t i = 1; i < strands; ++i) {
      word.push_back(i);
      visit(x * TLElement<LaurentQ>::generator(strands, i, delta));
      word.pop_back();
    }
  };
  visit(TLElement<LaurentQ>::identity(strands, delta));
  return report;
}

/// Potts generators on `sites` copies of C^Q in the doubled indexing:
/// E_{2i-1} = p on site i (all entries 1/sqrt Q), E_{2i} = sqrt Q d_{i,i+1}
/// with d the projection onto equal neighbouring spins. Loop value sqrt Q;
/// the list corresponds to 2*sites TL strands.
template <class S>
std::vector<Operator<S>> potts_representation(std::size_t sites, std::size_t Q, const S& sqrt_q) {
  using T = ScalarTraits<S>;
  if (Q < 2) throw DomainError("Potts representation needs Q >= 2");
  if (sites < 1) throw ShapeError("Potts representation needs at least one site");
  checked_space_dim(Q, sites);
  Operator<S> p(Q, 1);
  const S inv = T::inverse(sqrt_q);
  for (std::size_t i = 0; i < Q; ++i)
    for (std::size_t j = 0; j < Q; ++j) p(i, j) = inv;
  Operator<S> d(Q, 2);
  for (std::size_t s = 0; s < Q; ++s) d(s * Q + s, s * Q + s) = sqrt_q;
  std::vector<Operator<S>> e;
  for (std::size_t i = 1; i <= sites; ++i) {
    e.push_back(embed_one_site(p, i, sites));
    if (i < sites) e.push_back(embed_two_site(d, i, sites));
  }
  return e;
}

/// Sign convention for the two-site vertex-model TL generator.
///   displayed: middle block [[q^-1, 1], [1, q]]
///   r_matrix:  middle block [[q^-1, -1], [-1, q]], the gauge in which the
///              six-vertex R(x) is a combination of E and Id.
/// The two are conjugate by the diagonal sign operator (-1)^{sum_k k a_k}.
enum class VertexGauge { displayed, r_matrix };

template <class S>
Operator<S> vertex_tl_local(const S& q, VertexGauge gauge = VertexGauge::displayed) {
  using T = ScalarTraits<S>;
  if (T::is_zero(q)) throw DomainError("vertex TL generator needs q != 0");
  const S off = gauge == VertexGauge::displayed ? T::one() : -T::one();
  Operator<S> e(2, 2);
  e(1, 1) = T::inverse(q);
  e(1, 2) = off;
  e(2, 1) = off;
  e(2, 2) = q;
  return e;
}

/// E_1..E_{n-1} on n copies of C^2; loop value q + q^-1.
template <class S>
std::vector<Operator<S>> vertex_representation(std::size_t n, const S& q, VertexGauge gauge = VertexGauge::displayed) {
  const auto local = vertex_tl_local(q, gauge);
  std::vector<Operator<S>> e;
  for (std::size_t i = 1; i < n; ++i) e.push_back(embed_two_site(local, i, n));
  return e;
}

/// Diagonal sign operator relating the two vertex gauges:
/// E_r_matrix = G E_displayed G.
template <class S>
Operator<S> vertex_gauge_operator(std::size_t n) {
  using T = ScalarTraits<S>;
  Operator<S> g(2, n);
  for (std::size_t idx = 0; idx < g.dim(); ++idx) {
    std::size_t parity = 0;
    for (std::size_t k = 1; k <= n; ++k) parity += k * ((idx >> (n - k)) & 1u);
    g(idx, idx) = parity % 2 ? -T::one() : T::one();
  }
  return g;
}

/// Best (alpha, beta) with R ≈ alpha E + beta Id from the (0,0) and (1,2)
/// entries, plus the residual of the full 4x4 comparison.
template <class S>
struct TLDecomposition {
  S alpha;
  S beta;
  double residual = 0.0;
};

template <class S>
TLDecomposition<S> decompose_in_tl(const Operator<S>& r, const Operator<S>& e) {
  using T = ScalarTraits<S>;
  if (r.local_dim() != 2 || r.sites() != 2 || !r.same_shape(e)) throw ShapeError("expects two-site operators on C^2");
  if (T::is_zero(e(1, 2))) throw DomainError("generator has no off-diagonal entry");
  S alpha = r(1, 2) * T::inverse(e(1, 2));
  S beta = r(0, 0) - alpha * e(0, 0);
  auto fit = e * alpha + Operator<S>::identity(2, 2) * beta;
  return {alpha, beta, max_abs_diff(fit, r)};
}

/// Map abstract TL words to operators and check every word up to max_length
/// gives the same operator as any other word reducing to the same diagram,
/// after clearing the delta powers. Returns the maximal residual.
template <class S>
double tl_homomorphism_residual(std::size_t n, const std::vector<Operator<S>>& rep, const S& delta,
                                std::size_t max_length) {
  if (rep.size() + 1 != n) throw ShapeError("representation must supply n-1 generators");
  const std::size_t local_d = rep.front().local_dim();
  const std::size_t sites = rep.front().sites();
  struct Seen {
    std::size_t loops;
    Operator<S> op;
  };
  std::map<PlanarPairing, Seen> first;
  double worst = 0.0;
  std::vector<std::size_t> word;
  std::function<void(const PlanarPairing&, std::size_t, const Operator<S>&)> visit =
      [&](const PlanarPairing& d, std::size_t loops, const Operator<S>& op) {
        auto it = first.find(d);
        if (it == first.end()) {
          first.emplace(d, Seen{loops, op});
        } else {
          // op / delta^loops == it->op / delta^it->loops
          auto lhs = op * power(delta, static_cast<int>(it->second.loops));
          auto rhs = it->second.op * power(delta, static_cast<int>(loops));
          worst = std::max(worst, max_abs_diff(lhs, rhs));
        }
        if (word.size() == max_length) return;
        for (std::size_t i = 1; i < n; ++i) {
          auto [next, extra] = stack_diagrams(d, PlanarPairing::generator(n, i));
          word.push_back(i);
          visit(next, loops + extra, op * rep[i - 1]);
          word.pop_back();
        }
      };
  visit(PlanarPairing::identity(n), 0, Operator<S>::identity(local_d, sites));
  return worst;
}

/// Level k of the Temperley-Lieb tower in the generic case: simple components
/// labelled by the endpoint j of paths on A_infinity from the end vertex,
/// sizes = number of such paths of length k.
struct BratteliLevel {
  std::size_t level = 0;
  std::vector<std::size_t> labels;  ///< endpoints j (j ≡ level mod 2)
  std::vector<std::uint64_t> sizes;
  std::uint64_t dimension() const {
    std::uint64_t s = 0;
    for (auto x : sizes) s += x * x;
    return s;
  }
};

struct BratteliDiagram {
  std::vector<BratteliLevel> levels;
  /// inclusions[k][a][b]: multiplicity of component a of level k in component b of level k+1
  std::vector<std::vector<std::vector<std::uint64_t>>> inclusions;
};

inline BratteliDiagram bratteli(std::size_t n_max) {
  if (n_max > 20) throw CapError("Bratteli diagram supports n_max <= 20");
  BratteliDiagram b;
  std::vector<std::uint64_t> paths(n_max + 2, 0);
  paths[0] = 1;
  for (std::size_t k = 0; k <= n_max; ++k) {
    BratteliLevel lv;
    lv.level = k;
    for (std::size_t j = k % 2; j <= k; j += 2) {
      lv.labels.push_back(j);
      lv.sizes.push_back(paths[j]);
    }
    b.levels.push_back(std::move(lv));
    std::vector<std::uint64_t> next(n_max + 2, 0);
    for (std::size_t j = 0; j <= k; ++j) {
      if (paths[j] == 0) continue;
      next[j + 1] += paths[j];
      if (j > 0) next[j - 1] += paths[j];
    }
    paths = std::move(next);
  }
  for (std::size_t k = 0; k < n_max; ++k) {
    const auto& lo = b.levels[k].labels;
    const auto& hi = b.levels[k + 1].labels;
    std::vector<std::vector<std::uint64_t>> m(lo.size(), std::vector<std::uint64_t>(hi.size(), 0));
    for (std::size_t a = 0; a < lo.size(); ++a)
      for (std::size_t c = 0; c < hi.size(); ++c)
        if (lo[a] + 1 == hi[c] || hi[c] + 1 == lo[a]) m[a][c] = 1;
    b.inclusions.push_back(std::move(m));
  }
  return b;
}

/// F_i = 1 + sign * S_{i,i+1} on (C^d)^{⊗sites}. With sign = -1 these satisfy
/// the TL relations with delta = 2 (they are twice the antisymmetrizers).
template <class S>
std::vector<Operator<S>> symmetric_group_tl(std::size_t sites, std::size_t d = 2, int sign = -1) {
  const auto flip = flip_operator<S>(d);
  const auto local = Operator<S>::identity(d, 2) + flip * ScalarTraits<S>::from_int(sign);
  std::vector<Operator<S>> f;
  for (std::size_t i = 1; i < sites; ++i) f.push_back(embed_two_site(local, i, sites));
  return f;
}

}  // namespace latticelab

#endif  // LATTICELAB_TEMPERLEY_LIEB_HPP
