#ifndef LATTICELAB_BRAIDS_LINKS_HPP
#define LATTICELAB_BRAIDS_LINKS_HPP

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latticelab/errors.hpp"
#include "latticelab/laurent.hpp"
#include "latticelab/operator.hpp"
#include "latticelab/temperley_lieb.hpp"
#include "latticelab/yang_baxter.hpp"

namespace latticelab {

/// Word in the braid group B_n: letter +i is σ_i, -i is σ_i^-1.
class BraidWord {
 public:
  BraidWord() = default;
  BraidWord(std::size_t strands, std::vector<int> letters) : strands_(strands), letters_(std::move(letters)) {
    if (strands_ == 0) throw ShapeError("braid needs at least one strand");
    for (int l : letters_)
      if (l == 0 || static_cast<std::size_t>(std::abs(l)) >= strands_)
        throw ShapeError("braid letter " + std::to_string(l) + " out of range for " + std::to_string(strands_) +
                         " strands");
  }

  /// Parses "s1 s2^-1 s1" (or "1 -2 1"). Strand count defaults to one more
  /// than the largest generator index.
  static BraidWord parse(const std::string& text, std::size_t strands = 0) {
    std::istringstream in(text);
    std::string tok;
    std::vector<int> letters;
    std::size_t top = 0;
    while (in >> tok) {
      std::string body = tok;
      int sign = 1;
      if (auto caret = body.find('^'); caret != std::string::npos) {
        const std::string e = body.substr(caret + 1);
        if (e == "-1")
          sign = -1;
        else if (e != "1" && e != "+1")
          throw ParseError("braid exponent must be 1 or -1 in '" + tok + "'");
        body = body.substr(0, caret);
      }
      if (!body.empty() && (body[0] == 's' || body[0] == 'S')) body = body.substr(1);
      if (!body.empty() && body[0] == '-') {
        sign = -sign;
        body = body.substr(1);
      }
      if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("cannot parse braid letter '" + tok + "'");
      int idx = std::stoi(body);
      if (idx <= 0) throw ParseError("braid generator index must be positive in '" + tok + "'");
      letters.push_back(sign * idx);
      top = std::max<std::size_t>(top, static_cast<std::size_t>(idx));
    }
    if (strands == 0) strands = top + 1;
    try {
      return BraidWord(strands, std::move(letters));
    } catch (const ShapeError& e) {
      throw ParseError(e.what());
    }
  }

  std::size_t strands() const { return strands_; }
  const std::vector<int>& letters() const { return letters_; }

  int writhe() const {
    int w = 0;
    for (int l : letters_) w += l > 0 ? 1 : -1;
    return w;
  }

  BraidWord inverse() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    for (int& l : out) l = -l;
    return {strands_, std::move(out)};
  }

  /// Mirror image: every crossing changes sign.
  BraidWord mirror() const {
    std::vector<int> out = letters_;
    for (int& l : out) l = -l;
    return {strands_, std::move(out)};
  }

  friend BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    if (a.strands_ != b.strands_) throw ShapeError("braid words on different strand counts");
    std::vector<int> out = a.letters_;
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return {a.strands_, std::move(out)};
  }

  /// Markov stabilization: add a strand and append σ_n^{±1}.
  BraidWord stabilized(bool positive) const {
    std::vector<int> out = letters_;
    out.push_back((positive ? 1 : -1) * static_cast<int>(strands_));
    return {strands_ + 1, std::move(out)};
  }

  std::string to_string() const {
    std::string s;
    for (int l : letters_) {
      if (!s.empty()) s += " ";
      s += "s" + std::to_string(std::abs(l));
      if (l < 0) s += "^-1";
    }
    return s;
  }

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  std::size_t strands_ = 1;
  std::vector<int> letters_;
};

/// σ_i -> braid limit R at sites (i, i+1), σ_i^-1 -> its inverse.
template <class S>
Operator<S> braid_rep_vertex(const BraidWord& w, const S& q) {
  const auto r = braid_limit(q);
  const auto r_inv = braid_limit_inverse(q);
  Operator<S> out = Operator<S>::identity(2, w.strands());
  for (int l : w.letters())
    out = out * embed_two_site(l > 0 ? r : r_inv, static_cast<std::size_t>(std::abs(l)), w.strands());
  return out;
}

/// Loop value -A^2 - A^-2 in the variable A.
inline LaurentQ kauffman_delta() {
  return -(LaurentQ::var('A', 2) + LaurentQ::var('A', -2));
}

/// σ_i -> A + A^-1 E_i, σ_i^-1 -> A^-1 + A E_i in TL_n(-A^2 - A^-2).
inline TLElement<LaurentQ> braid_rep_tl(const BraidWord& w) {
  const LaurentQ delta = kauffman_delta();
  const LaurentQ a = LaurentQ::var('A');
  const LaurentQ ai = LaurentQ::var('A', -1);
  const std::size_t n = w.strands();
  auto out = TLElement<LaurentQ>::identity(n, delta);
  const auto one = TLElement<LaurentQ>::identity(n, delta);
  for (int l : w.letters()) {
    const auto e = TLElement<LaurentQ>::generator(n, static_cast<std::size_t>(std::abs(l)), delta);
    out = out * (l > 0 ? one * a + e * ai : one * ai + e * a);
  }
  return out;
}

/// The same letters sent to A Id + A^-1 E'_i in the vertex representation,
/// r_matrix gauge, at q = -A^2. Equals A^{-3 writhe} braid_rep_vertex(w, -A^2).
inline Operator<LaurentQ> braid_rep_tl_vertex(const BraidWord& w) {
  const LaurentQ a = LaurentQ::var('A');
  const LaurentQ ai = LaurentQ::var('A', -1);
  const LaurentQ q = -LaurentQ::var('A', 2);
  const auto e = vertex_representation(w.strands(), q, VertexGauge::r_matrix);
  const auto id = Operator<LaurentQ>::identity(2, w.strands());
  Operator<LaurentQ> out = id;
  for (int l : w.letters()) {
    const auto& ei = e.at(static_cast<std::size_t>(std::abs(l)) - 1);
    out = out * (l > 0 ? id * a + ei * ai : id * ai + ei * a);
  }
  return out;
}

struct LinkInvariant {
  LaurentQ bracket;    ///< <closure>, with the unknot normalized to 1
  LaurentQ invariant;  ///< (-A^3)^{-writhe} <closure>
  LaurentQ jones;      ///< invariant with A^-4 -> t, or A^-2 -> u (= t^{1/2})
  bool half_integral = false;  ///< jones is written in u = t^{1/2}
};

/// Rewrite a polynomial in A with all exponents even as one in t = A^-4
/// (exponents ≡ 0 mod 4) or u = A^-2 otherwise.
inline std::pair<LaurentQ, bool> to_jones_variable(const LaurentQ& f) {
  bool quarter = true;
  for (const auto& [m, c] : f.terms()) {
    int e = m.exponent('A');
    if (e % 2 != 0) throw DomainError("polynomial has odd powers of A");
    if (e % 4 != 0) quarter = false;
  }
  std::vector<LaurentQ::Term> out;
  for (const auto& [m, c] : f.terms()) {
    int e = m.exponent('A');
    out.emplace_back(quarter ? Monomial::var('t', -e / 4) : Monomial::var('u', -e / 2), c);
  }
  return {LaurentQ::from_terms(std::move(out)), !quarter};
}

inline LinkInvariant link_invariant(const BraidWord& w) {
  LinkInvariant r;
  r.bracket = closure_value(braid_rep_tl(w), 1);
  const LaurentQ minus_a3 = -LaurentQ::var('A', 3);
  r.invariant = r.bracket * power(minus_a3, -w.writhe());
  std::tie(r.jones, r.half_integral) = to_jones_variable(r.invariant);
  return r;
}

/// Residuals of σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}, σ_i σ_j = σ_j σ_i
/// (|i-j| >= 2) and σ_i σ_i^-1 = 1 in both representations.
struct BraidRelationReport {
  std::size_t instances = 0;
  double vertex = 0.0;
  double tl = 0.0;
};

inline BraidRelationReport braid_relations_check(std::size_t n) {
  if (n < 2 || n > 6) throw CapError("braid relation check supports 2 <= n <= 6");
  BraidRelationReport r;
  const LaurentQ q = LaurentQ::var('q');
  auto compare = [&](const BraidWord& a, const BraidWord& b) {
    r.vertex = std::max(r.vertex, max_abs_diff(braid_rep_vertex(a, q), braid_rep_vertex(b, q)));
    r.tl = std::max(r.tl, max_abs_diff(braid_rep_tl(a), braid_rep_tl(b)));
    ++r.instances;
  };
  const auto empty = BraidWord(n, {});
  for (int i = 1; i < static_cast<int>(n); ++i) {
    compare(BraidWord(n, {i, -i}), empty);
    compare(BraidWord(n, {-i, i}), empty);
    for (int j = 1; j < static_cast<int>(n); ++j) {
      if (j == i + 1) compare(BraidWord(n, {i, j, i}), BraidWord(n, {j, i, j}));
      if (std::abs(i - j) >= 2) compare(BraidWord(n, {i, j}), BraidWord(n, {j, i}));
    }
  }
  return r;
}

struct MarkovTrial {
  BraidWord word;
  BraidWord moved;
  std::string move;  ///< "conjugate" or "stabilize+" / "stabilize-"
  bool match = false;
};

struct MarkovReport {
  std::uint64_t seed = 0;
  std::vector<MarkovTrial> trials;
  std::size_t failures = 0;
  bool pass() const { return failures == 0; }
};

namespace detail {

/// Uniform-enough draw in [0, bound) that is identical on every platform.
inline std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

inline BraidWord random_word(std::mt19937_64& rng, std::size_t max_strands, std::size_t max_length) {
  const std::size_t n = 1 + draw(rng, max_strands);
  const std::size_t len = n == 1 ? 0 : draw(rng, max_length + 1);
  std::vector<int> letters;
  for (std::size_t k = 0; k < len; ++k) {
    int idx = 1 + static_cast<int>(draw(rng, n - 1));
    letters.push_back(draw(rng, 2) ? idx : -idx);
  }
  return {n, std::move(letters)};
}

}  // namespace detail

/// Random words (length <= 8, strands <= 4) under random conjugation or
/// stabilization; the invariant must be unchanged exactly.
inline MarkovReport markov_move_suite(std::size_t trials, std::uint64_t seed) {
  MarkovReport report;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    BraidWord w = detail::random_word(rng, 4, 8);
    MarkovTrial trial{w, w, "", false};
    if (w.strands() == 1 || detail::draw(rng, 2) == 0) {
      const bool positive = detail::draw(rng, 2) == 0;
      trial.moved = w.stabilized(positive);
      trial.move = positive ? "stabilize+" : "stabilize-";
    } else {
      std::vector<int> letters;
      const std::size_t len = 1 + detail::draw(rng, 3);
      for (std::size_t k = 0; k < len; ++k) {
        int idx = 1 + static_cast<int>(detail::draw(rng, w.strands() - 1));
        letters.push_back(detail::draw(rng, 2) ? idx : -idx);
      }
      BraidWord v(w.strands(), std::move(letters));
      trial.moved = v * w * v.inverse();
      trial.move = "conjugate";
    }
    trial.match = link_invariant(w).invariant == link_invariant(trial.moved).invariant;
    if (!trial.match) ++report.failures;
    report.trials.push_back(std::move(trial));
  }
  return report;
}

}  // namespace latticelab

#endif  // LATTICELAB_BRAIDS_LINKS_HPP
