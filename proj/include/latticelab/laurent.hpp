#ifndef LATTICELAB_LAURENT_HPP
#define LATTICELAB_LAURENT_HPP

#include <algorithm>
#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "latticelab/errors.hpp"
#include "latticelab/scalar.hpp"

namespace latticelab {

/// Monomial in named variables: sorted (variable, exponent) pairs with no
/// zero exponents. Variables are single characters (q, x, y, A, d, ...).
class Monomial {
 public:
  Monomial() = default;
  static Monomial var(char name, int exponent = 1) {
    Monomial m;
    if (exponent != 0) m.powers_.emplace_back(name, exponent);
    return m;
  }

  const std::vector<std::pair<char, int>>& powers() const { return powers_; }
  bool is_one() const { return powers_.empty(); }
  int exponent(char name) const {
    for (const auto& [v, e] : powers_)
      if (v == name) return e;
    return 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.powers_.reserve(a.powers_.size() + b.powers_.size());
    auto i = a.powers_.begin();
    auto j = b.powers_.begin();
    while (i != a.powers_.end() || j != b.powers_.end()) {
      if (j == b.powers_.end() || (i != a.powers_.end() && i->first < j->first)) {
        r.powers_.push_back(*i++);
      } else if (i == a.powers_.end() || j->first < i->first) {
        r.powers_.push_back(*j++);
      } else {
        int e = i->second + j->second;
        if (e != 0) r.powers_.emplace_back(i->first, e);
        ++i;
        ++j;
      }
    }
    return r;
  }

  Monomial inverse() const {
    Monomial r = *this;
    for (auto& p : r.powers_) p.second = -p.second;
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [v, e] : powers_) {
      if (!s.empty()) s += "*";
      s += v;
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::pair<char, int>> powers_;
};

/// Multivariate Laurent polynomial with exact coefficients (Rational by
/// default, GaussianRational when an exact imaginary unit is needed).
/// Terms are kept sorted by monomial with zero coefficients pruned, so
/// equality is structural.
template <class C = Rational>
class Laurent {
 public:
  using Term = std::pair<Monomial, C>;

  Laurent() = default;
  Laurent(C c) {  // NOLINT(implicit)
    if (!ScalarTraits<C>::is_zero(c)) terms_.emplace_back(Monomial{}, c);
  }
  Laurent(std::int64_t c) : Laurent(C(c)) {}  // NOLINT(implicit)

  static Laurent var(char name, int exponent = 1) { return monomial(Monomial::var(name, exponent), C(1)); }
  static Laurent monomial(const Monomial& m, const C& c) {
    Laurent p;
    if (!ScalarTraits<C>::is_zero(c)) p.terms_.emplace_back(m, c);
    return p;
  }
  static Laurent from_terms(std::vector<Term> terms) {
    Laurent p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  C coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.first < key; });
    return (it != terms_.end() && it->first == m) ? it->second : C{};
  }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    Laurent r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        r.terms_.push_back(*j++);
      } else {
        C c = i->second + j->second;
        if (!ScalarTraits<C>::is_zero(c)) r.terms_.emplace_back(i->first, c);
        ++i;
        ++j;
      }
    }
    return r;
  }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.terms_.empty() || b.terms_.empty()) return {};
    if (b.terms_.size() == 1 && b.terms_[0].first.is_one()) return a.scaled(b.terms_[0].second);
    if (a.terms_.size() == 1 && a.terms_[0].first.is_one()) return b.scaled(a.terms_[0].second);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.emplace_back(ma * mb, ca * cb);
    return from_terms(std::move(out));
  }

  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  friend bool operator==(const Laurent& a, const Laurent& b) = default;

  /// Units of the Laurent ring are exactly the nonzero monomials.
  Laurent inverse() const {
    if (terms_.size() != 1)
      throw DomainError("Laurent polynomial " + to_string() + " is not a unit");
    return monomial(terms_[0].first.inverse(), ScalarTraits<C>::inverse(terms_[0].second));
  }

  /// Substitute var := value (value must be a unit when negative powers occur).
  Laurent substitute(char name, const Laurent& value) const {
    Laurent result;
    for (const auto& [m, c] : terms_) {
      Laurent rest = monomial(Monomial{}, c);
      int e = 0;
      for (const auto& [v, p] : m.powers())
        if (v == name)
          e = p;
        else
          rest = rest * var(v, p);
      if (e != 0) {
        Laurent base = e > 0 ? value : value.inverse();
        for (int k = 0; k < std::abs(e); ++k) rest = rest * base;
      }
      result += rest;
    }
    return result;
  }

  Complex evaluate(const std::map<char, Complex>& values) const {
    Complex sum{};
    for (const auto& [m, c] : terms_) {
      Complex t = ScalarTraits<C>::to_complex(c);
      for (const auto& [v, e] : m.powers()) {
        auto it = values.find(v);
        if (it == values.end()) throw DomainError(std::string("no value for variable ") + v);
        t *= std::pow(it->second, e);
      }
      sum += t;
    }
    return sum;
  }

  /// Largest absolute coefficient; zero iff the polynomial is zero.
  double max_coefficient() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, ScalarTraits<C>::magnitude(t.second));
    return m;
  }

  /// Coefficient conjugation with every variable treated as unimodular
  /// (v -> v^-1), the involution used for diagram adjoints.
  Laurent bar() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.emplace_back(m.inverse(), ScalarTraits<C>::conj(c));
    return from_terms(std::move(out));
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string cs = c_string(c);
      bool negative = !cs.empty() && cs[0] == '-';
      if (!first) os << (negative ? " - " : " + ");
      else if (negative) os << "-";
      std::string mag = negative ? cs.substr(1) : cs;
      if (m.is_one()) {
        os << mag;
      } else {
        if (mag != "1") os << mag << "*";
        os << m.to_string();
      }
      first = false;
    }
    return os.str();
  }

 private:
  static std::string c_string(const C& c) { return c.to_string(); }

  Laurent scaled(const C& s) const {
    Laurent r;
    if (ScalarTraits<C>::is_zero(s)) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.second = t.second * s;
    return r;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().first == t.first)
        merged.back().second = merged.back().second + t.second;
      else
        merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return ScalarTraits<C>::is_zero(t.second); }),
                 merged.end());
    terms_ = std::move(merged);
  }

  std::vector<Term> terms_;
};

using LaurentQ = Laurent<Rational>;
using LaurentGaussian = Laurent<GaussianRational>;

template <class C>
struct ScalarTraits<Laurent<C>> {
  static constexpr bool exact = true;
  static constexpr const char* field_name = "laurent";
  static Laurent<C> zero() { return {}; }
  static Laurent<C> one() { return Laurent<C>(C(1)); }
  static Laurent<C> from_int(std::int64_t n) { return Laurent<C>(C(n)); }
  static bool is_zero(const Laurent<C>& x) { return x.is_zero(); }
  static double magnitude(const Laurent<C>& x) { return x.max_coefficient(); }
  static Laurent<C> conj(const Laurent<C>& x) { return x.bar(); }
  static Laurent<C> inverse(const Laurent<C>& x) { return x.inverse(); }
};

}  // namespace latticelab

#endif  // LATTICELAB_LAURENT_HPP
