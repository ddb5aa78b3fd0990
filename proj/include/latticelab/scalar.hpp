#ifndef LATTICELAB_SCALAR_HPP
#define LATTICELAB_SCALAR_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "latticelab/errors.hpp"

namespace latticelab {

using Complex = std::complex<double>;

/// Exact rational number over 64-bit integers. Every operation is checked:
/// an intermediate that does not fit throws DomainError instead of
/// wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "p", "p/q" and "-p/q".
  static Rational parse(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(text));
      return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw ParseError("not a rational number: '" + text + "'");
    }
  }

  Rational operator-() const {
    if (num_ == INT64_MIN) throw DomainError("rational arithmetic overflow");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return from_wide(static_cast<__int128>(a.num_) + b.num_, 1);
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return from_wide(static_cast<__int128>(a.num_) * b.num_, 1);
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

 private:
  static __int128 gcd_wide(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (d != 1) {
      __int128 g = gcd_wide(n, d);
      if (g > 1) {
        n /= g;
        d /= g;
      }
    }
    if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX)
      throw DomainError("rational arithmetic overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    if (r.num_ == 0) r.den_ = 1;
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    *this = from_wide(n, d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// a + b i with rational parts. Used as a coefficient ring where exact
/// imaginary units are needed (Pauli matrices).
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(r) {}  // NOLINT(implicit)
  GaussianRational(std::int64_t r) : re(r) {}  // NOLINT(implicit)
  GaussianRational(Rational r, Rational i) : re(r), im(i) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  GaussianRational conj() const { return {re, -im}; }
  Complex to_complex() const { return {re.to_double(), im.to_double()}; }

  std::string to_string() const {
    if (im.is_zero()) return re.to_string();
    if (re.is_zero()) return im.to_string() + "i";
    return "(" + re.to_string() + (im < Rational(0) ? "" : "+") + im.to_string() + "i)";
  }

  GaussianRational operator-() const { return {-re, -im}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n.is_zero()) throw DomainError("gaussian rational division by zero");
    GaussianRational t = a * b.conj();
    return {t.re / n, t.im / n};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;
};

/// Element a + b*sqrt(r) of the quadratic field Q(sqrt r). Elements with
/// b == 0 are plain rationals and mix with any radicand.
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(Rational a) : a_(a) {}  // NOLINT(implicit)
  QuadSurd(std::int64_t a) : a_(a) {}  // NOLINT(implicit)
  QuadSurd(Rational a, Rational b, std::int64_t radicand) : a_(a), b_(b), r_(radicand) {
    normalize();
  }

  /// sqrt(n) for a non-negative integer n; a perfect square collapses to a rational.
  static QuadSurd sqrt(std::int64_t n) {
    if (n < 0) throw DomainError("sqrt of negative integer");
    auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    for (auto c : {s - 1, s, s + 1})
      if (c >= 0 && c * c == n) return QuadSurd(Rational(c));
    return QuadSurd(Rational(0), Rational(1), n);
  }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  std::int64_t radicand() const { return r_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  double to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(r_)); }

  std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    std::string s = b_.to_string() + "*sqrt(" + std::to_string(r_) + ")";
    return a_.is_zero() ? s : a_.to_string() + "+" + s;
  }

  QuadSurd operator-() const { return QuadSurd(-a_, -b_, r_); }
  friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
    return QuadSurd(x.a_ + y.a_, x.b_ + y.b_, common(x, y));
  }
  friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) { return x + (-y); }
  friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
    std::int64_t r = common(x, y);
    return QuadSurd(x.a_ * y.a_ + x.b_ * y.b_ * Rational(r), x.a_ * y.b_ + x.b_ * y.a_, r);
  }
  friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) {
    std::int64_t r = common(x, y);
    Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(r);
    if (norm.is_zero()) throw DomainError("quadratic surd division by zero");
    QuadSurd t = x * QuadSurd(y.a_, -y.b_, r);
    return QuadSurd(t.a_ / norm, t.b_ / norm, r);
  }
  QuadSurd& operator+=(const QuadSurd& o) { return *this = *this + o; }
  QuadSurd& operator-=(const QuadSurd& o) { return *this = *this - o; }
  QuadSurd& operator*=(const QuadSurd& o) { return *this = *this * o; }
  QuadSurd& operator/=(const QuadSurd& o) { return *this = *this / o; }
  friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.r_ == y.r_);
  }

 private:
  static std::int64_t common(const QuadSurd& x, const QuadSurd& y) {
    if (x.b_.is_zero()) return y.r_;
    if (y.b_.is_zero()) return x.r_;
    if (x.r_ != y.r_) throw DomainError("mixing different quadratic radicands");
    return x.r_;
  }
  void normalize() {
    if (b_.is_zero()) r_ = 0;
  }

  Rational a_;
  Rational b_;
  std::int64_t r_ = 0;
};

/// Uniform access to the handful of scalar operations the algorithms need.
/// `exact` scalars compare with ==; floating ones through a tolerance.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* field_name = "complex";
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_int(std::int64_t n) { return {static_cast<double>(n), 0.0}; }
  static bool is_zero(const Complex& x) { return x == Complex{}; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static Complex inverse(const Complex& x) {
    if (x == Complex{}) throw DomainError("inverse of zero");
    return 1.0 / x;
  }
  static Complex to_complex(const Complex& x) { return x; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* field_name = "real";
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(std::int64_t n) { return static_cast<double>(n); }
  static bool is_zero(double x) { return x == 0.0; }
  static double magnitude(double x) { return std::abs(x); }
  static double conj(double x) { return x; }
  static double inverse(double x) {
    if (x == 0.0) throw DomainError("inverse of zero");
    return 1.0 / x;
  }
  static Complex to_complex(double x) { return {x, 0.0}; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* field_name = "rational";
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(std::int64_t n) { return Rational(n); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static double magnitude(const Rational& x) { return std::abs(x.to_double()); }
  static Rational conj(const Rational& x) { return x; }
  static Rational inverse(const Rational& x) { return Rational(1) / x; }
  static Complex to_complex(const Rational& x) { return {x.to_double(), 0.0}; }
};

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr const char* field_name = "gaussian-rational";
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational from_int(std::int64_t n) { return GaussianRational(n); }
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static double magnitude(const GaussianRational& x) { return std::abs(x.to_complex()); }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
  static GaussianRational inverse(const GaussianRational& x) { return GaussianRational(1) / x; }
  static Complex to_complex(const GaussianRational& x) { return x.to_complex(); }
};

template <>
struct ScalarTraits<QuadSurd> {
  static constexpr bool exact = true;
  static constexpr const char* field_name = "quadratic";
  static QuadSurd zero() { return {}; }
  static QuadSurd one() { return QuadSurd(1); }
  static QuadSurd from_int(std::int64_t n) { return QuadSurd(n); }
  static bool is_zero(const QuadSurd& x) { return x.is_zero(); }
  static double magnitude(const QuadSurd& x) { return std::abs(x.to_double()); }
  static QuadSurd conj(const QuadSurd& x) { return x; }
  static QuadSurd inverse(const QuadSurd& x) { return QuadSurd(1) / x; }
  static Complex to_complex(const QuadSurd& x) { return {x.to_double(), 0.0}; }
};

template <class S>
S inverse(const S& x) {
  return ScalarTraits<S>::inverse(x);
}

template <class S>
S power(const S& base, int exponent) {
  S b = exponent < 0 ? ScalarTraits<S>::inverse(base) : base;
  S result = ScalarTraits<S>::one();
  for (int e = std::abs(exponent); e > 0; --e) result = result * b;
  return result;
}

}  // namespace latticelab

#endif  // LATTICELAB_SCALAR_HPP
