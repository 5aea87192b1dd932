#pragma once

// Exact arithmetic over the Gaussian rationals Q(i) and dense univariate
// polynomials over them.

#include <gmpxx.h>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabgraph/error.hpp"

namespace stabgraph {

using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in lowest terms.
inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q" (decimal integers). Throws ParseError.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { return Error(Errc::ParseError, "malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  auto check_int = [&](std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i >= s.size()) throw bad();
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw bad();
  };
  std::string num(text.substr(0, slash));
  check_int(num, true);
  if (num[0] == '+') num.erase(0, 1);
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(Integer(num));
  } else {
    std::string den(text.substr(slash + 1));
    check_int(den, false);
    Integer d(den);
    if (d == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
    r = Rational(Integer(num), d);
    r.canonicalize();
  }
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// An element of Q(i), both parts kept in lowest terms.
class GaussianRational {
 public:
  GaussianRational() = default;
  template <std::integral I>
  GaussianRational(I value) : re_(static_cast<long>(value)) {}  // NOLINT(implicit)
  GaussianRational(Rational re) : re_(std::move(re)) {}         // NOLINT(implicit)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  /// Squared modulus re^2 + im^2.
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

  GaussianRational conj() const { return {re_, Rational(-im_)}; }

  GaussianRational inv() const {
    const Rational n = norm();
    if (sgn(n) == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
    return {Rational(re_ / n), Rational(-im_ / n)};
  }

  GaussianRational operator-() const { return {Rational(-re_), Rational(-im_)}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (o.is_real()) {
      re_ *= o.re_;
      im_ *= o.re_;
    } else {
      Rational r = re_ * o.re_ - im_ * o.im_;
      im_ = re_ * o.im_ + im_ * o.re_;
      re_ = std::move(r);
    }
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw Error(Errc::DivisionByZero, "division by zero in Q(i)");
    if (o.is_real()) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    return *this *= o.inv();
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// `a/b`, with `+c/d*i` appended for a nonzero imaginary part; `i` and `-i`
  /// for unit imaginary parts.
  std::string str() const {
    auto imag = [](const Rational& v) {
      if (v == 1) return std::string("i");
      if (v == -1) return std::string("-i");
      return v.get_str() + "*i";
    };
    if (is_real()) return re_.get_str();
    if (sgn(re_) == 0) return imag(im_);
    std::string out = re_.get_str();
    const std::string im = imag(im_);
    if (im[0] != '-') out += '+';
    return out + im;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }
inline GaussianRational inv(const GaussianRational& z) { return z.inv(); }

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

enum class Var : std::uint8_t { z1, z2, w, x };

constexpr std::string_view var_name(Var v) {
  switch (v) {
    case Var::z1: return "z1";
    case Var::z2: return "z2";
    case Var::w: return "w";
    case Var::x: return "x";
  }
  return "?";
}

/// Dense univariate polynomial over Q(i). Index = power; no trailing zeros, so
/// the zero polynomial has no coefficients and its degree is `std::nullopt`.
class UniPoly {
 public:
  explicit UniPoly(Var var = Var::z1) : var_(var) {}
  UniPoly(Var var, std::vector<GaussianRational> coeffs) : var_(var), c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(GaussianRational c, Var var = Var::z1) { return UniPoly(var, {std::move(c)}); }
  static UniPoly monomial(GaussianRational c, std::size_t power, Var var = Var::z1) {
    if (c.is_zero()) return UniPoly(var);
    std::vector<GaussianRational> v(power + 1);
    v[power] = std::move(c);
    return UniPoly(var, std::move(v));
  }
  static UniPoly variable(Var var = Var::z1) { return monomial(1, 1, var); }

  Var var() const { return var_; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }

  /// Index of the lowest nonzero coefficient (order of vanishing at 0).
  std::optional<std::size_t> lowest_power() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (!c_[k].is_zero()) return k;
    return std::nullopt;
  }

  const std::vector<GaussianRational>& coefficients() const { return c_; }
  std::size_t length() const { return c_.size(); }

  GaussianRational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : GaussianRational(); }
  const GaussianRational& leading() const {
    if (c_.empty()) throw Error(Errc::ZeroPolynomial, "leading coefficient of zero polynomial");
    return c_.back();
  }

  bool is_real() const {
    return std::all_of(c_.begin(), c_.end(), [](const GaussianRational& z) { return z.is_real(); });
  }

  UniPoly retagged(Var v) const {
    UniPoly p = *this;
    p.var_ = v;
    return p;
  }

  UniPoly operator-() const {
    UniPoly p = *this;
    for (auto& z : p.c_) z = -z;
    return p;
  }

  UniPoly& operator+=(const UniPoly& o) {
    check_var(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    check_var(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  UniPoly& operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& z : c_) z *= s;
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const GaussianRational& s) { return a *= s; }
  friend UniPoly operator*(const GaussianRational& s, UniPoly a) { return a *= s; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    a.check_var(b);
    if (a.is_zero() || b.is_zero()) return UniPoly(a.var_);
    std::vector<GaussianRational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        out[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return UniPoly(a.var_, std::move(out));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.var_ == b.var_ && a.c_ == b.c_; }

  void check_var(const UniPoly& o) const {
    if (var_ != o.var_)
      throw Error(Errc::VariableMismatch, "polynomials in " + std::string(var_name(var_)) + " and " +
                                              std::string(var_name(o.var_)));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Var var_;
  std::vector<GaussianRational> c_;
};

/// Quotient and remainder of Euclidean division over the field Q(i).
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& p, const UniPoly& q) {
  p.check_var(q);
  if (q.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  const std::size_t dq = *q.degree();
  if (p.is_zero() || *p.degree() < dq) return {UniPoly(p.var()), p};
  std::vector<GaussianRational> rem = p.coefficients();
  std::vector<GaussianRational> quo(rem.size() - dq);
  const GaussianRational lead_inv = q.leading().inv();
  const auto& qc = q.coefficients();
  for (std::size_t k = rem.size(); k-- > dq;) {
    if (rem[k].is_zero()) continue;
    GaussianRational factor = rem[k] * lead_inv;
    for (std::size_t j = 0; j <= dq; ++j) {
      if (!qc[j].is_zero()) rem[k - dq + j] -= factor * qc[j];
    }
    quo[k - dq] = std::move(factor);
  }
  rem.resize(dq);
  return {UniPoly(p.var(), std::move(quo)), UniPoly(p.var(), std::move(rem))};
}

inline UniPoly exact_div(const UniPoly& p, const UniPoly& q) {
  auto [quo, rem] = divmod(p, q);
  if (!rem.is_zero()) throw Error(Errc::NotDivisible, "polynomial division leaves a nonzero remainder");
  return quo;
}

inline bool divides(const UniPoly& q, const UniPoly& p) { return divmod(p, q).second.is_zero(); }

/// Horner evaluation at an exact point.
inline GaussianRational evaluate(const UniPoly& p, const GaussianRational& at) {
  GaussianRational acc;
  const auto& c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc *= at;
    acc += c[k];
  }
  return acc;
}

/// Horner evaluation in some other scalar type `T` (std::complex<double>,
/// multiprecision complex, ...). `convert` maps a coefficient into `T`.
template <class T, class Convert>
T evaluate_as(const UniPoly& p, const T& at, Convert&& convert) {
  T acc(0);
  const auto& c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * at + convert(c[k]);
  return acc;
}

inline UniPoly derivative(const UniPoly& p) {
  if (p.length() <= 1) return UniPoly(p.var());
  std::vector<GaussianRational> out;
  out.reserve(p.length() - 1);
  for (std::size_t k = 1; k < p.length(); ++k) out.push_back(p.coefficients()[k] * GaussianRational(static_cast<long>(k)));
  return UniPoly(p.var(), std::move(out));
}

/// Coefficient-wise complex conjugation (the polynomial written p-bar).
inline UniPoly conj_coeffs(const UniPoly& p) {
  std::vector<GaussianRational> out;
  out.reserve(p.length());
  for (const auto& z : p.coefficients()) out.push_back(z.conj());
  return UniPoly(p.var(), std::move(out));
}

/// Multiplies by var^k.
inline UniPoly shift(const UniPoly& p, std::size_t k) {
  if (p.is_zero() || k == 0) return p;
  std::vector<GaussianRational> out(k);
  out.insert(out.end(), p.coefficients().begin(), p.coefficients().end());
  return UniPoly(p.var(), std::move(out));
}

/// Exact division by var^k; throws NotDivisible if a low coefficient is nonzero.
inline UniPoly unshift(const UniPoly& p, std::size_t k) {
  if (p.is_zero() || k == 0) return p;
  for (std::size_t j = 0; j < k && j < p.length(); ++j)
    if (!p.coefficients()[j].is_zero()) throw Error(Errc::NotDivisible, "not divisible by the variable power");
  if (k >= p.length()) return UniPoly(p.var());
  return UniPoly(p.var(), std::vector<GaussianRational>(p.coefficients().begin() + static_cast<std::ptrdiff_t>(k),
                                                       p.coefficients().end()));
}

/// var^deg(p) * p(sign/var): the coefficient reversal, with odd-index terms
/// negated when sign = -1. Resulting degree is at most deg(p).
inline UniPoly flip(const UniPoly& p, int sign) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "flip of the zero polynomial");
  if (sign != 1 && sign != -1) throw Error(Errc::PreconditionViolated, "flip sign must be +1 or -1");
  const std::size_t d = *p.degree();
  std::vector<GaussianRational> out(d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    const GaussianRational& c = p.coefficients()[k];
    out[d - k] = (sign < 0 && (k % 2 == 1)) ? -c : c;
  }
  return UniPoly(p.var(), std::move(out));
}

/// var^m * p(1/var) for m >= deg(p); zero maps to zero.
inline UniPoly reverse_to(const UniPoly& p, std::size_t m) {
  if (p.is_zero()) return p;
  if (*p.degree() > m) throw Error(Errc::DegreeTooSmall, "reversal degree below polynomial degree");
  return shift(flip(p, 1), m - *p.degree());
}

inline UniPoly power(const UniPoly& p, std::size_t k) {
  UniPoly result = UniPoly::constant(1, p.var());
  for (std::size_t j = 0; j < k; ++j) result *= p;
  return result;
}

inline UniPoly monic(const UniPoly& p) {
  if (p.is_zero()) return p;
  return p * p.leading().inv();
}

/// Monic gcd by the Euclidean algorithm over Q(i); gcd(0, 0) = 0.
inline UniPoly gcd(UniPoly a, UniPoly b) {
  a.check_var(b);
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(std::move(r));
  }
  return monic(a);
}

/// Squarefree part p / gcd(p, p'), made monic.
inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_constant()) return monic(p);
  return monic(exact_div(p, gcd(p, derivative(p))));
}

/// Terms in ascending power, e.g. `2*z1 - z1^3`.
inline std::string to_string(const UniPoly& p);

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << to_string(p); }

namespace detail {

/// Formats `coeff * monomial` with sign handling shared by all polynomial
/// printers. `monomial` may be empty for the constant term.
inline std::string format_term(const GaussianRational& c, const std::string& monomial) {
  if (monomial.empty()) {
    if (c.is_real() || sgn(c.re()) == 0) return c.str();
    return "(" + c.str() + ")";
  }
  if (c.is_one()) return monomial;
  if (c == GaussianRational(-1)) return "-" + monomial;
  if (c.is_real() || sgn(c.re()) == 0) return c.str() + "*" + monomial;
  return "(" + c.str() + ")*" + monomial;
}

inline void append_term(std::string& out, const std::string& term) {
  if (out.empty()) {
    out = term;
  } else if (term[0] == '-') {
    out += " - " + term.substr(1);
  } else {
    out += " + " + term;
  }
}

inline std::string power_name(std::string_view var, std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return std::string(var);
  return std::string(var) + "^" + std::to_string(k);
}

}  // namespace detail

inline std::string to_string(const UniPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < p.length(); ++k) {
    const auto& c = p.coefficients()[k];
    if (c.is_zero()) continue;
    detail::append_term(out, detail::format_term(c, detail::power_name(var_name(p.var()), k)));
  }
  return out;
}

}  // namespace stabgraph
