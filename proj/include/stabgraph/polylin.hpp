#pragma once

// Polynomials of the form a(z1) + z2*b(z1), ratios of them, and exact
// determinants of matrices over Q(i)[z1].

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabgraph/exactalg.hpp"

namespace stabgraph {

/// a(z1) + z2*b(z1). Both parts are tagged with Var::z1.
class BiLinPoly {
 public:
  BiLinPoly() : a_(Var::z1), b_(Var::z1) {}
  BiLinPoly(UniPoly a, UniPoly b = UniPoly(Var::z1)) : a_(std::move(a)), b_(std::move(b)) {  // NOLINT(implicit)
    if (a_.var() != Var::z1 || b_.var() != Var::z1)
      throw Error(Errc::VariableMismatch, "BiLinPoly parts must be polynomials in z1");
  }

  static BiLinPoly constant(GaussianRational c) { return BiLinPoly(UniPoly::constant(std::move(c))); }
  static BiLinPoly z2() { return BiLinPoly(UniPoly(Var::z1), UniPoly::constant(1)); }

  const UniPoly& a() const { return a_; }
  const UniPoly& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool depends_on_z2() const { return !b_.is_zero(); }
  bool is_constant() const { return b_.is_zero() && a_.is_constant(); }
  bool is_real() const { return a_.is_real() && b_.is_real(); }

  /// (max z1-degree, z2-degree); the zero polynomial reports (0, 0).
  std::pair<std::size_t, std::size_t> bidegree() const {
    std::size_t m = 0;
    if (a_.degree()) m = *a_.degree();
    if (b_.degree()) m = std::max(m, *b_.degree());
    return {m, b_.is_zero() ? 0u : 1u};
  }

  /// Coefficient of z1^j z2^k (k in {0, 1}).
  GaussianRational coefficient(std::size_t j, std::size_t k) const {
    return k == 0 ? a_.coefficient(j) : (k == 1 ? b_.coefficient(j) : GaussianRational());
  }

  /// Lowest nonzero coefficient in (z2-power, z1-power) ascending order.
  GaussianRational lowest_coefficient() const {
    if (auto k = a_.lowest_power()) return a_.coefficients()[*k];
    if (auto k = b_.lowest_power()) return b_.coefficients()[*k];
    throw Error(Errc::ZeroPolynomial, "lowest coefficient of zero polynomial");
  }

  BiLinPoly operator-() const { return {-a_, -b_}; }
  BiLinPoly& operator+=(const BiLinPoly& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  BiLinPoly& operator-=(const BiLinPoly& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  BiLinPoly& operator*=(const UniPoly& m) {
    a_ *= m;
    b_ *= m;
    return *this;
  }
  BiLinPoly& operator*=(const GaussianRational& s) {
    a_ *= s;
    b_ *= s;
    return *this;
  }

  friend BiLinPoly operator+(BiLinPoly p, const BiLinPoly& q) { return p += q; }
  friend BiLinPoly operator-(BiLinPoly p, const BiLinPoly& q) { return p -= q; }
  friend BiLinPoly operator*(BiLinPoly p, const UniPoly& m) { return p *= m; }
  friend BiLinPoly operator*(const UniPoly& m, BiLinPoly p) { return p *= m; }
  friend BiLinPoly operator*(BiLinPoly p, const GaussianRational& s) { return p *= s; }
  friend BiLinPoly operator*(const GaussianRational& s, BiLinPoly p) { return p *= s; }

  /// Full product; throws DegreeOverflow when a z2^2 term would appear.
  friend BiLinPoly operator*(const BiLinPoly& p, const BiLinPoly& q) {
    if (p.depends_on_z2() && q.depends_on_z2())
      throw Error(Errc::DegreeOverflow, "product would contain z2^2");
    return {p.a_ * q.a_, p.a_ * q.b_ + p.b_ * q.a_};
  }

  friend bool operator==(const BiLinPoly& p, const BiLinPoly& q) { return p.a_ == q.a_ && p.b_ == q.b_; }

 private:
  UniPoly a_;
  UniPoly b_;
};

inline GaussianRational evaluate(const BiLinPoly& p, const GaussianRational& z1, const GaussianRational& z2) {
  return evaluate(p.a(), z1) + z2 * evaluate(p.b(), z1);
}

inline BiLinPoly conj_coeffs(const BiLinPoly& p) { return {conj_coeffs(p.a()), conj_coeffs(p.b())}; }

/// True iff p = lambda*q for some nonzero lambda in Q(i).
inline bool scalar_equiv(const BiLinPoly& p, const BiLinPoly& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  const GaussianRational lambda = p.lowest_coefficient() / q.lowest_coefficient();
  return p == q * lambda;
}

/// Canonical text: terms ordered by z2-power then z1-power, ascending.
inline std::string to_string(const BiLinPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < 2; ++k) {
    const UniPoly& part = k == 0 ? p.a() : p.b();
    for (std::size_t j = 0; j < part.length(); ++j) {
      const auto& c = part.coefficients()[j];
      if (c.is_zero()) continue;
      std::string mono = detail::power_name("z1", j);
      if (k == 1) mono = mono.empty() ? "z2" : mono + "*z2";
      detail::append_term(out, detail::format_term(c, mono));
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const BiLinPoly& p) { return os << to_string(p); }

namespace detail {

/// Recursive-descent reader for polynomial text in z1, z2 (and i). Accepts
/// everything `to_string` produces plus parentheses and `^` on any factor.
class PolyTextParser {
 public:
  using Dense = std::map<std::pair<std::size_t, std::size_t>, GaussianRational>;

  explicit PolyTextParser(std::string_view text) : s_(text) {}

  Dense parse() {
    Dense d = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::ParseError, what + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(s_) + "'");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Dense mul(const Dense& x, const Dense& y) {
    Dense out;
    for (const auto& [ex, cx] : x)
      for (const auto& [ey, cy] : y) out[{ex.first + ey.first, ex.second + ey.second}] += cx * cy;
    return clean(std::move(out));
  }
  static Dense clean(Dense d) {
    for (auto it = d.begin(); it != d.end();) it = it->second.is_zero() ? d.erase(it) : std::next(it);
    return d;
  }

  Dense expr() {
    Dense acc;
    bool first = true;
    while (true) {
      bool negate = false;
      if (eat('-')) {
        negate = true;
      } else if (!first && !eat('+')) {
        break;
      } else if (first) {
        eat('+');
      }
      Dense t = term();
      for (auto& [e, c] : t) acc[e] += negate ? -c : c;
      first = false;
      skip_ws();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return clean(std::move(acc));
  }

  Dense term() {
    Dense acc = factor();
    while (true) {
      if (eat('*')) {
        acc = mul(acc, factor());
      } else if (eat('/')) {
        Dense den = factor();
        if (den.size() != 1 || den.begin()->first != std::pair<std::size_t, std::size_t>{0, 0})
          fail("division only by a constant");
        const GaussianRational inv = den.begin()->second.inv();
        for (auto& [e, c] : acc) c *= inv;
      } else {
        return acc;
      }
    }
  }

  Dense factor() {
    Dense base = primary();
    if (eat('^')) {
      skip_ws();
      std::size_t k = 0;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) k = k * 10 + (s_[pos_++] - '0');
      if (pos_ == start) fail("expected exponent");
      Dense r{{{0, 0}, GaussianRational(1)}};
      for (std::size_t j = 0; j < k; ++j) r = mul(r, base);
      return r;
    }
    return base;
  }

  Dense primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      Dense d = expr();
      if (!eat(')')) fail("expected ')'");
      return d;
    }
    if (eat('-')) {
      Dense d = factor();
      for (auto& [e, c] : d) c = -c;
      return d;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return {{{0, 0}, GaussianRational(Rational(Integer(std::string(s_.substr(start, pos_ - start)))))}};
    }
    if (c == 'i') {
      ++pos_;
      return {{{0, 0}, GaussianRational::i()}};
    }
    if (s_.substr(pos_, 2) == "z1") {
      pos_ += 2;
      return {{{1, 0}, GaussianRational(1)}};
    }
    if (s_.substr(pos_, 2) == "z2") {
      pos_ += 2;
      return {{{0, 1}, GaussianRational(1)}};
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Reads polynomial text such as `4 - z2 - z1*z2 - 3*z1^2*z2 + z1^3*z2`.
/// Throws ParseError, or DegreeOverflow when the result has a z2^2 term.
inline BiLinPoly parse_bilin(std::string_view text) {
  const auto dense = detail::PolyTextParser(text).parse();
  std::vector<GaussianRational> a;
  std::vector<GaussianRational> b;
  for (const auto& [e, c] : dense) {
    auto& target = e.second == 0 ? a : (e.second == 1 ? b : throw Error(Errc::DegreeOverflow, "z2^2 term in input"));
    if (target.size() <= e.first) target.resize(e.first + 1);
    target[e.first] = c;
  }
  return {UniPoly(Var::z1, std::move(a)), UniPoly(Var::z1, std::move(b))};
}

/// Reads univariate text written in z1 and retags it with `var`.
inline UniPoly parse_unipoly(std::string_view text, Var var = Var::z1) {
  BiLinPoly p = parse_bilin(text);
  if (p.depends_on_z2()) throw Error(Errc::ParseError, "unexpected z2 in univariate polynomial");
  return p.a().retagged(var);
}

// ---------------------------------------------------------------------------
// Matrices over Q(i)[z1]

class PolyMatrix {
 public:
  explicit PolyMatrix(std::size_t n = 0, Var var = Var::z1) : n_(n), var_(var), e_(n * n, UniPoly(var)) {}

  std::size_t size() const { return n_; }
  Var var() const { return var_; }

  const UniPoly& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, UniPoly v) {
    if (v.var() != var_) throw Error(Errc::VariableMismatch, "matrix entry with the wrong variable");
    e_[i * n_ + j] = std::move(v);
  }

  /// The matrix with row `r` and column `c` removed.
  PolyMatrix minor(std::size_t r, std::size_t c) const {
    PolyMatrix m(n_ - 1, var_);
    for (std::size_t i = 0, mi = 0; i < n_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0, mj = 0; j < n_; ++j) {
        if (j == c) continue;
        m.e_[mi * m.n_ + mj] = (*this)(i, j);
        ++mj;
      }
      ++mi;
    }
    return m;
  }

 private:
  std::size_t n_;
  Var var_;
  std::vector<UniPoly> e_;
};

namespace detail {

inline UniPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return UniPoly::constant(1, m.var());
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  UniPoly acc(m.var());
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    UniPoly term = m(0, j) * cofactor_det(m.minor(0, j));
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

/// Fraction-free elimination; every division is exact in Q(i)[var].
inline UniPoly bareiss_det(PolyMatrix m) {
  const std::size_t n = m.size();
  std::vector<std::vector<UniPoly>> a(n, std::vector<UniPoly>(n, UniPoly(m.var())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  bool negate = false;
  UniPoly prev = UniPoly::constant(1, m.var());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return UniPoly(m.var());
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        UniPoly v = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = prev.is_constant() && prev.leading().is_one() ? std::move(v) : exact_div(v, prev);
      }
    }
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

}  // namespace detail

/// Exact determinant: cofactor expansion up to 4x4, Bareiss above.
inline UniPoly polymat_det(const PolyMatrix& m) {
  if (m.size() <= 4) return detail::cofactor_det(m);
  return detail::bareiss_det(m);
}

/// det(M0 + z2*c*E_nn) = det(M0) + z2*c*det(M0 without its last row/column).
inline BiLinPoly det_split(const PolyMatrix& m0, const GaussianRational& c) {
  if (m0.var() != Var::z1) throw Error(Errc::VariableMismatch, "det_split expects a matrix over z1");
  const std::size_t n = m0.size();
  if (n == 0) return BiLinPoly::constant(1);
  UniPoly base = polymat_det(m0);
  if (c.is_zero()) return BiLinPoly(std::move(base));
  UniPoly corner = polymat_det(m0.minor(n - 1, n - 1)) * c;
  return {std::move(base), std::move(corner)};
}

// ---------------------------------------------------------------------------
// Ratios

struct RationalFunction2 {
  BiLinPoly num;
  BiLinPoly den;
  bool reduced = false;
};

inline std::string to_string(const RationalFunction2& f) {
  return "(" + to_string(f.num) + ") / (" + to_string(f.den) + ")";
}

/// num1*den2 == num2*den1, i.e. the same function (z2^2 terms allowed here).
inline bool same_function(const RationalFunction2& f, const RationalFunction2& g) {
  // (a1 + z2 b1)(a2' + z2 b2') expanded by z2-power.
  auto expand = [](const BiLinPoly& p, const BiLinPoly& q) {
    return std::vector<UniPoly>{p.a() * q.a(), p.a() * q.b() + p.b() * q.a(), p.b() * q.b()};
  };
  return expand(f.num, g.den) == expand(g.num, f.den);
}

namespace detail {

inline std::optional<std::size_t> common_z1_power(std::initializer_list<const UniPoly*> parts) {
  std::optional<std::size_t> k;
  for (const UniPoly* p : parts) {
    if (auto low = p->lowest_power()) k = k ? std::min(*k, *low) : *low;
  }
  return k;
}

inline bool proportional_parts(const BiLinPoly& num, const BiLinPoly& den) {
  return (num.a() * den.b() - num.b() * den.a()).is_zero();
}

/// For num, den sharing a z2-linear factor (cross determinant zero, some b
/// nonzero) returns the remaining univariate ratio.
inline std::pair<UniPoly, UniPoly> cancel_z2_factor(const BiLinPoly& num, const BiLinPoly& den) {
  const UniPoly g = gcd(num.a(), num.b());
  const UniPoly h = gcd(den.a(), den.b());
  const UniPoly alpha = exact_div(num.a(), g);
  const UniPoly beta = exact_div(num.b(), g);
  const UniPoly gamma = exact_div(den.a(), h);
  const UniPoly delta = exact_div(den.b(), h);
  // alpha = lambda*gamma and beta = lambda*delta for a scalar lambda.
  const UniPoly& x = alpha.is_zero() ? beta : alpha;
  const UniPoly& y = alpha.is_zero() ? delta : gamma;
  const GaussianRational lambda = x.leading() / y.leading();
  return {g * lambda, h};
}

}  // namespace detail

/// Cancels common z1 powers and any common z2-involving factor. General
/// z1-only common factors m(z1) with m(0) != 0 are kept while z2 is present;
/// a ratio that collapses to univariate is cancelled completely.
inline RationalFunction2 rf_reduce(const RationalFunction2& f) {
  if (f.den.is_zero()) throw Error(Errc::ZeroDenominator, "rational function with zero denominator");
  BiLinPoly num = f.num;
  BiLinPoly den = f.den;
  if (num.is_zero()) return {BiLinPoly(), BiLinPoly::constant(1), true};

  if ((num.depends_on_z2() || den.depends_on_z2()) && detail::proportional_parts(num, den)) {
    auto [n, d] = detail::cancel_z2_factor(num, den);
    num = BiLinPoly(std::move(n));
    den = BiLinPoly(std::move(d));
  }
  if (!num.depends_on_z2() && !den.depends_on_z2()) {
    const UniPoly g = gcd(num.a(), den.a());
    return {BiLinPoly(exact_div(num.a(), g)), BiLinPoly(exact_div(den.a(), g)), true};
  }
  if (auto k = detail::common_z1_power({&num.a(), &num.b(), &den.a(), &den.b()}); k && *k > 0) {
    num = BiLinPoly(unshift(num.a(), *k), unshift(num.b(), *k));
    den = BiLinPoly(unshift(den.a(), *k), unshift(den.b(), *k));
  }
  return {std::move(num), std::move(den), true};
}

/// Cancels every common factor: the gcd of all four z1-parts and any common
/// z2-linear factor.
inline RationalFunction2 rf_reduce_full(const RationalFunction2& f) {
  RationalFunction2 r = rf_reduce(f);
  if (!r.num.depends_on_z2() && !r.den.depends_on_z2()) return r;
  const UniPoly g = gcd(gcd(r.num.a(), r.num.b()), gcd(r.den.a(), r.den.b()));
  if (!g.is_constant()) {
    r.num = BiLinPoly(exact_div(r.num.a(), g), exact_div(r.num.b(), g));
    r.den = BiLinPoly(exact_div(r.den.a(), g), exact_div(r.den.b(), g));
  }
  return r;
}

}  // namespace stabgraph
