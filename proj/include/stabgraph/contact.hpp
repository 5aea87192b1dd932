#pragma once

// Contact order of p at the sign points (+-1, +-1) of the torus, computed
// exactly as the vanishing order of Im(r1(x) conj(r2(x))) at x = 0.

#include <string>
#include <string_view>
#include <utility>

#include "stabgraph/construct.hpp"

namespace stabgraph {

struct Target {
  int tau1 = -1;
  int tau2 = 1;

  friend bool operator==(const Target&, const Target&) = default;
};

inline Target make_target(int tau1, int tau2) {
  if ((tau1 != 1 && tau1 != -1) || (tau2 != 1 && tau2 != -1))
    throw Error(Errc::UnsupportedTarget, "targets must have coordinates +1 or -1");
  return {tau1, tau2};
}

/// Reads `-1,1`, `(-1, -1)`, `1,1` ...
inline Target parse_target(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '(' && c != ')') s += c;
  const auto comma = s.find(',');
  auto read = [&](const std::string& part) {
    if (part == "1" || part == "+1") return 1;
    if (part == "-1") return -1;
    throw Error(Errc::UnsupportedTarget, "unsupported target '" + std::string(text) + "'");
  };
  if (comma == std::string::npos) throw Error(Errc::UnsupportedTarget, "target must be '<a>,<b>'");
  return {read(s.substr(0, comma)), read(s.substr(comma + 1))};
}

inline std::string to_string(const Target& t) { return std::to_string(t.tau1) + "," + std::to_string(t.tau2); }

/// Moves the target to the origin of the upper half-plane picture:
/// z1 -> -1/z1 when tau1 = -1 and z2 -> -1/z2 when tau2 = -1, then reduces.
inline RationalFunction2 transform_for_target(const RationalFunction2& f, Target target) {
  make_target(target.tau1, target.tau2);
  BiLinPoly num = f.num;
  BiLinPoly den = f.den;
  if (target.tau1 == -1) {
    std::size_t m = 0;
    for (const UniPoly* c : {&num.a(), &num.b(), &den.a(), &den.b()})
      if (c->degree()) m = std::max(m, *c->degree());
    auto sub = [m](const UniPoly& c) { return c.is_zero() ? c : shift(flip(c, -1), m - *c.degree()); };
    num = BiLinPoly(sub(num.a()), sub(num.b()));
    den = BiLinPoly(sub(den.a()), sub(den.b()));
  }
  if (target.tau2 == -1) {
    num = BiLinPoly(-num.b(), num.a());
    den = BiLinPoly(-den.b(), den.a());
  }
  return rf_reduce({std::move(num), std::move(den), false});
}

/// (r1 conj(r2) - conj(r1) r2) / (2i): Im(r1(x) conj(r2(x))) for real x.
inline UniPoly imag_pairing(const UniPoly& r1, const UniPoly& r2) {
  r1.check_var(r2);
  const UniPoly diff = r1 * conj_coeffs(r2) - conj_coeffs(r1) * r2;
  UniPoly s = diff * GaussianRational(Rational(0), Rational(-1, 2));
  if (!s.is_real()) throw Error(Errc::Internal, "pairing polynomial has a nonzero imaginary part");
  return s;
}

struct ContactReport {
  std::size_t K = 0;
  UniPoly s{Var::x};
  Target target;
  UniPoly r1{Var::x};
  UniPoly r2{Var::x};
  bool even = true;
};

/// Contact order from f and the target, assuming p vanishes there.
inline ContactReport contact_order_from_f(const RationalFunction2& f, Target target, bool strict_even = true) {
  const RationalFunction2 g = transform_for_target(f, target);
  const GaussianRational i = GaussianRational::i();
  ContactReport rep;
  rep.target = target;
  rep.r1 = (g.den.a() - g.num.a() * i).retagged(Var::x);
  rep.r2 = (g.den.b() - g.num.b() * i).retagged(Var::x);
  if (rep.r2.coefficient(0).is_zero()) throw Error(Errc::DegenerateR2, "r2(0) = 0 after reduction");
  rep.s = imag_pairing(rep.r1, rep.r2);
  const auto low = rep.s.lowest_power();
  if (!low) throw Error(Errc::ZeroPairing, "Im(r1 conj(r2)) vanishes identically");
  rep.K = *low;
  rep.even = rep.K % 2 == 0;
  if (strict_even && !rep.even)
    throw Error(Errc::OddContactOrder, "odd contact order " + std::to_string(rep.K));
  return rep;
}

/// Exact contact order of p_A^t at a sign point where it vanishes.
inline ContactReport contact_order(const ColoredGraph& g, Target target, bool strict_even = true) {
  make_target(target.tau1, target.tau2);
  const StablePair s = construct(g);
  if (!evaluate(s.p, target.tau1, target.tau2).is_zero())
    throw Error(Errc::NoBoundaryZero, "p does not vanish at (" + to_string(target) + ")");
  return contact_order_from_f(rf_reduce(f_of_graph(g)), target, strict_even);
}

// ---------------------------------------------------------------------------
// Path graphs

/// det(A_n - z1 I) for the n-vertex path, by G(n) = -z1 G(n-1) - G(n-2).
inline UniPoly path_G(std::size_t n) {
  if (n == 0) throw Error(Errc::PreconditionViolated, "path_G needs n >= 1");
  const UniPoly z1 = UniPoly::variable();
  UniPoly prev = UniPoly::constant(1);  // G(0)
  UniPoly cur = -z1;                    // G(1)
  for (std::size_t k = 2; k <= n; ++k) {
    UniPoly next = -(z1 * cur) - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// C(a, b), zero when a < b or either argument is negative.
inline Integer binomial(long a, long b) {
  if (a < 0 || b < 0 || a < b) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

/// The binomial-sum form of G(n).
inline UniPoly path_G_closed(std::size_t n) {
  if (n == 0) throw Error(Errc::PreconditionViolated, "path_G needs n >= 1");
  const long nn = static_cast<long>(n);
  std::vector<GaussianRational> c(n + 1);
  if (n % 2 == 1) {
    for (long m = 0; m <= (nn - 1) / 2; ++m) {
      Integer v = binomial((nn + 1) / 2 + m, (nn - 1) / 2 - m);
      if (((nn + 1) / 2 - m) % 2 != 0) v = -v;
      c[static_cast<std::size_t>(2 * m + 1)] = Rational(v);
    }
  } else {
    for (long m = 0; m <= nn / 2; ++m) {
      Integer v = binomial(nn / 2 + m, nn / 2 - m);
      if ((nn / 2 - m) % 2 != 0) v = -v;
      c[static_cast<std::size_t>(2 * m)] = Rational(v);
    }
  }
  return UniPoly(Var::z1, std::move(c));
}

/// z1^n G(n, 1/z1).
inline UniPoly path_h(std::size_t n) { return flip(path_G(n), 1); }

/// The re-indexed closed form of h(n): only even powers of z1 occur.
inline UniPoly path_h_closed(std::size_t n) {
  if (n == 0) throw Error(Errc::PreconditionViolated, "path_h needs n >= 1");
  const long nn = static_cast<long>(n);
  std::vector<GaussianRational> c(n + 1);
  for (long m = 0; 2 * m <= nn; ++m) {
    Integer v = binomial(nn - m, m);
    const long sign_exp = n % 2 == 1 ? m + 1 : m;
    if (sign_exp % 2 != 0) v = -v;
    c[static_cast<std::size_t>(2 * m)] = Rational(v);
  }
  return UniPoly(Var::z1, std::move(c));
}

inline ColoredGraph path_graph(std::size_t n, const Rational& t = Rational(0)) {
  ColoredGraph g(n, t);
  for (std::size_t k = 1; k < n; ++k) g.add_edge(k, k + 1);
  return g;
}

/// sum_m C(a1-m, m) C(a2-(k-m), k-m) - sum_m C(a1-1-m, m) C(a2+1-(k-m), k-m).
inline Integer sub_binomial(long a1, long a2, long k) {
  if (a1 < 0 || a2 < 0 || k < 0) throw Error(Errc::PreconditionViolated, "sub_binomial needs non-negative arguments");
  Integer total = 0;
  for (long m = 0; m <= k; ++m) {
    total += binomial(a1 - m, m) * binomial(a2 - (k - m), k - m);
    total -= binomial(a1 - 1 - m, m) * binomial(a2 + 1 - (k - m), k - m);
  }
  return total;
}

}  // namespace stabgraph
