#pragma once

// Graph -> matrix pencil -> f = N/D -> phi = q/p with p stable on the bidisk.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabgraph/exactalg.hpp"
#include "stabgraph/graph.hpp"
#include "stabgraph/polylin.hpp"

namespace stabgraph {

/// beta(w) = (1 + w i)/(1 - w i), upper half-plane -> disk.
template <class T>
T cayley_beta(const T& w) {
  const T i(0, 1);
  return (T(1) + w * i) / (T(1) - w * i);
}

/// beta^{-1}(z) = i (1 - z)/(1 + z).
template <class T>
T cayley_beta_inv(const T& z) {
  const T i(0, 1);
  return i * (T(1) - z) / (T(1) + z);
}

/// A - z1*Y - z2*(I - Y) with Y = diag(1, ..., 1, t), split as
/// M0 + z2*c*E_nn.
struct Pencil {
  PolyMatrix m0;
  GaussianRational c;
};

inline Pencil build_pencil(const ColoredGraph& g) {
  const std::size_t n = g.order();
  PolyMatrix m0(n, Var::z1);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (i == j) {
        const GaussianRational w = i == n ? GaussianRational(g.t()) : GaussianRational(1);
        m0.set(i - 1, j - 1, UniPoly::monomial(-w, 1));
      } else if (g.has_edge(i, j)) {
        m0.set(i - 1, j - 1, UniPoly::constant(1));
      }
    }
  }
  return {std::move(m0), GaussianRational(Rational(g.t() - 1))};
}

/// The (1,1) entry of the pencil's inverse, det(minor_11) / det, unreduced.
inline RationalFunction2 f_of_graph(const ColoredGraph& g) {
  const Pencil pencil = build_pencil(g);
  BiLinPoly den = det_split(pencil.m0, pencil.c);
  if (den.is_zero()) throw Error(Errc::DegeneratePencil, "pencil determinant vanishes identically");
  BiLinPoly num = det_split(pencil.m0.minor(0, 0), pencil.c);
  return {std::move(num), std::move(den), false};
}

/// p(z1, z2) with the lowest coefficient of p equal to one, and q = phi * p.
struct StablePair {
  BiLinPoly p;
  BiLinPoly q;
  std::pair<std::size_t, std::size_t> bidegree;
};

/// z1^m z2^n2 * conj(P)(1/z1, 1/z2).
inline BiLinPoly reflect(const BiLinPoly& p, std::pair<std::size_t, std::size_t> bidegree) {
  const auto [m, n2] = bidegree;
  if (n2 > 1) throw Error(Errc::DegreeOverflow, "z2-degree above one");
  if (n2 == 0) {
    if (p.depends_on_z2()) throw Error(Errc::DegreeTooSmall, "z2-degree 0 given for a polynomial in z2");
    return BiLinPoly(reverse_to(conj_coeffs(p.a()), m));
  }
  return {reverse_to(conj_coeffs(p.b()), m), reverse_to(conj_coeffs(p.a()), m)};
}

namespace detail {

/// (1+z)^d * u(i(1-z)/(1+z)) for deg u <= d.
inline UniPoly cayley_substitute(const UniPoly& u, std::size_t d) {
  UniPoly out(Var::z1);
  if (u.is_zero()) return out;
  const UniPoly plus = UniPoly(Var::z1, {1, 1});
  const UniPoly minus = UniPoly(Var::z1, {1, -1});
  GaussianRational ik(1);
  for (std::size_t k = 0; k < u.length(); ++k, ik *= GaussianRational::i()) {
    const auto& c = u.coefficients()[k];
    if (!c.is_zero()) out += power(minus, k) * power(plus, d - k) * (c * ik);
  }
  return out;
}

inline BiLinPoly cayley_substitute(const BiLinPoly& p, std::size_t d1, bool z2) {
  const UniPoly a = cayley_substitute(p.a(), d1);
  if (!z2) return BiLinPoly(a);
  const UniPoly ib = cayley_substitute(p.b(), d1) * GaussianRational::i();
  return {a + ib, a - ib};
}

inline bool divisible_by_one_plus_z1(const UniPoly& u) {
  return u.is_zero() || evaluate(u, GaussianRational(-1)).is_zero();
}

}  // namespace detail

/// Cancels (1+z1), (1+z2), z1 powers, univariate and z2-linear common factors.
inline RationalFunction2 reduce_cayley(RationalFunction2 f) {
  const UniPoly one_plus = UniPoly(Var::z1, {1, 1});
  while (!f.num.is_zero() && detail::divisible_by_one_plus_z1(f.num.a()) && detail::divisible_by_one_plus_z1(f.num.b()) &&
         detail::divisible_by_one_plus_z1(f.den.a()) && detail::divisible_by_one_plus_z1(f.den.b())) {
    f.num = BiLinPoly(exact_div(f.num.a(), one_plus), exact_div(f.num.b(), one_plus));
    f.den = BiLinPoly(exact_div(f.den.a(), one_plus), exact_div(f.den.b(), one_plus));
  }
  if ((f.num.depends_on_z2() || f.den.depends_on_z2()) && f.num.a() == f.num.b() && f.den.a() == f.den.b()) {
    f.num = BiLinPoly(f.num.a());
    f.den = BiLinPoly(f.den.a());
  }
  return rf_reduce_full(f);
}

/// phi = beta o f o beta^{-1} as q/p.
inline StablePair cayley_to_rif(const RationalFunction2& f) {
  if (!f.num.is_real() || !f.den.is_real())
    throw Error(Errc::NotRealCoefficients, "f must have real coefficients");
  const RationalFunction2 r = rf_reduce(f);
  const GaussianRational i = GaussianRational::i();
  const BiLinPoly q0 = r.den + r.num * i;
  const BiLinPoly p0 = r.den - r.num * i;
  const std::size_t d1 = std::max(q0.bidegree().first, p0.bidegree().first);
  const bool z2 = q0.depends_on_z2() || p0.depends_on_z2();
  RationalFunction2 phi{detail::cayley_substitute(q0, d1, z2), detail::cayley_substitute(p0, d1, z2), false};
  phi = reduce_cayley(std::move(phi));
  const GaussianRational scale = phi.den.lowest_coefficient().inv();
  StablePair s{phi.den * scale, phi.num * scale, {}};
  s.bidegree = s.p.bidegree();
  return s;
}

inline StablePair construct(const ColoredGraph& g) { return cayley_to_rif(f_of_graph(g)); }

/// phi(z1, z2) = q/p at an exact point.
inline GaussianRational phi_at(const StablePair& s, const GaussianRational& z1, const GaussianRational& z2) {
  return evaluate(s.q, z1, z2) / evaluate(s.p, z1, z2);
}

/// q = lambda * z1^k * z2^l * reflect(p, bidegree(p)).
struct RifExponents {
  GaussianRational lambda;
  std::size_t k = 0;
  std::size_t l = 0;
};

/// Smallest (k, l) realizing q as a monomial multiple of the reflection of p.
inline std::optional<RifExponents> rif_exponents(const StablePair& s) {
  const BiLinPoly refl = reflect(s.p, s.bidegree);
  const std::size_t kmax = s.q.bidegree().first;
  for (std::size_t l = 0; l <= 1; ++l) {
    if (l == 1 && refl.depends_on_z2()) break;
    for (std::size_t k = 0; k <= kmax; ++k) {
      BiLinPoly cand = l == 0 ? BiLinPoly(shift(refl.a(), k), shift(refl.b(), k)) : BiLinPoly(UniPoly(Var::z1), shift(refl.a(), k));
      if (scalar_equiv(s.q, cand)) return RifExponents{s.q.lowest_coefficient() / cand.lowest_coefficient(), k, l};
    }
  }
  return std::nullopt;
}

}  // namespace stabgraph
